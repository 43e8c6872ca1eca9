"""Command line front end: run scenario files, verify the built-in suite,
explain individual checks.

Exit codes: 0 all checks pass, 1 at least one check failed, 2 at least one
check was indeterminate (a cutoff or scan window ran out), 3 bad input.
"""
import argparse
import sys
import time
from typing import List, Optional

from . import __version__
from .checks import check_ids, describe_check, run_check, verify_builtin_suite
from .report import VerificationReport, emit_report
from .scenario import ScenarioError, load_scenario, run_scenario


def _window(text: str) -> List[int]:
    try:
        lo, hi = text.split(":")
        return [int(lo), int(hi)]
    except ValueError:
        raise argparse.ArgumentTypeError(
            "window must look like <lo>:<hi>, e.g. -4:6"
        )


def _field_tag(text: str) -> str:
    if text == "Q" or (text.startswith("Fp:") and text[3:].isdigit()):
        return text
    raise argparse.ArgumentTypeError("field must be Q or Fp:<p>")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field_tag, default=None,
                        help="coefficient field, Q or Fp:<p>")
    common.add_argument("--cutoff", type=int, default=None,
                        help="resolution cutoff override")
    common.add_argument("--window", type=_window, default=None,
                        help="cohomology window <lo>:<hi>")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for the randomized suites (default 0)")
    common.add_argument("--format", choices=("json", "text"), default="text",
                        help="report format (default text)")

    parser = argparse.ArgumentParser(
        prog="dgdim",
        description="derived homological dimensions of non-positive "
                    "commutative DG-rings, in exact arithmetic",
    )
    parser.add_argument("--version", action="version",
                        version="dgdim " + __version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", parents=[common],
                           help="run the queries of a scenario file")
    p_run.add_argument("scenario", help="path to a dgdim-scenario/1 JSON file")

    p_verify = sub.add_parser("verify", parents=[common],
                              help="run the built-in verification suite")
    p_verify.add_argument("--filter", default="",
                          help="only run checks whose id contains this "
                               "substring (others are reported as skipped)")

    p_explain = sub.add_parser("explain", parents=[common],
                               help="state one check's claim, run it, and "
                                    "print its certificate")
    p_explain.add_argument("check", nargs="?", default=None,
                           help="check id; omit to list all ids")
    return parser


def _overrides(args) -> dict:
    out = {}
    for key in ("field", "cutoff", "window", "seed"):
        value = getattr(args, key)
        if value is not None:
            out[key] = value
    return out


def _emit(report: VerificationReport, fmt: str) -> int:
    sys.stdout.buffer.write(emit_report(report, fmt))
    sys.stdout.buffer.flush()
    return report.exit_code()


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "run":
        t0 = time.time()
        try:
            scn = load_scenario(args.scenario, overrides=_overrides(args))
        except ScenarioError as exc:
            print("error: %s" % exc, file=sys.stderr)
            return 3
        report = run_scenario(scn)
        report.wall_time = time.time() - t0
        return _emit(report, args.format)

    if args.command == "verify":
        opts = {k: v for k, v in _overrides(args).items()
                if k in ("field", "seed")}
        report = verify_builtin_suite(args.filter, options=opts)
        return _emit(report, args.format)

    if args.command == "explain":
        if args.check is None:
            for cid in check_ids():
                print("%s\n    %s" % (cid, describe_check(cid)))
            return 0
        try:
            describe_check(args.check)
        except KeyError:
            print("error: unknown check %r; run `dgdim explain` for the "
                  "list" % args.check, file=sys.stderr)
            return 3
        t0 = time.time()
        opts = {k: v for k, v in _overrides(args).items()
                if k in ("field", "seed")}
        result = run_check(args.check, opts)
        report = VerificationReport(
            "explain " + args.check, options=opts, results=[result],
            wall_time=time.time() - t0,
        )
        return _emit(report, args.format)

    return 3  # pragma: no cover - argparse enforces the choices


if __name__ == "__main__":
    sys.exit(main())
