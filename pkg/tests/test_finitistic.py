"""Finitistic dimensions, FPD intervals, witnesses, Hochschild tables.

The expected numbers come from the depth/amplitude bookkeeping recomputed
by hand for each fixture; golden JSON reports live under fixtures/v1.
"""
import json
import os

import pytest

from dgdim.core import make_graded_ring
from dgdim.dg import (
    build_koszul_dg,
    build_ring_dg,
    build_split_trivial_extension,
    build_trivial_extension,
    koszul_dg_module,
    shift_dg,
)
from dgdim.dimensions import (
    flat_dim,
    is_local_cohen_macaulay,
    ring_amplitude,
    ring_free_module,
)
from dgdim.finitistic import (
    bass_witness_recipe,
    ffd_witness,
    fpd_bounds,
    fpd_example_pair,
    gorenstein_projdim_bound_check,
    hochschild_table,
    hochschild_vanishing_check,
    small_finitistic_dims,
)

FIXDIR = os.path.join(os.path.dirname(__file__), "fixtures", "v1")


def ring_xy():
    return build_ring_dg(make_graded_ring("Q", ["x", "y"]))


def koszul_xy():
    R = make_graded_ring("Q", ["x", "y"])
    x, y = R.variables()
    return build_koszul_dg(R, [x, R.mul(x, y)])


def koszul_xyz():
    R = make_graded_ring("Q", ["x", "y", "z"])
    x, y, z = R.variables()
    return build_koszul_dg(R, [x, R.mul(x, y)])


def golod_xy():
    return build_ring_dg(make_graded_ring("Q", ["x", "y"], ["x^2", "x*y"]))


def split_product(d=1, n=1):
    return build_split_trivial_extension(
        make_graded_ring("Q", ["x", "y", "z"][:d]), make_graded_ring("Q", []), n
    )


# ---------- small finitistic dimensions ----------


@pytest.mark.parametrize(
    "make, expected",
    [(ring_xy, 2), (koszul_xy, 0), (koszul_xyz, 1), (golod_xy, 0)],
)
def test_small_finitistic_fixture_set(make, expected):
    rep = small_finitistic_dims(make())
    assert rep.fpd == expected
    assert rep.ffd == expected
    assert rep.fid == expected
    assert rep.small_witness["attains"]


def test_small_finitistic_golden():
    rep = small_finitistic_dims(ring_xy())
    with open(os.path.join(FIXDIR, "small-finitistic-polynomial-xy.json")) as fh:
        assert json.dumps(rep.to_json(), indent=1, sort_keys=True) + "\n" == fh.read()


# ---------- FPD interval ----------


def test_fpd_interval_gorenstein_collapse():
    rep = fpd_bounds(koszul_xyz())
    assert rep.interval == (1, 2)
    assert rep.gorenstein_case
    assert not rep.witness_case
    assert rep.fpd_value == 1


def test_fpd_interval_witness_collapse():
    rep = fpd_bounds(split_product())
    assert rep.interval == (0, 1)
    assert rep.witness_case
    assert not rep.gorenstein_case
    assert rep.fpd_value == 1
    assert any(w["value"] == 1 for w in rep.witnesses)


def test_fpd_interval_regular_ring_is_a_point():
    rep = fpd_bounds(ring_xy())
    assert rep.interval == (2, 2)
    assert rep.fpd_value == 2


def test_fpd_interval_witness_soundness():
    for rep in (fpd_bounds(koszul_xyz()), fpd_bounds(split_product())):
        hi = rep.interval[1]
        assert all(w["value"] <= hi for w in rep.witnesses)


def test_fpd_interval_golden():
    rep = fpd_bounds(split_product())
    with open(os.path.join(FIXDIR, "fpd-interval-split-trivial-extension.json")) as fh:
        assert json.dumps(rep.to_json(), indent=1, sort_keys=True) + "\n" == fh.read()


@pytest.mark.parametrize("d", [1, 2])
@pytest.mark.parametrize("n", [1, 2])
def test_attaining_instances(d, n):
    # one family attains the lower endpoint, the other the upper one
    gor, triv = fpd_example_pair(d, n)
    assert gor.dimension() == d and ring_amplitude(gor) == n
    assert triv.dimension() == d and ring_amplitude(triv) == n
    assert fpd_bounds(gor).fpd_value == d - n
    rep = fpd_bounds(triv)
    assert rep.fpd_value == d
    assert rep.witness_case


def test_lcm_equivalence_with_fpd_formula():
    fixtures = [ring_xy(), koszul_xy(), koszul_xyz(), golod_xy()]
    B = build_trivial_extension(make_graded_ring("Q", ["x", "y"]), 1, ["x"])
    fixtures.append(B)
    for A in fixtures:
        formula = small_finitistic_dims(A).fpd == A.dimension() - ring_amplitude(A)
        assert is_local_cohen_macaulay(A) == formula


# ---------- sharpened Gorenstein bound ----------


def test_gorenstein_bound_check_passes():
    A = koszul_xy()
    mods = [
        ring_free_module(A),
        koszul_dg_module(A, ["y"]),
        shift_dg(koszul_dg_module(A, ["y"]), 3),
    ]
    rep = gorenstein_projdim_bound_check(A, mods)
    assert rep["checked"] == 3
    assert rep["skipped-infinite-flat"] == 0
    # the middle module attains the bound: projdim 1 = 1 - 1 - (-1)
    assert rep["entries"][1] == {"projdim": 1, "inf": -1, "bound": 1}


def test_gorenstein_bound_check_precondition():
    B = build_trivial_extension(make_graded_ring("Q", ["x", "y"]), 1, ["x"])
    with pytest.raises(ValueError):
        gorenstein_projdim_bound_check(B, [])


# ---------- witness recipes ----------


def test_bass_recipe_degree_zero():
    rec = bass_witness_recipe(koszul_xyz(), 0)
    assert rec.verified
    assert rec.projdim == 0
    assert rec.koszul_description == "A"


def test_bass_recipe_idempotent_factor():
    rec = bass_witness_recipe(split_product(), 1)
    assert rec.verified
    assert rec.projdim == 1
    assert "factor 0" in rec.prime


def test_bass_recipe_unverified_over_connected_ring():
    rec = bass_witness_recipe(koszul_xy(), 1)
    assert not rec.verified
    assert rec.prime == "(0)"
    assert rec.inverted == "y"
    assert rec.sequence == []
    assert "inhomogeneous" in rec.notes


def test_bass_recipe_prime_choice_on_quotient():
    rec = bass_witness_recipe(golod_xy(), 1)
    assert rec.prime == "(x)"
    assert rec.inverted == "y"


def test_bass_recipe_target_out_of_range():
    with pytest.raises(ValueError):
        bass_witness_recipe(koszul_xy(), 5)
    with pytest.raises(ValueError):
        bass_witness_recipe(koszul_xy(), -1)


def test_ffd_witness_base_case():
    W = ffd_witness(koszul_xyz(), 1)
    assert flat_dim(W).value == 0


def test_ffd_witness_from_verified_recipe():
    A = split_product(d=2)
    W = ffd_witness(A, 2)
    assert flat_dim(W).value == 1


def test_ffd_witness_unavailable():
    with pytest.raises(ValueError):
        ffd_witness(koszul_xyz(), 2)


# ---------- Hochschild ----------


def test_hochschild_affine_line():
    k = make_graded_ring("Q", [])
    rep = hochschild_table(k, make_graded_ring("Q", ["x"]))
    assert rep.threshold == 2
    assert rep.terminated
    assert rep.resolution_length == 1
    assert rep.hh_lower[0]["rank"] == 1
    assert rep.hh_lower[1] == {"rank": 1, "twists": [1]}
    assert rep.hh_lower[2]["rank"] == 0
    assert rep.hh_upper[1] == {"rank": 1, "twists": [-1]}
    assert rep.hh0_matches
    assert hochschild_vanishing_check(rep)


def test_hochschild_affine_line_golden():
    k = make_graded_ring("Q", [])
    rep = hochschild_table(k, make_graded_ring("Q", ["x"]))
    with open(os.path.join(FIXDIR, "hochschild-affine-line.json")) as fh:
        assert json.dumps(rep.to_json(), indent=1, sort_keys=True) + "\n" == fh.read()


def test_hochschild_affine_plane():
    k = make_graded_ring("Q", [])
    rep = hochschild_table(k, make_graded_ring("Q", ["x", "y"]))
    assert rep.threshold == 4
    assert [rep.hh_lower[i]["rank"] for i in range(0, 6)] == [1, 2, 1, 0, 0, 0]
    assert [rep.hh_upper[i]["rank"] for i in range(0, 6)] == [1, 2, 1, 0, 0, 0]
    assert hochschild_vanishing_check(rep)


def test_hochschild_identity_map():
    B = make_graded_ring("Q", ["x"])
    rep = hochschild_table(B, B)
    assert rep.hh_lower[0]["rank"] == 1
    assert all(rep.hh_lower[i]["rank"] == 0 for i in range(1, len(rep.hh_lower)))
    assert hochschild_vanishing_check(rep)


def test_hochschild_rejects_general_maps():
    with pytest.raises(ValueError):
        hochschild_table(make_graded_ring("Q", ["x"]), make_graded_ring("Q", ["x", "y"]))
