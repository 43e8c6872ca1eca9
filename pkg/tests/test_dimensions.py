"""Derived dimensions: proj/flat/inj, depth, local cohomology, dualizing.

Finite values asserted here were recomputed by hand (Koszul homology and
Bass/Betti tables over the small fixtures) before freezing; the infinite
cases were checked against the growth of the minimal resolutions.
"""
import json

import pytest

from dgdim.core import make_graded_ring
from dgdim.dg import (
    build_koszul_dg,
    build_ring_dg,
    build_split_trivial_extension,
    build_trivial_extension,
    direct_sum_dg,
    factor_residue_module,
    free_dg_module,
    koszul_dg_module,
    product_koszul_module,
    residue_dg_module,
    shift_dg,
)
from dgdim.dimensions import (
    bass_numbers,
    dualizing_dg_module,
    flat_dim,
    inj_dim,
    is_gorenstein,
    is_local_cohen_macaulay,
    is_regular_sequence,
    local_cohomology_amplitude,
    proj_dim,
    ring_amplitude,
    ring_free_module,
    sequential_depth,
)


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


def dual_numbers():
    return build_ring_dg(make_graded_ring("Q", ["x"], ["x^2"]))


def golod_xy():
    return build_ring_dg(make_graded_ring("Q", ["x", "y"], ["x^2", "x*y"]))


def split_product():
    # (k[x] x k) |x k[1], realized as k[x] x (k |x k[1])
    return build_split_trivial_extension(
        make_graded_ring("Q", ["x"]), make_graded_ring("Q", []), 1
    )


# ---------- projective dimension ----------


def test_projdim_free_is_zero():
    rep = proj_dim(ring_free_module(ring_xy()))
    assert rep.value == 0
    assert rep.finite


@pytest.mark.parametrize(
    "seq, expected",
    [(["x"], 1), (["x", "x*y"], 2), (["x", "x*y", "y^2"], 3)],
)
def test_projdim_koszul_matches_length(seq, expected):
    R = ring_xy()
    assert proj_dim(koszul_dg_module(R, seq)).value == expected


def test_projdim_koszul_over_dg_ring():
    A = koszul_xy()
    assert proj_dim(koszul_dg_module(A, ["y"])).value == 1
    assert proj_dim(koszul_dg_module(A, ["y", "y^2"])).value == 2


def test_projdim_residue_field():
    # finite over the regular base, infinite over the DG-ring and the
    # dual numbers
    assert proj_dim(residue_dg_module(ring_xy())).value == 2
    rep = proj_dim(residue_dg_module(koszul_xy()))
    assert not rep.finite
    rep = proj_dim(residue_dg_module(dual_numbers()))
    assert not rep.finite
    assert "rule" in rep.certificate


def test_projdim_shift_law():
    R = ring_xy()
    K = koszul_dg_module(R, ["x"])
    assert proj_dim(K).value == 1
    assert proj_dim(shift_dg(K, 2)).value == 3


def test_projdim_direct_sum_is_max():
    R = ring_xy()
    M = direct_sum_dg(koszul_dg_module(R, ["x", "x*y"]), koszul_dg_module(R, ["x"]))
    assert proj_dim(M).value == 2


def test_projdim_product_koszul():
    Apr = split_product()
    rows = [("x", "0"), ("x^2", "0"), ("x^3", "0")]
    for length in (1, 2, 3):
        K = product_koszul_module(Apr, rows[:length])
        assert proj_dim(K).value == length


def test_projdim_factor_residue_over_product():
    Apr = split_product()
    M = factor_residue_module(Apr, 0)
    rep = proj_dim(M)
    assert rep.value == 1
    assert rep.value + M.inf_h() == 1


def test_dimension_report_json_round_trip():
    rep = proj_dim(residue_dg_module(dual_numbers()))
    text = json.dumps(rep.to_json(), sort_keys=True)
    assert json.loads(text)["value"] == "infinity"


# ---------- flat dimension ----------


def test_flatdim_fixtures():
    R = ring_xy()
    assert flat_dim(ring_free_module(R)).value == 0
    assert flat_dim(koszul_dg_module(R, ["x"])).value == 1
    assert flat_dim(residue_dg_module(R)).value == 2


def test_flatdim_infinite_residue():
    rep = flat_dim(residue_dg_module(koszul_xy()))
    assert not rep.finite


def test_flatdim_bounded_by_projdim():
    A = koszul_xy()
    K = koszul_dg_module(A, ["y"])
    assert flat_dim(K).value <= proj_dim(K).value


# ---------- injective dimension and Bass numbers ----------


def test_injdim_regular_ring():
    rep = inj_dim(ring_free_module(ring_xy()))
    assert rep.value == 2
    assert rep.certificate["bass"] == {"2": 1}


def test_injdim_gorenstein_dg_ring():
    assert inj_dim(ring_free_module(koszul_xy())).value == 0
    assert inj_dim(ring_free_module(dual_numbers())).value == 0


def test_injdim_infinite_with_persistent_bass_numbers():
    rep = inj_dim(residue_dg_module(dual_numbers()))
    assert not rep.finite
    assert rep.certificate["bass"] == {"0": 1, "1": 1, "2": 1}


def test_bass_formula_on_gorenstein_fixtures():
    # injdim of the ring = seq.depth - amp on the Gorenstein fixtures
    for A in (ring_xy(), koszul_xy(), dual_numbers()):
        depth = sequential_depth(A).value
        assert inj_dim(ring_free_module(A)).value == depth - ring_amplitude(A)


def test_bass_numbers_window():
    mus, _ = bass_numbers(ring_free_module(ring_xy()), 0, 2)
    assert mus == {0: 0, 1: 0, 2: 1}


# ---------- regular sequences ----------


def test_regular_sequence_on_polynomial_ring():
    rep = is_regular_sequence(ring_xy(), ["x", "y"])
    assert rep.regular
    assert rep.koszul_infs == [0, 0]


def test_regular_sequence_on_koszul_ring():
    rep = is_regular_sequence(koszul_xy(), ["y"])
    assert rep.regular
    assert rep.base_inf == -1


def test_zerodivisor_detected():
    rep = is_regular_sequence(golod_xy(), ["x"])
    assert not rep.regular
    assert rep.first_failure == 0


def test_unit_ideal_rejected():
    with pytest.raises(ValueError):
        is_regular_sequence(ring_xy(), ["1"])
    with pytest.raises(ValueError):
        is_regular_sequence(split_product(), [("1", "1")])


def test_product_sequence_componentwise():
    Apr = split_product()
    # a zero coordinate on one factor is a zerodivisor for the product
    assert not is_regular_sequence(Apr, [("x", "0")]).regular
    # a unit in a single coordinate leaves a proper ideal: no error, not
    # regular either
    assert not is_regular_sequence(Apr, [("1", "0")]).regular


# ---------- sequential depth ----------


@pytest.mark.parametrize(
    "make, expected, witness",
    [
        (ring_xy, 2, ["x", "y"]),
        (koszul_xy, 1, ["y"]),
        (golod_xy, 0, []),
        (koszul_xyz, 2, ["y", "z"]),
    ],
)
def test_sequential_depth(make, expected, witness):
    rep = sequential_depth(make())
    assert rep.value == expected
    assert rep.sequence == witness
    assert rep.exhaustive


def test_sequential_depth_rejects_products():
    with pytest.raises(ValueError):
        sequential_depth(split_product())


# ---------- local cohomology ----------


def test_local_cohomology_regular_ring():
    rep = local_cohomology_amplitude(ring_xy())
    assert rep.degrees == [2]
    assert rep.amplitude == 0


def test_local_cohomology_koszul_ring():
    rep = local_cohomology_amplitude(koszul_xy())
    assert rep.degrees == [0, 1]
    assert rep.amplitude == 1


def test_local_cohomology_depth_drop():
    # depth 0, dim 1: torsion in two degrees
    assert local_cohomology_amplitude(golod_xy()).amplitude == 1


def test_local_cohen_macaulay():
    assert is_local_cohen_macaulay(ring_xy())
    assert is_local_cohen_macaulay(koszul_xy())
    assert not is_local_cohen_macaulay(golod_xy())


def test_local_cohen_macaulay_designed_false():
    R = make_graded_ring("Q", ["x", "y"])
    B = build_trivial_extension(R, 1, ["x"])
    rep = local_cohomology_amplitude(B)
    assert rep.degrees == [0, 2]
    assert rep.amplitude == 2
    assert ring_amplitude(B) == 1
    assert not is_local_cohen_macaulay(B)


# ---------- Gorenstein and dualizing ----------


def test_gorenstein_fixtures():
    assert is_gorenstein(ring_xy())
    assert is_gorenstein(koszul_xy())
    assert is_gorenstein(dual_numbers())
    assert is_gorenstein(build_ring_dg(make_graded_ring("Q", ["x", "y"], ["x^2", "y^2"])))


def test_not_gorenstein_trivial_extension():
    R = make_graded_ring("Q", ["x", "y"])
    assert not is_gorenstein(build_trivial_extension(R, 1, ["x"]))


def test_not_gorenstein_golod_quotient():
    # slow fixture: the Bass scan walks a resolution with Fibonacci-type
    # Betti growth before certifying non-termination
    assert not is_gorenstein(golod_xy())


def test_gorenstein_product_componentwise():
    assert is_gorenstein(split_product())


def test_dualizing_regular_ring():
    rep = dualizing_dg_module(ring_xy())
    assert rep.shift == 2
    assert rep.normalized_inf == -2
    assert rep.injdim.value == 0
    assert rep.injdim.value == rep.normalized_inf + 2
    assert rep.injdim_unshifted == 2
    assert rep.biduality_ok


def test_dualizing_koszul_ring():
    rep = dualizing_dg_module(koszul_xy())
    assert rep.shift == 0
    assert rep.normalized_inf == -1
    assert rep.injdim.value == 0
    assert rep.biduality_ok


def test_dualizing_requires_gorenstein():
    R = make_graded_ring("Q", ["x", "y"])
    with pytest.raises(ValueError):
        dualizing_dg_module(build_trivial_extension(R, 1, ["x"]))
