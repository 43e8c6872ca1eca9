"""DG layer: ring constructors, slot modules, cones, towers, reductions.

The cohomology fixtures here were derived independently (Koszul homology
by hand, socle/annihilator computations over the small quotient rings)
before being frozen into the asserts.
"""
import pytest

from dgdim.complexes import cohomology_data, prune_complex
from dgdim.core import GradedModule, make_graded_ring
from dgdim.dg import (
    AElem,
    build_koszul_dg,
    build_ring_dg,
    build_split_trivial_extension,
    build_trivial_extension,
    cone_dg,
    coreduce_dg_module,
    dg_module_from_h0_module,
    direct_sum_dg,
    factor_residue_module,
    free_dg_module,
    h0_cyclic_dg_module,
    hom_semifree_into_dg,
    koszul_dg_module,
    multiplication_map,
    product_dg,
    product_koszul_module,
    reduce_dg_module,
    reduce_to_h0,
    residue_dg_module,
    semifree_resolution,
    shift_dg,
    sppj_step,
    tensor_reduce,
    twist_dg,
)


def ring_xy():
    return make_graded_ring("Q", ["x", "y"])


def koszul_xy():
    R = ring_xy()
    x, y = R.variables()
    return build_koszul_dg(R, [x, R.mul(x, y)])


def dual_numbers_dg():
    return build_ring_dg(make_graded_ring("Q", ["x"], ["x^2"]))


def free_over(A):
    return free_dg_module(A, [(0, 0)])


# ---------- ring constructors ----------


def test_koszul_ring_axioms():
    A = koszul_xy()
    A.check_axioms()
    assert A.min_cohdeg() == -2
    assert sorted(A.cohdeg.values()) == [-2, -1, -1, 0]


def test_koszul_rejects_unit_ideal():
    R = make_graded_ring("Q", ["x"])
    with pytest.raises(ValueError):
        build_koszul_dg(R, [R.one()])


def test_trivial_extension_axioms_and_profile():
    """R(+)(R/x)[1]: H^0 = R and H^{-1} = R/(x), nothing else."""
    R = ring_xy()
    x, _ = R.variables()
    A = build_trivial_extension(R, 1, [x])
    A.check_axioms()
    M = free_over(A)
    assert M.cohomology_support() == [-1, 0]
    h0 = M.cohomology(0).module
    h1 = M.cohomology(-1).module
    assert [h0.hilbert_function(t) for t in range(3)] == [1, 2, 3]
    assert [h1.hilbert_function(t) for t in range(3)] == [1, 1, 1]


def test_koszul_differential_spot_check():
    # d(e{0,1}) = a0*e{1} - a1*e{0} for the exterior-square symbol
    A = koszul_xy()
    e01 = AElem(A, {"e{0,1}": A.base.one()})
    d = e01.d()
    x, y = A.base.variables()
    xy = A.base.mul(x, y)
    assert d.coeffs.get("e{1}") == x
    assert d.coeffs.get("e{0}") == -xy


def test_koszul_self_cohomology():
    """K(k[x,y]; x, xy): H^0 = k[y], H^{-1} = (R/x)(-2), H^{-2} = 0."""
    A = koszul_xy()
    M = free_over(A)
    assert M.cohomology_support() == [-1, 0]
    h0 = M.cohomology(0).module
    assert [h0.hilbert_function(t) for t in range(4)] == [1, 1, 1, 1]
    data = M.cohomology(-1)
    assert data.generator_degrees == (2,)
    assert [data.module.hilbert_function(t) for t in range(4)] == [0, 0, 1, 1]


def test_regular_koszul_is_concentrated():
    R = ring_xy()
    x, y = R.variables()
    A = build_koszul_dg(R, [x, y])
    M = free_over(A)
    assert M.cohomology_support() == [0]
    assert [M.cohomology(0).module.hilbert_function(t) for t in range(2)] == [1, 0]


def test_product_ring_dimension_and_json():
    P1 = make_graded_ring("Q", ["x"])
    P0 = make_graded_ring("Q", [])
    S = build_split_trivial_extension(P1, P0, 1)
    assert S.dimension() == 1
    assert [f.kind for f in S.factors] == ["ring", "trivial-extension"]
    data = S.to_json()
    assert data["kind"] == "product"
    assert len(data["factors"]) == 2


def test_koszul_ring_matches_iterated_cones():
    """The exterior-algebra DG-ring and the iterated two-term cones have
    the same cohomology, degree by internal degree."""
    R = ring_xy()
    x, y = R.variables()
    seq = [x, R.mul(x, y)]
    ring_side = free_over(build_koszul_dg(R, seq))
    cone_side = koszul_dg_module(build_ring_dg(R), seq)
    assert ring_side.cohomology_support() == cone_side.cohomology_support()
    for s in ring_side.cohomology_support():
        a = ring_side.cohomology(s).module
        b = cone_side.cohomology(s).module
        for t in range(5):
            assert a.hilbert_function(t) == b.hilbert_function(t), (s, t)


# ---------- modules, shifts, cones ----------


def test_koszul_module_generators():
    A = koszul_xy()
    _, y = A.base.variables()
    K = koszul_dg_module(A, [y])
    assert [(g.cohdeg, g.twist) for g in K.gens] == [(0, 0), (-1, 1)]
    assert K.cohomology_support() == [-1, 0]


def test_cone_of_identity_is_acyclic():
    A = koszul_xy()
    M = free_over(A)
    one = A.base.one()
    ident = multiplication_map(M, one)
    C = cone_dg(ident, check=True)
    assert C.is_acyclic()


def test_multiplication_map_validates():
    A = koszul_xy()
    x, _ = A.base.variables()
    f = multiplication_map(koszul_dg_module(A, [x]), x)
    f.validate()


def test_shift_moves_support():
    A = koszul_xy()
    M = free_over(A)
    assert shift_dg(M, 2).cohomology_support() == [-3, -2]
    assert shift_dg(shift_dg(M, 1), -1).cohomology_support() == [-1, 0]


def test_twist_moves_internal_degrees():
    A = koszul_xy()
    plain = free_over(A).cohomology(0).module
    twisted = twist_dg(free_over(A), 1).cohomology(0).module
    assert plain.hilbert_function(-1) == 0
    assert twisted.hilbert_function(-1) == 1
    assert twisted.hilbert_function(t=0) == plain.hilbert_function(t=1)


def test_direct_sum_supports_union():
    A = koszul_xy()
    M = free_over(A)
    S = direct_sum_dg(M, shift_dg(M, 3))
    assert S.cohomology_support() == [-4, -3, -1, 0]


# ---------- sppj steps and towers ----------


def test_sppj_step_kills_top_cohomology():
    """Covering k over k[x,y]: the cone loses H^0 and picks up the first
    syzygy module (x, y) one step down."""
    A = build_ring_dg(ring_xy())
    k = residue_dg_module(A)
    st = sppj_step(k)
    assert st.position == 0
    assert len(st.cover.gens) == 1
    assert st.cone.cohomology(0).is_zero()
    assert st.cone.cohomology(-1).generator_degrees == (1, 1)


def test_sppj_step_rejects_acyclic():
    A = koszul_xy()
    C = cone_dg(multiplication_map(free_over(A), A.base.one()), check=False)
    with pytest.raises(ValueError):
        sppj_step(C)


def test_semifree_shortcut_keeps_module():
    A = koszul_xy()
    _, y = A.base.variables()
    K = koszul_dg_module(A, [y])
    res = semifree_resolution(K)
    assert res.terminated
    assert res.stages == []
    assert res.sf is K


def test_residue_over_regular_koszul_terminates():
    """k over K(k[x]; x): one stage, the resolution is A itself."""
    R = make_graded_ring("Q", ["x"])
    A = build_koszul_dg(R, R.variables())
    res = semifree_resolution(residue_dg_module(A))
    assert res.terminated
    assert len(res.stages) == 1
    assert [(g.cohdeg, g.twist) for g in res.sf.gens] == [(0, 0)]


def test_residue_tower_over_polynomial_ring_terminates():
    A = build_ring_dg(ring_xy())
    res = semifree_resolution(residue_dg_module(A), window_lo=-8)
    assert res.terminated
    assert [st["position"] for st in res.stages] == [0, -1, -2]
    F = prune_complex(reduce_to_h0(res.sf))
    assert [F.component(c).rank for c in (-2, -1, 0)] == [1, 2, 1]


def test_residue_tower_over_dual_numbers():
    """The minimal resolution of k over k[x]/(x^2) never stops: rank one in
    every degree, differentials multiplication by x, trust floor marked."""
    A = dual_numbers_dg()
    res = semifree_resolution(residue_dg_module(A), window_lo=-6)
    assert not res.terminated
    F = reduce_to_h0(res.sf)
    assert F.known_lo is not None
    trust = F.known_lo + 1
    for c in range(trust, 1):
        assert F.component(c).rank == 1
    for c in range(trust, 0):
        entry = F.differential(c).entries[0][0]
        assert entry.degree() == 1 and len(entry.terms) == 1
    x = A.base.variables()[0]
    assert F.differential(-1).entries[0][0] in (x, -x)


def test_stage_positions_strictly_decrease():
    A = koszul_xy()
    res = semifree_resolution(residue_dg_module(A), window_lo=-4)
    positions = [st["position"] for st in res.stages]
    assert positions == sorted(positions, reverse=True)
    assert len(set(positions)) == len(positions)


def test_h0_module_encoding_round_trip():
    """k over H^0(K(k[x,y]; x,xy)) = k[y], resolved over the DG-ring: Tor
    appears in even degrees with internal twists 0, 2, 4."""
    A = koszul_xy()
    h0 = A.h0_ring()
    Mk = GradedModule.cyclic(h0, h0.variables())
    Md = dg_module_from_h0_module(A, Mk)
    res = semifree_resolution(Md, window_lo=-6)
    F = prune_complex(reduce_to_h0(res.sf))
    trust = F.known_lo + 1 if F.known_lo is not None else -6
    got = {}
    for c in range(max(trust, -5), 1):
        data = cohomology_data(F, c)
        if not data.is_zero():
            got[c] = data.generator_degrees
    assert got == {0: (0,), -2: (2,), -4: (4,)}


def test_truncation_markers_propagate_to_hom():
    A = dual_numbers_dg()
    res = semifree_resolution(residue_dg_module(A), window_lo=-4)
    SF = res.sf
    assert SF.known_lo is not None
    H = hom_semifree_into_dg(SF, free_over(A))
    assert H.known_hi == -SF.known_lo


# ---------- reductions and derived Hom ----------


def test_reduce_free_module_is_h0():
    A = koszul_xy()
    F = reduce_dg_module(free_over(A))
    Fp = prune_complex(F)
    assert Fp.support() == [0]
    assert Fp.component(0).rank == 1


def test_reduce_preserves_sup():
    A = koszul_xy()
    _, y = A.base.variables()
    for M in (koszul_dg_module(A, [y]), shift_dg(free_over(A), 2)):
        F = prune_complex(reduce_dg_module(M, window_lo=-6))
        sup_f = max(
            (c for c in F.support() if not cohomology_data(F, c).is_zero()),
            default=None,
        )
        assert sup_f == M.sup_h()


def test_coreduce_preserves_inf():
    A = koszul_xy()
    _, y = A.base.variables()
    M = koszul_dg_module(A, [y])
    H = coreduce_dg_module(M, window_lo=-6)
    assert M.inf_h() == -1
    assert H.cohomology(-1).is_zero() is False
    for c in range(-4, -1):
        assert H.cohomology(c).is_zero() or c == -1


def test_coreduce_of_ring_module_is_h0():
    A = build_ring_dg(ring_xy())
    H = coreduce_dg_module(free_over(A))
    data = H.cohomology(0)
    assert data.generator_degrees == (0,)
    for c in (-2, -1, 1):
        assert H.cohomology(c).is_zero()


def test_tensor_reduce_against_extra_relations():
    A = koszul_xy()
    _, y = A.base.variables()
    K = koszul_dg_module(A, [y])
    F = tensor_reduce(K, [y])
    assert F.ring.standard_monomials(1) == []
    assert F.component(0).rank == 1


# ---------- Ext via semifree Hom ----------


def test_ext_residue_into_self_injective_ring():
    """Over k[x]/(x^2): Hom(k, A) is the socle k(-1) and the higher Ext
    into the free module all vanish."""
    A = dual_numbers_dg()
    SF = semifree_resolution(residue_dg_module(A), window_lo=-6).sf
    H = hom_semifree_into_dg(SF, free_over(A))
    data = H.cohomology(0)
    assert data.generator_degrees == (1,)
    hi = H.known_hi if H.known_hi is not None else 6
    for i in range(1, hi):
        assert H.cohomology(i).is_zero(), i


def test_ext_residue_into_residue_growth():
    A = dual_numbers_dg()
    SF = semifree_resolution(residue_dg_module(A), window_lo=-6).sf
    H = hom_semifree_into_dg(SF, residue_dg_module(A))
    hi = H.known_hi if H.known_hi is not None else 6
    for i in range(0, hi):
        assert H.cohomology(i).generator_degrees == (-i,), i


# ---------- product modules ----------


def test_product_koszul_module_supports():
    P1 = make_graded_ring("Q", ["x"])
    P0 = make_graded_ring("Q", [])
    S = build_split_trivial_extension(P1, P0, 1)
    M = product_koszul_module(S, [(P1.variables()[0], P0.zero())])
    assert M.cohomology_support() == [-2, -1, 0]
    assert (M.inf_h(), M.sup_h(), M.amp_h()) == (-2, 0, 2)


def test_factor_residue_module():
    P1 = make_graded_ring("Q", ["x"])
    P0 = make_graded_ring("Q", [])
    S = product_dg([build_ring_dg(P1), build_ring_dg(P0)])
    M = factor_residue_module(S, 0)
    assert M.cohomology_support() == [0]
    assert M.parts[1].is_acyclic()


def test_h0_cyclic_restriction_has_h0_only():
    A = koszul_xy()
    M = h0_cyclic_dg_module(A, [])
    assert M.cohomology_support() == [0]
    h = M.cohomology(0).module
    assert [h.hilbert_function(t) for t in range(3)] == [1, 1, 1]
