"""Connected graded quotient rings R = k[x_1..x_n]/J with Groebner machinery.

J is generated by homogeneous polynomials; the reduced Groebner basis (graded
reverse lexicographic order) backs normal forms, Krull dimension via the
leading-term ideal, and monomial bases of graded pieces.  The irrelevant
maximal ideal generated by the variables plays the role of the maximal ideal
of a local ring throughout.
"""
from __future__ import annotations

from typing import Iterable, List, Optional, Sequence

from .poly import Monomial, Poly, PolyRing, poly_ring_from_json
from .scalars import field_from_tag


def reduce_poly(p: Poly, basis: Sequence[Poly]) -> Poly:
    """Full normal form of p modulo basis (every term reduced)."""
    if not basis:
        return p
    ring = p.ring
    f = ring.field
    lead = [(g.leading(), g) for g in basis if g]
    remainder: dict = {}
    work = dict(p.terms)
    while work:
        m = max(work, key=ring.mono_key)
        c = work.pop(m)
        hit = None
        for (lm, lc), g in lead:
            if ring.mono_divides(lm, m):
                hit = (lm, lc, g)
                break
        if hit is None:
            remainder[m] = c
            continue
        lm, lc, g = hit
        factor_mono = ring.mono_div(m, lm)
        factor_coeff = f.div(c, lc)
        # work -= factor * g
        for gm, gc in g.terms.items():
            mm = ring.mono_mul(gm, factor_mono)
            cc = f.mul(gc, factor_coeff)
            if mm in work:
                s = f.sub(work[mm], cc)
                if f.is_zero(s):
                    del work[mm]
                else:
                    work[mm] = s
            elif mm == m:
                pass  # cancelled the pivot term
            else:
                work[mm] = f.neg(cc)
    return Poly(ring, remainder)


def _s_poly(g1: Poly, g2: Poly) -> Poly:
    ring = g1.ring
    f = ring.field
    (m1, c1) = g1.leading()
    (m2, c2) = g2.leading()
    lcm = ring.mono_lcm(m1, m2)
    t1 = g1.mul_term(ring.mono_div(lcm, m1), f.inv(c1))
    t2 = g2.mul_term(ring.mono_div(lcm, m2), f.inv(c2))
    return t1 - t2


def groebner_basis(gens: Sequence[Poly]) -> List[Poly]:
    """Reduced Groebner basis of the ideal generated by gens (Buchberger)."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = gens[0].ring
    basis: List[Poly] = []
    for g in gens:
        r = reduce_poly(g, basis)
        if r:
            basis.append(r.monic())
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        # normal strategy: smallest lcm degree first, deterministic tie-break
        def pair_key(ij):
            i, j = ij
            lcm = ring.mono_lcm(basis[i].leading()[0], basis[j].leading()[0])
            return (ring.mono_degree(lcm), ring.mono_key(lcm), i, j)

        pairs.sort(key=pair_key)
        i, j = pairs.pop(0)
        mi, _ = basis[i].leading()
        mj, _ = basis[j].leading()
        if ring.mono_lcm(mi, mj) == ring.mono_mul(mi, mj):
            continue  # coprime leading terms: S-poly reduces to zero
        s = reduce_poly(_s_poly(basis[i], basis[j]), basis)
        if s:
            basis.append(s.monic())
            pairs.extend((t, len(basis) - 1) for t in range(len(basis) - 1))
    return interreduce(basis)


def interreduce(basis: Sequence[Poly]) -> List[Poly]:
    """Minimal reduced monic basis, deterministically ordered."""
    polys = [g.monic() for g in basis if g]
    # drop elements whose leading term is divisible by another's
    polys.sort(key=lambda g: g.ring.mono_key(g.leading()[0]))
    kept: List[Poly] = []
    for idx, g in enumerate(polys):
        lm = g.leading()[0]
        ring = g.ring
        redundant = False
        for jdx, h in enumerate(polys):
            if jdx == idx:
                continue
            lh = h.leading()[0]
            if ring.mono_divides(lh, lm) and (
                lh != lm or jdx < idx
            ):
                redundant = True
                break
        if not redundant:
            kept.append(g)
    out: List[Poly] = []
    for i, g in enumerate(kept):
        others = kept[:i] + kept[i + 1 :]
        r = reduce_poly(g, others)
        if r:
            out.append(r.monic())
    out.sort(key=lambda g: g.ring.mono_key(g.leading()[0]))
    return out


class GradedRing:
    """Graded quotient k[x..]/J presented by a reduced Groebner basis."""

    def __init__(self, ambient: PolyRing, relations: Sequence[Poly]):
        self.ambient = ambient
        for rel in relations:
            if not rel.is_homogeneous():
                raise ValueError("inhomogeneous relation: %s" % rel)
        self.relations = tuple(r for r in relations if r)
        self.gb = tuple(groebner_basis(list(self.relations)))
        one = ambient.mono_one()
        self.is_zero_ring = any(g.leading()[0] == one for g in self.gb)
        self._lt = tuple(g.leading()[0] for g in self.gb)
        self._mono_basis_cache: dict = {}
        self._dimension: Optional[int] = None

    # -- basic structure ---------------------------------------------------

    @property
    def field(self):
        return self.ambient.field

    def normal_form(self, p: Poly) -> Poly:
        return reduce_poly(p, self.gb)

    def is_polynomial_ring(self) -> bool:
        return not self.gb

    def zero(self) -> Poly:
        return self.ambient.zero()

    def one(self) -> Poly:
        if self.is_zero_ring:
            return self.ambient.zero()
        return self.ambient.one()

    def parse(self, text: str) -> Poly:
        return self.normal_form(self.ambient.parse(text))

    def mul(self, a: Poly, b: Poly) -> Poly:
        return self.normal_form(a * b)

    def quotient(self, extra: Sequence[Poly]) -> "GradedRing":
        """R/(extra) over the same ambient ring."""
        return GradedRing(self.ambient, list(self.relations) + [p for p in extra if p])

    def variables(self) -> List[Poly]:
        return [self.ambient.variable(n) for n in self.ambient.names]

    # -- monomial bases and Hilbert data ----------------------------------

    def standard_monomials(self, degree: int) -> List[Monomial]:
        """Monomials of weighted degree d not in the leading-term ideal."""
        if degree < 0 or self.is_zero_ring:
            return []
        cached = self._mono_basis_cache.get(degree)
        if cached is not None:
            return cached
        out: List[Monomial] = []
        n = self.ambient.nvars
        degs = self.ambient.degrees
        expo = [0] * n

        def rec(i: int, remaining: int):
            if i == n:
                if remaining == 0:
                    m = tuple(expo)
                    if not any(
                        self.ambient.mono_divides(lt, m) for lt in self._lt
                    ):
                        out.append(m)
                return
            maxe = remaining // degs[i]
            for e in range(maxe + 1):
                expo[i] = e
                rec(i + 1, remaining - e * degs[i])
            expo[i] = 0

        rec(0, degree)
        out.sort(key=self.ambient.mono_key)
        self._mono_basis_cache[degree] = out
        return out

    def hilbert_function(self, degree: int) -> int:
        return len(self.standard_monomials(degree))

    def dimension(self) -> int:
        """Krull dimension, via the leading-term (monomial) ideal.

        For the zero ring this returns -1.
        """
        if self.is_zero_ring:
            return -1
        if self._dimension is not None:
            return self._dimension
        n = self.ambient.nvars
        supports = [
            frozenset(i for i, e in enumerate(lt) if e > 0) for lt in self._lt
        ]
        best = 0
        for mask in range(1 << n):
            s = frozenset(i for i in range(n) if mask >> i & 1)
            if any(sup <= s for sup in supports):
                continue
            best = max(best, len(s))
        self._dimension = best
        return best

    # -- identity ----------------------------------------------------------

    def key(self):
        return (
            self.ambient.field.tag,
            self.ambient.names,
            self.ambient.degrees,
            tuple(str(g) for g in self.gb),
        )

    def __eq__(self, other):
        return isinstance(other, GradedRing) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        rel = ", ".join(str(g) for g in self.gb)
        return "GradedRing(%r mod [%s])" % (self.ambient, rel)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": self.field.tag,
            "variables": [
                {"name": n, "degree": d}
                for n, d in zip(self.ambient.names, self.ambient.degrees)
            ],
            "relations": [str(r) for r in self.relations],
        }


def make_graded_ring(field, variables, relations: Iterable[str] = ()) -> GradedRing:
    """Build k[x..]/J from a field (or tag), name->degree data and relation strings.

    variables: mapping name -> degree, an iterable of (name, degree) pairs,
    or a plain iterable of names (every degree then defaults to 1).
    """
    if isinstance(field, str):
        field = field_from_tag(field)
    if isinstance(variables, dict):
        items = list(variables.items())
    else:
        items = [
            (v, 1) if isinstance(v, str) else (v[0], v[1]) for v in variables
        ]
    ambient = PolyRing(field, [n for n, _ in items], [d for _, d in items])
    rels = [ambient.parse(s) for s in relations]
    return GradedRing(ambient, rels)


def graded_ring_from_json(data: dict) -> GradedRing:
    ambient = poly_ring_from_json(data)
    rels = [ambient.parse(s) for s in data.get("relations", [])]
    return GradedRing(ambient, rels)
