"""Finitely presented graded modules: cokernels of homogeneous matrices.

minimal_presentation prunes a presentation until every relation entry lies in
the irrelevant maximal ideal and the relation columns are irredundant; by
graded Nakayama the surviving generators are a minimal generating set.
"""
from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from .poly import Poly
from .freemod import GradedFreeModule, GradedMatrix
from .ring import GradedRing
from .syz import SyzygyEngine, syzygy_engine


class MinimalPresentation:
    """Result of minimizing a presentation.

    survivors: indices of the original generators that remain, in order.
    expressions: original generator index -> {surviving index -> Poly}
        writing each original generator in terms of the survivors.
    """

    def __init__(self, matrix: GradedMatrix, survivors: List[int], expressions: Dict[int, Dict[int, Poly]]):
        self.matrix = matrix
        self.survivors = survivors
        self.expressions = expressions

    @property
    def generator_degrees(self) -> Tuple[int, ...]:
        return self.matrix.target.degrees

    @property
    def rank(self) -> int:
        return self.matrix.target.rank

    def is_zero(self) -> bool:
        return self.rank == 0


def minimal_presentation(M: GradedMatrix) -> MinimalPresentation:
    ring = M.ring
    field = ring.field
    if ring.is_zero_ring:
        empty = GradedFreeModule(ring, ())
        return MinimalPresentation(GradedMatrix.zero(empty, empty), [], {})
    tgt = list(M.target.degrees)
    src = list(M.source.degrees)
    rows = [list(r) for r in M.entries]
    alive_rows = list(range(len(tgt)))
    alive_cols = list(range(len(src)))
    # original generator -> expression in current generators
    expr: Dict[int, Dict[int, Poly]] = {
        o: {o: ring.one()} for o in range(len(tgt))
    }

    def entry(i, j):
        return rows[i][j]

    while True:
        pivot = None
        for j in alive_cols:
            for i in alive_rows:
                e = rows[i][j]
                if e and e.degree() == 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pi, pj = pivot
        c = rows[pi][pj].terms[ring.ambient.mono_one()]
        cinv = field.inv(c)
        # generator pi = -1/c * sum_{t != pi} rows[t][pj] * g_t
        combo = {
            t: rows[t][pj].scale(field.neg(cinv))
            for t in alive_rows
            if t != pi and rows[t][pj]
        }
        # clear row pi from the other columns: col_j' -= (e[pi][j']/c) col_pj
        for j2 in alive_cols:
            if j2 == pj:
                continue
            f = rows[pi][j2]
            if not f:
                continue
            factor = f.scale(cinv)
            for t in alive_rows:
                if rows[t][pj]:
                    rows[t][j2] = ring.normal_form(
                        rows[t][j2] - factor * rows[t][pj]
                    )
        # rewrite stored expressions of the original generators
        for o, d in expr.items():
            p = d.pop(pi, None)
            if p:
                for t, coef in combo.items():
                    add = ring.normal_form(p * coef)
                    if t in d:
                        s = ring.normal_form(d[t] + add)
                        if s:
                            d[t] = s
                        else:
                            del d[t]
                    elif add:
                        d[t] = add
        alive_rows.remove(pi)
        alive_cols.remove(pj)

    # assemble the pruned matrix and drop zero columns
    tgt_deg = [tgt[i] for i in alive_rows]
    target = GradedFreeModule(ring, tgt_deg)
    cols: List[List[Poly]] = []
    col_deg: List[int] = []
    for j in alive_cols:
        col = [rows[i][j] for i in alive_rows]
        if all(p.is_zero() for p in col):
            continue
        cols.append(col)
        col_deg.append(src[j])
    # irredundant relation columns: ascending degree, drop a column only when
    # it lies in the span of the still-live others of degree <= its own
    # (a column that was already dropped must not help drop another one)
    order = sorted(range(len(cols)), key=lambda t: (col_deg[t], t))
    dropped: set = set()
    for t in order:
        cands = [
            u
            for u in order
            if u != t and u not in dropped and col_deg[u] <= col_deg[t]
        ]
        if cands:
            probe = GradedMatrix.from_columns(
                target, [col_deg[u] for u in cands], [cols[u] for u in cands]
            )
            if SyzygyEngine(probe).contains(cols[t]):
                dropped.add(t)
    kept = [t for t in order if t not in dropped]
    matrix = GradedMatrix.from_columns(
        target, [col_deg[t] for t in kept], [cols[t] for t in kept]
    )
    # re-index expressions to positions within the survivor list
    pos = {gen: k for k, gen in enumerate(alive_rows)}
    expressions = {
        o: {pos[t]: p for t, p in d.items()} for o, d in expr.items()
    }
    return MinimalPresentation(matrix, alive_rows, expressions)


class GradedModule:
    """Cokernel of a homogeneous presentation matrix."""

    def __init__(self, presentation: GradedMatrix):
        presentation.check_homogeneous()
        self.presentation = presentation
        self.ring = presentation.ring
        self._minimal: MinimalPresentation | None = None

    @staticmethod
    def free(ring: GradedRing, degrees: Sequence[int]) -> "GradedModule":
        target = GradedFreeModule(ring, degrees)
        source = GradedFreeModule(ring, ())
        return GradedModule(GradedMatrix.zero(target, source))

    @staticmethod
    def cyclic(ring: GradedRing, relations: Sequence[Poly]) -> "GradedModule":
        """R/(relations) as a module, generator in degree 0."""
        target = GradedFreeModule(ring, (0,))
        rels = [ring.normal_form(p) for p in relations]
        rels = [p for p in rels if p]
        cols = [[p] for p in rels]
        degs = [p.degree() for p in rels]
        return GradedModule(GradedMatrix.from_columns(target, degs, cols))

    def minimal(self) -> MinimalPresentation:
        if self._minimal is None:
            self._minimal = minimal_presentation(self.presentation)
        return self._minimal

    def minimal_generator_degrees(self) -> Tuple[int, ...]:
        return self.minimal().generator_degrees

    def is_zero(self) -> bool:
        return self.minimal().rank == 0

    def hilbert_function(self, t: int) -> int:
        return self.presentation.coker_dim_in_degree(t)

    def annihilated_by_irrelevant_ideal(self) -> bool:
        """True when every variable kills every minimal generator."""
        mp = self.minimal()
        M = mp.matrix
        if M.target.rank == 0:
            return True
        eng = syzygy_engine(M)
        ring = self.ring
        for v in ring.variables():
            for i in range(M.target.rank):
                col = [
                    ring.normal_form(v) if t == i else ring.zero()
                    for t in range(M.target.rank)
                ]
                if not eng.contains(col):
                    return False
        return True

    def total_dimension(self) -> int:
        """dim_k of a module annihilated by the irrelevant ideal."""
        if not self.annihilated_by_irrelevant_ideal():
            raise ValueError("module is not a finite-length k-vector space")
        return self.minimal().rank

    def __repr__(self):
        return "GradedModule(gens %s)" % (list(self.minimal_generator_degrees()),)
