"""Exact Gaussian elimination on sparse vectors over Q or a prime field.

Vectors are dicts from column index to nonzero coefficient.  Columns are
always the positions of monomials in canonical order, so pivoting on the
smallest column index means pivoting on the leading monomial; everything
here is deterministic.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from .errors import FieldRequired, RingError
from .polyring import Mono, Poly, Ring, mono_sort_key

Vec = dict[int, object]


def _require_field(ring: Ring) -> None:
    if not ring.is_field:
        raise RingError("exact elimination requires coefficients in Q or F_p")


class LinearSpan:
    """Row space maintained in echelon form, pivots normalized to 1."""

    def __init__(self, ring: Ring):
        _require_field(ring)
        self.ring = ring
        self.rows: dict[int, Vec] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def copy(self) -> "LinearSpan":
        dup = LinearSpan(self.ring)
        dup.rows = {p: dict(v) for p, v in self.rows.items()}
        return dup

    def reduce(self, vec: Vec) -> Vec:
        """Remainder of a vector after eliminating all known pivots."""
        ring = self.ring
        vec = {c: v for c, v in vec.items() if not ring.is_zero(v)}
        heap = list(vec)
        heapq.heapify(heap)
        seen: set[int] = set()
        while heap:
            col = heapq.heappop(heap)
            if col in seen:
                continue
            seen.add(col)
            coeff = vec.get(col)
            if coeff is None or ring.is_zero(coeff):
                vec.pop(col, None)
                continue
            row = self.rows.get(col)
            if row is None:
                continue
            for c2, v2 in row.items():
                cur = vec.get(c2)
                new = ring.sub(cur, ring.mul(coeff, v2)) if cur is not None else ring.neg(ring.mul(coeff, v2))
                if ring.is_zero(new):
                    vec.pop(c2, None)
                else:
                    if cur is None and c2 not in seen:
                        heapq.heappush(heap, c2)
                    vec[c2] = new
        return vec

    def add(self, vec: Vec) -> bool:
        """Insert a vector; returns True when it enlarged the span."""
        rem = self.reduce(vec)
        if not rem:
            return False
        pivot = min(rem)
        inv = self.ring.inv(rem[pivot])
        self.rows[pivot] = {c: self.ring.mul(v, inv) for c, v in rem.items()}
        return True

    def contains(self, vec: Vec) -> bool:
        return not self.reduce(vec)


def rref(rows: list[Vec], ncols: int, ring: Ring) -> tuple[list[Vec], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    _require_field(ring)
    work = [dict(r) for r in rows if r]
    result: list[Vec] = []
    pivots: list[int] = []
    for col in range(ncols):
        pivot_row = None
        for idx, row in enumerate(work):
            if col in row:
                pivot_row = idx
                break
        if pivot_row is None:
            continue
        row = work.pop(pivot_row)
        inv = ring.inv(row[col])
        row = {c: ring.mul(v, inv) for c, v in row.items()}
        for other in (work, result):
            for i, r2 in enumerate(other):
                factor = r2.get(col)
                if factor is None:
                    continue
                new = dict(r2)
                for c2, v2 in row.items():
                    cur = new.get(c2)
                    val = ring.sub(cur, ring.mul(factor, v2)) if cur is not None else ring.neg(ring.mul(factor, v2))
                    if ring.is_zero(val):
                        new.pop(c2, None)
                    else:
                        new[c2] = val
                other[i] = new
        result.append(row)
        pivots.append(col)
        work = [r for r in work if r]
    return result, pivots


def kernel_basis(rows: list[Vec], ncols: int, ring: Ring) -> list[Vec]:
    """Canonical basis of the right kernel of the matrix with the given rows.

    One basis vector per free column, with a 1 in that column; vectors are in
    increasing order of their free column.
    """
    reduced, pivots = rref(rows, ncols, ring)
    pivot_set = set(pivots)
    by_pivot = dict(zip(pivots, reduced))
    basis: list[Vec] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec: Vec = {free: ring.one()}
        for p in pivots:
            val = by_pivot[p].get(free)
            if val is not None and not ring.is_zero(val):
                vec[p] = ring.neg(val)
        basis.append(vec)
    return basis


class PolySpace:
    """A list of polynomials viewed as vectors over their monomial support."""

    def __init__(self, vectors: Sequence[Poly]):
        if not vectors:
            raise ValueError("need at least one polynomial")
        ring = vectors[0].ring
        ambient = vectors[0].ambient
        _require_field(ring)
        for v in vectors[1:]:
            if v.ring != ring or v.ambient != ambient:
                raise RingError("all polynomials must share one ring and ambient")
        self.ring = ring
        self.ambient = ambient
        self.vectors = list(vectors)
        monos = sorted({m for v in vectors for m in v.terms}, key=mono_sort_key)
        self.columns: list[Mono] = monos
        self._index = {m: i for i, m in enumerate(monos)}
        self.span = LinearSpan(ring)
        self.basis_indices: list[int] = []
        self._rows: list[Vec] = []
        for i, v in enumerate(self.vectors):
            vec = self.to_vec(v)
            self._rows.append(vec)
            if self.span.add(vec):
                self.basis_indices.append(i)

    @property
    def rank(self) -> int:
        return self.span.rank

    def to_vec(self, poly: Poly) -> Vec:
        return {self._index[m]: c for m, c in poly.terms.items()}

    def contains(self, poly: Poly) -> bool:
        if any(m not in self._index for m in poly.terms):
            return False
        return self.span.contains(self.to_vec(poly))

    def relations(self) -> list[list[object]]:
        """Nullspace of the coefficient matrix whose columns are the input
        polynomials: all exact linear dependencies among them."""
        ncols = len(self.vectors)
        transposed: dict[int, Vec] = {}
        for j, row in enumerate(self._rows):
            for c, v in row.items():
                transposed.setdefault(c, {})[j] = v
        rows = [transposed[c] for c in sorted(transposed)]
        kernel = kernel_basis(rows, ncols, self.ring)
        dense = []
        for vec in kernel:
            dense.append([vec.get(j, self.ring.zero()) for j in range(ncols)])
        return dense


def exact_linear_algebra(vectors: Sequence[Poly]) -> PolySpace:
    """Rank, basis selection, membership, and dependency kernel for a family
    of polynomials over a common field."""
    return PolySpace(vectors)


class MonomialIndex:
    """Canonical column numbering for a fixed monomial universe."""

    def __init__(self, monomials: Iterable[Mono]):
        self.columns = sorted(set(monomials), key=mono_sort_key)
        self._index = {m: i for i, m in enumerate(self.columns)}

    def __len__(self) -> int:
        return len(self.columns)

    def __contains__(self, mono: Mono) -> bool:
        return mono in self._index

    def vec(self, poly: Poly) -> Vec:
        return {self._index[m]: c for m, c in poly.terms.items()}

    def covers(self, poly: Poly) -> bool:
        return all(m in self._index for m in poly.terms)
