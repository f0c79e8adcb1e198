"""Ordinary and twisted bideterminants.

An ordinary bideterminant is the product over columns of the determinants of
the variable submatrices selected by two labelling tableaux.  A twisted
bideterminant attaches such data to a triple (P, Q, alpha) and sums signed
bideterminants over coset representatives; the default evaluation route goes
through the row-wise concatenation of the matrix tuple into one tall matrix,
which keeps the number of summands at the index of the twist subgroup in the
source column stabilizer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceeded, CompatibilityError, EntryRange
from .mappings import (
    BoxPermutationGroup,
    DiagramMapping,
    Triple,
    column_stabilizer,
    conjugate_by_mapping,
    left_coset_reps,
    twist_subgroup,
)
from .polyring import Ambient, Mono, Poly, Ring, ZZ, xvar
from .tableaux import Box, Diagram, Tableau

NAIVE_SUM_CAP = 10**6


@dataclass(frozen=True)
class BidetSpec:
    """Labels of an ordinary bideterminant: one shape, two tableaux on it."""

    shape: Diagram
    S: Tableau
    T: Tableau

    def __post_init__(self) -> None:
        if self.S.shape.boxes != self.shape.boxes or self.T.shape.boxes != self.shape.boxes:
            raise CompatibilityError("S and T must live on the given shape")


@dataclass(frozen=True)
class TwistedBidetSpec:
    """Labels of a twisted bideterminant: a triple plus row/column tableaux.

    S lives on the source shape (that of Q), T on the target shape (that of
    P); m is the number of matrices, at least the largest label in P and Q.
    """

    triple: Triple
    S: Tableau
    T: Tableau
    m: int

    def __post_init__(self) -> None:
        alpha = self.triple.alpha
        if self.S.shape.boxes != alpha.source.boxes:
            raise CompatibilityError("S must live on the source shape")
        if self.T.shape.boxes != alpha.target.boxes:
            raise CompatibilityError("T must live on the target shape")
        if self.triple.P.max_entry() > self.m or self.triple.Q.max_entry() > self.m:
            raise CompatibilityError("P and Q entries must not exceed m")


def _check_entry_bound(tab: Tableau, bound: int, name: str) -> None:
    big = tab.max_entry()
    if big > bound:
        raise EntryRange(f"{name} has entry {big}, above the bound {bound}")


def bideterminant(spec: BidetSpec, r: int, s: int, ring: Ring = ZZ) -> Poly:
    """Product over the columns of the shape of det((x_{S(a),T(b)})_{a,b})."""
    ambient: Ambient = (r, s, 1)
    _check_entry_bound(spec.S, r, "S")
    _check_entry_bound(spec.T, s, "T")
    result = Poly.one(ring, ambient)
    for col in spec.shape.columns:
        result = result * _column_determinant(col, spec.S, spec.T, ring, ambient)
    return result


def _column_determinant(boxes: list[Box], S: Tableau, T: Tableau, ring: Ring, ambient: Ambient) -> Poly:
    """Cofactor expansion of det((x_{S(a),T(b)})) over one column's boxes."""

    def rec(row_boxes: tuple[Box, ...], col_boxes: tuple[Box, ...]) -> Poly:
        if not row_boxes:
            return Poly.one(ring, ambient)
        a = row_boxes[0]
        total = Poly.zero(ring, ambient)
        for k, b in enumerate(col_boxes):
            entry = Poly.variable(ring, ambient, 1, S(a), T(b))
            minor = rec(row_boxes[1:], col_boxes[:k] + col_boxes[k + 1 :])
            term = entry * minor
            total = total + (term if k % 2 == 0 else -term)
        return total

    return rec(tuple(boxes), tuple(boxes))


def naive_double_sum(
    spec: TwistedBidetSpec, r: int, s: int, ring: Ring = ZZ, cap: int = NAIVE_SUM_CAP
) -> Poly:
    """Literal double sum over both column stabilizers; the reference
    implementation used by the divisibility and coset-independence checks."""
    alpha = spec.triple.alpha
    _check_entry_bound(spec.S, r, "S")
    _check_entry_bound(spec.T, s, "T")
    cf = column_stabilizer(alpha.source)
    ce = column_stabilizer(alpha.target)
    if cf.order * ce.order > cap:
        raise CapExceeded(f"|C_F|*|C_E| = {cf.order * ce.order} exceeds cap {cap}")
    ambient: Ambient = (r, s, spec.m)
    q_tab, S, T = spec.triple.Q, spec.S, spec.T
    source_boxes = alpha.source.sorted_boxes
    ring_one = ring.one()
    terms: dict[Mono, object] = {}
    for pi in cf.elements:
        s_values = [S(pi.apply(a)) for a in source_boxes]
        q_values = [q_tab(a) for a in source_boxes]
        for sigma in ce.elements:
            sign = pi.sign * sigma.sign
            exps: dict[tuple, int] = {}
            for a, s_val, q_val in zip(source_boxes, s_values, q_values):
                v = xvar(q_val, s_val, T(sigma.apply(alpha(a))))
                exps[v] = exps.get(v, 0) + 1
            mono = tuple(sorted(exps.items()))
            coeff = ring_one if sign > 0 else ring.neg(ring_one)
            if mono in terms:
                coeff = ring.add(terms[mono], coeff)
            if ring.is_zero(coeff):
                terms.pop(mono, None)
            else:
                terms[mono] = coeff
    return Poly(ring, ambient, terms)


def _unconcat_rows(poly: Poly, r: int, m: int) -> Poly:
    """Inverse of stacking the m matrices on top of each other."""
    s = poly.ambient[1]

    def var_map(v):
        _, _, h, j = v
        return xvar((h - 1) // r + 1, (h - 1) % r + 1, j)

    return poly.rename_variables(var_map, (r, s, m))


def _unconcat_cols(poly: Poly, s: int, m: int) -> Poly:
    """Inverse of placing the m matrices side by side."""
    r = poly.ambient[0]

    def var_map(v):
        _, _, i, w = v
        return xvar((w - 1) // s + 1, i, (w - 1) % s + 1)

    return poly.rename_variables(var_map, (r, s, m))


def row_concat_expansion(spec: TwistedBidetSpec, r: int, pick: str = "min") -> list[tuple[int, BidetSpec]]:
    """Signed bideterminants in the stacked (m*r) x s matrix.

    The representatives run over the left cosets of the twist subgroup inside
    the full source column stabilizer; the shifted row tableau on the target
    shape is a -> S(pi(alpha^{-1}(a))) + (P(a)-1)*r.
    """
    triple = spec.triple
    alpha = triple.alpha
    _check_entry_bound(spec.S, r, "S")
    twist = twist_subgroup(triple.P, triple.Q, alpha)
    cf = column_stabilizer(alpha.source)
    reps = left_coset_reps(cf, twist, pick=pick)
    alpha_inv = alpha.inverse()
    target = alpha.target
    out = []
    for pi in reps:
        entries = {
            a: spec.S(pi.apply(alpha_inv(a))) + (triple.P(a) - 1) * r for a in target.boxes
        }
        shifted = Tableau(target, entries)
        out.append((pi.sign, BidetSpec(target, shifted, spec.T)))
    return out


def column_concat_expansion(spec: TwistedBidetSpec, s: int, pick: str = "min") -> list[tuple[int, BidetSpec]]:
    """Signed bideterminants in the side-by-side r x (m*s) matrix.

    The representatives run over the left cosets of the conjugated twist
    subgroup inside the full target column stabilizer; the shifted column
    tableau on the source shape is a -> T(sigma(alpha(a))) + (Q(a)-1)*s.
    """
    triple = spec.triple
    alpha = triple.alpha
    _check_entry_bound(spec.T, s, "T")
    twist = twist_subgroup(triple.P, triple.Q, alpha)
    conj_group = BoxPermutationGroup(
        alpha.target, [conjugate_by_mapping(tau, alpha) for tau in twist.elements]
    )
    ce = column_stabilizer(alpha.target)
    reps = left_coset_reps(ce, conj_group, pick=pick)
    source = alpha.source
    out = []
    for sigma in reps:
        entries = {
            a: spec.T(sigma.apply(alpha(a))) + (triple.Q(a) - 1) * s for a in source.boxes
        }
        shifted = Tableau(source, entries)
        out.append((sigma.sign, BidetSpec(source, spec.S, shifted)))
    return out


def twisted_bideterminant(
    spec: TwistedBidetSpec, r: int, s: int, ring: Ring = ZZ, pick: str = "min"
) -> Poly:
    """Evaluate through the row-wise concatenation expansion.

    The result lives in the m-matrix variables x(l)_{i,j} with ambient
    (r, s, m); it does not depend on the choice of coset representatives.
    """
    _check_entry_bound(spec.T, s, "T")
    m = spec.m
    total = Poly.zero(ring, (m * r, s, 1))
    for sign, bd in row_concat_expansion(spec, r, pick=pick):
        piece = bideterminant(bd, m * r, s, ring)
        total = total + (piece if sign > 0 else -piece)
    return _unconcat_rows(total, r, m)


def twisted_bideterminant_columnwise(
    spec: TwistedBidetSpec, r: int, s: int, ring: Ring = ZZ, pick: str = "min"
) -> Poly:
    """Same value through the column-wise concatenation; used as a cross-check."""
    _check_entry_bound(spec.S, r, "S")
    m = spec.m
    total = Poly.zero(ring, (r, m * s, 1))
    for sign, bd in column_concat_expansion(spec, s, pick=pick):
        piece = bideterminant(bd, r, m * s, ring)
        total = total + (piece if sign > 0 else -piece)
    return _unconcat_cols(total, s, m)


def ordinary_spec(shape: Diagram, S: Tableau, T: Tableau) -> TwistedBidetSpec:
    """The one-matrix identity-twist spec, whose value is the ordinary bideterminant."""
    const = Tableau(shape, {b: 1 for b in shape.boxes})
    ident = DiagramMapping(shape, Diagram(shape.boxes), {b: b for b in shape.boxes})
    const_target = Tableau(Diagram(shape.boxes), {b: 1 for b in shape.boxes})
    return TwistedBidetSpec(Triple(const_target, const, ident), S, T, 1)
