"""Diagram mappings, box permutation groups, and labelled triples.

A diagram mapping is a bijection between the box sets of two equal-size
diagrams.  Specialness is two-sided order preservation between the
componentwise order on boxes and the row-major-right-to-left linear order;
special mappings are the canonical representatives used to label basis
elements.  Triples (P, Q, alpha) are enumerated in the fixed decreasing
order that makes the layer spans of the degree filtration nested and stable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    CapExceeded,
    CompatibilityError,
    DegreeMismatch,
    NotSubgroup,
    ShapeMismatch,
    SizeMismatch,
    WeightMismatch,
)
from .tableaux import (
    Box,
    Diagram,
    Partition,
    SkewDiagram,
    Tableau,
    canonical_tableau,
    enumerate_tableaux,
    pad_weight,
    partitions_of,
    weights_equal,
)

GROUP_ORDER_CAP = 10**7


def leq_order(a: Box, b: Box) -> bool:
    """Componentwise partial order on boxes."""
    return a[0] <= b[0] and a[1] <= b[1]


def prec_order(a: Box, b: Box) -> bool:
    """Linear order: higher row first, and right to left within a row."""
    return a[0] < b[0] or (a[0] == b[0] and a[1] >= b[1])


class DiagramMapping:
    """A bijection between the boxes of two equal-size diagrams."""

    def __init__(self, source: Diagram, target: Diagram, mapping: dict[Box, Box]):
        if source.size != target.size:
            raise SizeMismatch(f"|source|={source.size} but |target|={target.size}")
        if set(mapping) != source.boxes or set(mapping.values()) != target.boxes:
            raise CompatibilityError("mapping is not a bijection between the box sets")
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        self._items = tuple(sorted(self.mapping.items()))

    def __call__(self, box: Box) -> Box:
        return self.mapping[box]

    def inverse(self) -> "DiagramMapping":
        return DiagramMapping(self.target, self.source, {v: k for k, v in self.mapping.items()})

    def restrict(self, boxes) -> "DiagramMapping":
        sub = frozenset(boxes)
        return DiagramMapping(
            Diagram(sub), Diagram(self.mapping[b] for b in sub), {b: self.mapping[b] for b in sub}
        )

    def induced_tableau(self) -> Tableau:
        """Pull the canonical tableau of the target back to the source."""
        return Tableau(self.source, {b: self.mapping[b][0] for b in self.source.boxes})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DiagramMapping) and self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        return f"DiagramMapping({self._items})"

    def to_json(self) -> list[list[int]]:
        return [[a[0], a[1], b[0], b[1]] for a, b in self._items]


def is_admissible(alpha: DiagramMapping) -> bool:
    """Whenever alpha(b) is strictly below alpha(a) in the same target column,
    b must lie in a strictly lower row than a and in a column <= a's column."""
    pairs = list(alpha.mapping.items())
    for (a, ia), (b, ib) in itertools.permutations(pairs, 2):
        if ib[1] == ia[1] and ib[0] > ia[0]:
            if not (b[0] > a[0] and b[1] <= a[1]):
                return False
    return True


def _order_preserving(mapping: dict[Box, Box]) -> bool:
    for a, b in itertools.permutations(mapping, 2):
        if leq_order(a, b) and not prec_order(mapping[a], mapping[b]):
            return False
    return True


def is_special(alpha: DiagramMapping) -> bool:
    """Order preservation in both directions between the box orders."""
    inv = {v: k for k, v in alpha.mapping.items()}
    return _order_preserving(alpha.mapping) and _order_preserving(inv)


def _search_mappings(source: Diagram, target: Diagram, row_fiber: Tableau | None,
                     special: bool, first_only: bool) -> list[dict[Box, Box]]:
    """Backtracking core shared by the mapping enumerations.

    Images are assigned to source boxes in reading order; candidate target
    boxes are tried in reading order, so the output is deterministic.  When
    row_fiber is given, the image of box a is restricted to target row
    row_fiber(a).  With special=True the two-sided order conditions are
    enforced, otherwise admissibility.
    """
    boxes = source.sorted_boxes
    tboxes = target.sorted_boxes
    if row_fiber is not None:
        candidates = [tuple(b for b in tboxes if b[0] == row_fiber(a)) for a in boxes]
    else:
        candidates = [tboxes] * len(boxes)
    assigned: dict[Box, Box] = {}
    used: set[Box] = set()
    out: list[dict[Box, Box]] = []

    def compatible(a: Box, ia: Box) -> bool:
        for b, ib in assigned.items():
            if special:
                if leq_order(a, b) and not prec_order(ia, ib):
                    return False
                if leq_order(b, a) and not prec_order(ib, ia):
                    return False
                if leq_order(ia, ib) and not prec_order(a, b):
                    return False
                if leq_order(ib, ia) and not prec_order(b, a):
                    return False
            else:
                if ia[1] == ib[1]:
                    if ib[0] > ia[0] and not (b[0] > a[0] and b[1] <= a[1]):
                        return False
                    if ia[0] > ib[0] and not (a[0] > b[0] and a[1] <= b[1]):
                        return False
        return True

    def rec(pos: int) -> bool:
        if pos == len(boxes):
            out.append(dict(assigned))
            return first_only
        a = boxes[pos]
        for ia in candidates[pos]:
            if ia in used or not compatible(a, ia):
                continue
            assigned[a] = ia
            used.add(ia)
            done = rec(pos + 1)
            del assigned[a]
            used.remove(ia)
            if done:
                return True
        return False

    rec(0)
    return out


def enumerate_special_mappings(source: Diagram, target: Diagram) -> list[DiagramMapping]:
    """All special mappings source -> target, in deterministic backtracking order."""
    if source.size != target.size:
        raise SizeMismatch(f"|source|={source.size} but |target|={target.size}")
    return [
        DiagramMapping(source, target, m)
        for m in _search_mappings(source, target, None, special=True, first_only=False)
    ]


def admissible_representative(tab: Tableau, target: Diagram) -> DiagramMapping | None:
    """The unique special representative of tab when it is target-special, else None.

    tab must be a tableau on some shape whose weight equals the row-length
    tuple of the target diagram.
    """
    if not weights_equal(tab.weight, target.row_lengths):
        raise WeightMismatch(
            f"tableau weight {tab.weight} differs from target row lengths {target.row_lengths}"
        )
    if not tab.is_semistandard():
        return None
    found = _search_mappings(tab.shape, target, tab, special=True, first_only=True)
    if not found:
        return None
    return DiagramMapping(tab.shape, target, found[0])


def admissible_representatives(tab: Tableau, target: Diagram) -> list[DiagramMapping]:
    """All admissible representatives of a tableau (hook for basis-independence checks)."""
    if not weights_equal(tab.weight, target.row_lengths):
        raise WeightMismatch(
            f"tableau weight {tab.weight} differs from target row lengths {target.row_lengths}"
        )
    return [
        DiagramMapping(tab.shape, target, m)
        for m in _search_mappings(tab.shape, target, tab, special=False, first_only=False)
    ]


class BoxPermutation:
    """A permutation of the boxes of a diagram, stored on reading-order indices."""

    __slots__ = ("diagram", "images")

    def __init__(self, diagram: Diagram, images: tuple[int, ...]):
        self.diagram = diagram
        self.images = images

    @classmethod
    def identity(cls, diagram: Diagram) -> "BoxPermutation":
        return cls(diagram, tuple(range(diagram.size)))

    @classmethod
    def from_box_map(cls, diagram: Diagram, mapping: dict[Box, Box]) -> "BoxPermutation":
        idx = diagram.box_index
        images = list(range(diagram.size))
        for a, b in mapping.items():
            images[idx[a]] = idx[b]
        return cls(diagram, tuple(images))

    def apply(self, box: Box) -> Box:
        return self.diagram.sorted_boxes[self.images[self.diagram.box_index[box]]]

    def compose(self, other: "BoxPermutation") -> "BoxPermutation":
        """self after other: (self * other)(x) = self(other(x))."""
        return BoxPermutation(self.diagram, tuple(self.images[i] for i in other.images))

    def inverse(self) -> "BoxPermutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return BoxPermutation(self.diagram, tuple(inv))

    @property
    def sign(self) -> int:
        seen = [False] * len(self.images)
        sign = 1
        for start in range(len(self.images)):
            if seen[start]:
                continue
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = self.images[i]
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BoxPermutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"BoxPermutation{self.images}"


class BoxPermutationGroup:
    """A group of box permutations of one diagram, given by its element list."""

    def __init__(self, diagram: Diagram, elements: list[BoxPermutation],
                 generators: list[BoxPermutation] | None = None):
        self.diagram = diagram
        self.elements = sorted(elements, key=lambda p: p.images)
        self.generators = generators or []

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _image_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(p.images for p in self.elements)

    def __contains__(self, perm: BoxPermutation) -> bool:
        return perm.images in self._image_set

    def __iter__(self):
        return iter(self.elements)


def column_stabilizer(diagram: Diagram) -> BoxPermutationGroup:
    """All box permutations preserving each column setwise."""
    order = 1
    for col in diagram.columns:
        for k in range(2, len(col) + 1):
            order *= k
    if order > GROUP_ORDER_CAP:
        raise CapExceeded(f"column stabilizer order {order} exceeds cap {GROUP_ORDER_CAP}")
    idx = diagram.box_index
    column_indices = [[idx[b] for b in col] for col in diagram.columns]
    elements = []
    per_column = [list(itertools.permutations(ci)) for ci in column_indices]
    for combo in itertools.product(*per_column):
        images = list(range(diagram.size))
        for ci, perm in zip(column_indices, combo):
            for src, dst in zip(ci, perm):
                images[src] = dst
        elements.append(BoxPermutation(diagram, tuple(images)))
    generators = []
    for col in diagram.columns:
        for a, b in zip(col, col[1:]):
            images = list(range(diagram.size))
            images[idx[a]], images[idx[b]] = idx[b], idx[a]
            generators.append(BoxPermutation(diagram, tuple(images)))
    return BoxPermutationGroup(diagram, elements, generators)


def stabilizer_of_tableau(group: BoxPermutationGroup, tab: Tableau) -> BoxPermutationGroup:
    """Subgroup of permutations pi with tab(pi(a)) = tab(a) for all boxes."""
    if tab.shape.boxes != group.diagram.boxes:
        raise ShapeMismatch("tableau shape differs from the group's diagram")
    boxes = group.diagram.sorted_boxes
    values = [tab(b) for b in boxes]
    kept = [p for p in group.elements if all(values[p.images[i]] == values[i] for i in range(len(boxes)))]
    return BoxPermutationGroup(group.diagram, kept)


def conjugate_by_mapping(perm: BoxPermutation, alpha: DiagramMapping) -> BoxPermutation:
    """alpha o perm o alpha^{-1} as a permutation of the target diagram."""
    src_idx = alpha.source.box_index
    tgt_boxes = alpha.target.sorted_boxes
    tgt_idx = alpha.target.box_index
    alpha_idx = [tgt_idx[alpha.mapping[b]] for b in alpha.source.sorted_boxes]
    inv_alpha_idx = [0] * len(alpha_idx)
    for i, j in enumerate(alpha_idx):
        inv_alpha_idx[j] = i
    images = tuple(alpha_idx[perm.images[inv_alpha_idx[e]]] for e in range(len(tgt_boxes)))
    return BoxPermutation(alpha.target, images)


def twist_subgroup(p_tab: Tableau, q_tab: Tableau, alpha: DiagramMapping) -> BoxPermutationGroup:
    """Subgroup of the source column stabilizer fixing Q whose conjugate
    under alpha lies in the target column stabilizer and fixes P."""
    if any(p_tab(alpha(a)) != q_tab(a) for a in alpha.source.boxes):
        raise CompatibilityError("P o alpha != Q")
    cf = column_stabilizer(alpha.source)
    cfq = stabilizer_of_tableau(cf, q_tab)
    tgt = alpha.target
    col_of = {b: b[1] for b in tgt.boxes}
    kept = []
    for tau in cfq.elements:
        rho = conjugate_by_mapping(tau, alpha)
        ok = True
        for b in tgt.sorted_boxes:
            image = rho.apply(b)
            if col_of[image] != col_of[b] or p_tab(image) != p_tab(b):
                ok = False
                break
        if ok:
            kept.append(tau)
    return BoxPermutationGroup(alpha.source, kept)


def left_coset_reps(group: BoxPermutationGroup, subgroup: BoxPermutationGroup,
                    pick: str = "min") -> list[BoxPermutation]:
    """One representative per left coset g*H, the minimal (or maximal)
    element of the coset in the lexicographic order on image tuples."""
    for h in subgroup.elements:
        if h not in group:
            raise NotSubgroup("subgroup element not contained in the ambient group")
    reverse = pick == "max"
    ordered = sorted(group.elements, key=lambda p: p.images, reverse=reverse)
    covered: set[tuple[int, ...]] = set()
    reps = []
    for g in ordered:
        if g.images in covered:
            continue
        reps.append(g)
        for h in subgroup.elements:
            covered.add(g.compose(h).images)
    return reps


@dataclass(frozen=True)
class Triple:
    """Labelling datum of a basis element or filtration layer.

    P is a tableau on the target shape, Q on the source shape, both of the
    same weight, and alpha is a bijection source -> target mapping each level
    set of Q onto the corresponding level set of P.
    """

    P: Tableau
    Q: Tableau
    alpha: DiagramMapping

    def __post_init__(self) -> None:
        if self.alpha.source.boxes != self.Q.shape.boxes or self.alpha.target.boxes != self.P.shape.boxes:
            raise CompatibilityError("alpha must map Q's shape onto P's shape")
        if any(self.P(self.alpha(a)) != self.Q(a) for a in self.alpha.source.boxes):
            raise CompatibilityError("P o alpha != Q")

    def restriction(self, i: int) -> DiagramMapping:
        """The piece of alpha between the level-i boxes of Q and of P."""
        return self.alpha.restrict(self.Q.piece(i).boxes)

    def to_json(self) -> dict:
        return {"P": self.P.to_json(), "Q": self.Q.to_json(), "alpha": self.alpha.to_json()}


def validate_triple(triple: Triple, m: int) -> None:
    """Check the canonical-triple invariants: each piece mapping is admissible
    with a special semistandard induced tableau."""
    if not weights_equal(triple.P.weight, triple.Q.weight):
        raise CompatibilityError("P and Q must have equal weight")
    for i in range(1, m + 1):
        piece = triple.restriction(i)
        if not is_admissible(piece):
            raise CompatibilityError(f"piece {i} of alpha is not admissible")
        induced = piece.induced_tableau()
        if not induced.is_semistandard():
            raise CompatibilityError(f"piece {i} does not induce a semistandard tableau")


_special_cache: dict[tuple[frozenset, frozenset], list[dict[Box, Box]]] = {}


def _special_mapping_dicts(source: Diagram, target: Diagram) -> list[dict[Box, Box]]:
    key = (source.boxes, target.boxes)
    if key not in _special_cache:
        _special_cache[key] = _search_mappings(source, target, None, special=True, first_only=False)
    return _special_cache[key]


def _triple_sort_key_parts(triple: Triple, m: int):
    """The two comparison keys of the fixed enumeration order.

    P's are compared through the tuple of partitions of boxes with values
    <= m-i for i = 0..m-1 (lexicographically, partitions lexicographically).
    For equal P, pairs (Q, alpha) are compared through the reading word of
    the pieced tableau whose level-i part is the induced tableau of piece i
    shifted by the total row count of the earlier level sets of P; a
    lexicographically smaller word means a larger triple.
    """
    p_key = []
    for i in range(m):
        sub = triple.P.up_to(m - i)
        p_key.append(sub.row_lengths)
    shifts = [0] * (m + 1)
    for i in range(1, m + 1):
        shifts[i] = shifts[i - 1] + triple.P.piece(i).row_count
    word = tuple(
        triple.alpha(a)[0] + shifts[triple.Q(a) - 1] for a in triple.Q.shape.sorted_boxes
    )
    return tuple(p_key), word


def triple_sort_key(triple: Triple, m: int):
    """Sort key putting triples in the fixed decreasing enumeration order."""
    p_key, word = _triple_sort_key_parts(triple, m)
    # Trailing 0 so that e.g. (2,1) compares above (2) as zero-padded tuples.
    neg_p = tuple(tuple(-x for x in part) + (0,) for part in p_key)
    guard = (
        triple.P.reading_word,
        triple.Q.reading_word,
        tuple(sorted(triple.Q.shape.boxes)),
        triple.alpha._items,
    )
    return (neg_p, word, guard)


def enumerate_triples(
    r: int,
    s: int,
    m: int,
    mu: Partition,
    lam: Partition,
    nu: tuple[int, ...],
    representative: str = "special",
) -> list[Triple]:
    """All triples (P, Q, alpha) for the given shapes and multidegree,
    in the fixed decreasing enumeration order.

    P runs over ordered tableaux of shape lam and weight nu, Q over ordered
    tableaux of shape mu and weight nu, and alpha is assembled from one
    representative per piece: the unique special one by default, or the one
    selected by a callable representative(induced_tableau, target_piece).
    """
    nu = tuple(int(v) for v in nu)
    if len(nu) != m:
        raise DegreeMismatch(f"nu has length {len(nu)}, expected m={m}")
    if mu.size != lam.size or mu.size != sum(nu):
        raise DegreeMismatch(
            f"|mu|={mu.size}, |lam|={lam.size}, |nu|={sum(nu)} must all agree"
        )
    if mu.length > r:
        raise DegreeMismatch(f"l(mu)={mu.length} exceeds r={r}")
    if lam.length > s:
        raise DegreeMismatch(f"l(lam)={lam.length} exceeds s={s}")
    lam_diag = SkewDiagram(lam)
    mu_diag = SkewDiagram(mu)
    triples: list[Triple] = []
    for p_tab in enumerate_tableaux(lam_diag, "ordered", weight=nu):
        p_pieces = [p_tab.piece(i) for i in range(1, m + 1)]
        for q_tab in enumerate_tableaux(mu_diag, "ordered", weight=nu):
            q_pieces = [q_tab.piece(i) for i in range(1, m + 1)]
            per_piece: list[list[dict[Box, Box]]] = []
            for fp, ep in zip(q_pieces, p_pieces):
                choices = _special_mapping_dicts(fp, ep)
                if representative != "special":
                    alt = []
                    for d in choices:
                        induced = DiagramMapping(fp, ep, d).induced_tableau()
                        alt.append(representative(induced, ep).mapping)
                    choices = alt
                per_piece.append(choices)
                if not choices:
                    break
            else:
                for combo in itertools.product(*per_piece):
                    full: dict[Box, Box] = {}
                    for d in combo:
                        full.update(d)
                    alpha = DiagramMapping(mu_diag, lam_diag, full)
                    triples.append(Triple(p_tab, q_tab, alpha))
    triples.sort(key=lambda t: triple_sort_key(t, m))
    return triples
