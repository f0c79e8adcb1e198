"""Partitions, skew Young diagrams, tableaux, and anti-diagonal composites.

Boxes are 1-based (row, col) pairs.  All enumerations are deterministic:
boxes are always visited in reading order (row by row, left to right) and
tableaux are produced in increasing lexicographic order of their reading
word.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import ContainmentError, ShapeMismatch, SizeError

Box = tuple[int, int]


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def part(self, i: int) -> int:
        """Row length in row i (1-based); zero beyond the last row."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def contains(self, inner: "Partition") -> bool:
        return all(self.part(i) >= inner.part(i) for i in range(1, inner.length + 1))

    def boxes(self) -> frozenset[Box]:
        return frozenset(
            (i, j) for i in range(1, self.length + 1) for j in range(1, self.parts[i - 1] + 1)
        )

    def transpose(self) -> "Partition":
        if not self.parts:
            return Partition()
        return Partition(
            tuple(sum(1 for p in self.parts if p >= j) for j in range(1, self.parts[0] + 1))
        )

    def to_json(self) -> list[int]:
        return list(self.parts)

    @staticmethod
    def from_json(data: Iterable[int]) -> "Partition":
        return Partition(tuple(data))


class Diagram:
    """A finite set of boxes in the plane, with row and column structure."""

    def __init__(self, boxes: Iterable[Box]):
        self._boxes = frozenset((int(r), int(c)) for r, c in boxes)
        if any(r < 1 or c < 1 for r, c in self._boxes):
            raise ValueError("boxes must have positive coordinates")

    @property
    def boxes(self) -> frozenset[Box]:
        return self._boxes

    @cached_property
    def sorted_boxes(self) -> tuple[Box, ...]:
        """Boxes in reading order: row by row, left to right."""
        return tuple(sorted(self._boxes))

    @cached_property
    def box_index(self) -> dict[Box, int]:
        return {b: i for i, b in enumerate(self.sorted_boxes)}

    @property
    def size(self) -> int:
        return len(self._boxes)

    @cached_property
    def rows(self) -> list[list[Box]]:
        """Nonempty rows, top to bottom, each sorted by column."""
        by_row: dict[int, list[Box]] = {}
        for b in self.sorted_boxes:
            by_row.setdefault(b[0], []).append(b)
        return [by_row[r] for r in sorted(by_row)]

    @cached_property
    def columns(self) -> list[list[Box]]:
        """Nonempty columns, left to right, each sorted top to bottom."""
        by_col: dict[int, list[Box]] = {}
        for b in self._boxes:
            by_col.setdefault(b[1], []).append(b)
        return [sorted(by_col[c]) for c in sorted(by_col)]

    @cached_property
    def max_row(self) -> int:
        return max((r for r, _ in self._boxes), default=0)

    @cached_property
    def max_col(self) -> int:
        return max((c for _, c in self._boxes), default=0)

    @cached_property
    def row_lengths(self) -> tuple[int, ...]:
        """Box count per row, rows 1..max_row (interior zeros kept)."""
        counts = [0] * self.max_row
        for r, _ in self._boxes:
            counts[r - 1] += 1
        return tuple(counts)

    @cached_property
    def column_lengths(self) -> tuple[int, ...]:
        counts = [0] * self.max_col
        for _, c in self._boxes:
            counts[c - 1] += 1
        return tuple(counts)

    @cached_property
    def row_count(self) -> int:
        """Number of nonempty rows."""
        return len({r for r, _ in self._boxes})

    def transpose(self) -> "Diagram":
        return Diagram((c, r) for r, c in self._boxes)

    def left_neighbor(self, box: Box) -> Box | None:
        """Nearest box in the same row, strictly to the left."""
        row, col = box
        best = None
        for r, c in self._boxes:
            if r == row and c < col and (best is None or c > best[1]):
                best = (r, c)
        return best

    def up_neighbor(self, box: Box) -> Box | None:
        """Nearest box in the same column, strictly above."""
        row, col = box
        best = None
        for r, c in self._boxes:
            if c == col and r < row and (best is None or r > best[0]):
                best = (r, c)
        return best

    def __contains__(self, box: Box) -> bool:
        return box in self._boxes

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Diagram) and self._boxes == other._boxes

    def __hash__(self) -> int:
        return hash(self._boxes)

    def __repr__(self) -> str:
        return f"Diagram({sorted(self._boxes)})"

    def to_json(self) -> dict:
        return {"boxes": [list(b) for b in self.sorted_boxes]}


class SkewDiagram(Diagram):
    """The boxes of an outer partition with those of an inner one removed."""

    def __init__(self, outer: Partition, inner: Partition = Partition()):
        if not outer.contains(inner):
            raise ContainmentError(f"{inner.parts} is not contained in {outer.parts}")
        self.outer = outer
        self.inner = inner
        super().__init__(
            (i, j)
            for i in range(1, outer.length + 1)
            for j in range(inner.part(i) + 1, outer.part(i) + 1)
        )

    def __repr__(self) -> str:
        return f"SkewDiagram({self.outer.parts}/{self.inner.parts})"

    def to_json(self) -> dict:
        return {"outer": self.outer.to_json(), "inner": self.inner.to_json()}

    @staticmethod
    def from_json(data: dict) -> "SkewDiagram":
        return SkewDiagram(Partition.from_json(data["outer"]), Partition.from_json(data.get("inner", [])))


class CompositeDiagram(Diagram):
    """Skew pieces placed anti-diagonally: piece 1 top right, piece m bottom left.

    Piece j keeps its internal row and column positions; its rows are shifted
    down by the total row extent of pieces 1..j-1 and its columns are shifted
    right by the total column extent of pieces j+1..m.  Hence no row or column
    meets two pieces and the row-length tuple of the composite is the
    concatenation of the row-length tuples of the pieces.
    """

    def __init__(self, pieces: list[Diagram]):
        self.pieces = list(pieces)
        m = len(self.pieces)
        row_off = [0] * m
        for j in range(1, m):
            row_off[j] = row_off[j - 1] + self.pieces[j - 1].max_row
        col_off = [0] * m
        for j in range(m - 2, -1, -1):
            col_off[j] = col_off[j + 1] + self.pieces[j + 1].max_col
        self.offsets = [(row_off[j], col_off[j]) for j in range(m)]
        boxes: list[Box] = []
        for piece, (dr, dc) in zip(self.pieces, self.offsets):
            boxes.extend((r + dr, c + dc) for r, c in piece.boxes)
        super().__init__(boxes)

    def __repr__(self) -> str:
        return f"CompositeDiagram({self.pieces})"


def partition_shape(boxes: Iterable[Box]) -> Partition:
    """Partition whose Young diagram is the given box set; error if it is not one."""
    d = Diagram(boxes)
    parts = d.row_lengths
    candidate_ok = all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))
    if not candidate_ok or d.boxes != Partition(tuple(p for p in parts if p > 0) if candidate_ok else ()).boxes:
        raise ShapeMismatch(f"box set is not a Young diagram: {sorted(d.boxes)}")
    return Partition(parts)


class Tableau:
    """A map from the boxes of a diagram to positive integers."""

    def __init__(self, shape: Diagram, entries: dict[Box, int]):
        if set(entries) != shape.boxes:
            raise ShapeMismatch("entries must be defined exactly on the boxes of the shape")
        if any(v < 1 for v in entries.values()):
            raise ValueError("tableau entries must be positive")
        self.shape = shape
        self.entries = dict(entries)
        self._items = tuple(sorted(self.entries.items()))

    @classmethod
    def from_rows(cls, shape: Diagram, rows: list[list[int]]) -> "Tableau":
        """Build from per-row value lists matching the shape's nonempty rows."""
        shape_rows = shape.rows
        if len(rows) != len(shape_rows) or any(len(a) != len(b) for a, b in zip(rows, shape_rows)):
            raise ShapeMismatch("row values do not match the shape")
        entries = {}
        for boxes, values in zip(shape_rows, rows):
            for box, v in zip(boxes, values):
                entries[box] = v
        return cls(shape, entries)

    def __call__(self, box: Box) -> int:
        return self.entries[box]

    @cached_property
    def weight(self) -> tuple[int, ...]:
        """Occurrence counts (1..max entry); empty tuple for the empty tableau."""
        if not self.entries:
            return ()
        top = max(self.entries.values())
        counts = [0] * top
        for v in self.entries.values():
            counts[v - 1] += 1
        return tuple(counts)

    @cached_property
    def reading_word(self) -> tuple[int, ...]:
        """Entries in reading order (the standard enumeration)."""
        return tuple(self.entries[b] for b in self.shape.sorted_boxes)

    def is_ordered(self) -> bool:
        return self._increasing(rows_strict=False, cols_strict=False)

    def is_semistandard(self) -> bool:
        return self._increasing(rows_strict=False, cols_strict=True)

    def is_standard(self) -> bool:
        t = self.shape.size
        if sorted(self.entries.values()) != list(range(1, t + 1)):
            return False
        return self._increasing(rows_strict=True, cols_strict=True)

    def _increasing(self, rows_strict: bool, cols_strict: bool) -> bool:
        for row in self.shape.rows:
            for a, b in zip(row, row[1:]):
                if self.entries[b] < self.entries[a] + (1 if rows_strict else 0):
                    return False
        for col in self.shape.columns:
            for a, b in zip(col, col[1:]):
                if self.entries[b] < self.entries[a] + (1 if cols_strict else 0):
                    return False
        return True

    def piece(self, value: int) -> Diagram:
        """Sub-diagram of boxes holding the given value."""
        return Diagram(b for b, v in self.entries.items() if v == value)

    def up_to(self, value: int) -> Diagram:
        """Sub-diagram of boxes holding values <= the given one."""
        return Diagram(b for b, v in self.entries.items() if v <= value)

    def restrict(self, boxes: Iterable[Box]) -> "Tableau":
        sub = frozenset(boxes)
        return Tableau(Diagram(sub), {b: self.entries[b] for b in sub})

    def shift(self, offset: int) -> "Tableau":
        return Tableau(self.shape, {b: v + offset for b, v in self.entries.items()})

    def max_entry(self) -> int:
        return max(self.entries.values(), default=0)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Tableau) and self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        rows = [",".join(str(self.entries[b]) for b in row) for row in self.shape.rows]
        return "Tableau[" + "/".join(rows) + "]"

    def to_json(self) -> dict:
        return {
            "shape": self.shape.to_json(),
            "entries": [[r, c, v] for (r, c), v in self._items],
        }


def weights_equal(w1: tuple[int, ...], w2: tuple[int, ...]) -> bool:
    """Compare occurrence-count tuples after zero-padding to a common length."""
    n = max(len(w1), len(w2))
    return tuple(w1) + (0,) * (n - len(w1)) == tuple(w2) + (0,) * (n - len(w2))


def pad_weight(w: tuple[int, ...], n: int) -> tuple[int, ...]:
    if len(w) > n and any(v != 0 for v in w[n:]):
        raise SizeError(f"weight {w} does not fit in length {n}")
    return tuple(w[:n]) + (0,) * (n - len(w))


def partitions_of(t: int, max_len: int, max_part: int) -> list[Partition]:
    """All partitions of t with at most max_len parts, each <= max_part,
    in decreasing lexicographic order."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    out: list[Partition] = []

    def rec(remaining: int, slots: int, cap: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(Partition(tuple(prefix)))
            return
        if slots == 0 or cap == 0:
            return
        for p in range(min(cap, remaining), 0, -1):
            if p * slots < remaining:
                break
            prefix.append(p)
            rec(remaining - p, slots - 1, p, prefix)
            prefix.pop()

    rec(t, max_len, max_part, [])
    return out


def skew(outer: Partition, inner: Partition = Partition()) -> SkewDiagram:
    return SkewDiagram(outer, inner)


def canonical_tableau(shape: Diagram) -> Tableau:
    """Every box is labelled by its row index."""
    return Tableau(shape, {b: b[0] for b in shape.boxes})


def anticanonical_tableau(mu: Partition, r: int) -> Tableau:
    """Row i of the partition diagram is filled with r - i + 1."""
    if mu.length > r:
        raise SizeError(f"partition has {mu.length} rows, more than r={r}")
    shape = SkewDiagram(mu)
    return Tableau(shape, {b: r - b[0] + 1 for b in shape.boxes})


def standard_enumeration_tableau(shape: Diagram) -> Tableau:
    """Boxes numbered 1..t in reading order."""
    return Tableau(shape, {b: i + 1 for i, b in enumerate(shape.sorted_boxes)})


def enumerate_tableaux(
    shape: Diagram,
    kind: str,
    max_entry: int | None = None,
    weight: tuple[int, ...] | None = None,
) -> list[Tableau]:
    """All ordered or semistandard tableaux under one constraint.

    Exactly one of max_entry / weight must be given.  Output is sorted by
    increasing reading word.
    """
    if kind not in ("ordered", "semistandard"):
        raise ValueError(f"unknown tableau kind: {kind!r}")
    if (max_entry is None) == (weight is None):
        raise ValueError("exactly one of max_entry and weight is required")
    cols_strict = kind == "semistandard"
    boxes = shape.sorted_boxes
    if weight is not None:
        weight = tuple(weight)
        if sum(weight) != len(boxes):
            return []
        remaining = list(weight)
        top = len(weight)
    else:
        remaining = None
        top = max_entry if max_entry is not None else 0
    left = [shape.left_neighbor(b) for b in boxes]
    up = [shape.up_neighbor(b) for b in boxes]
    entries: dict[Box, int] = {}
    out: list[Tableau] = []

    def rec(pos: int) -> None:
        if pos == len(boxes):
            out.append(Tableau(shape, dict(entries)))
            return
        box = boxes[pos]
        lo = 1
        if left[pos] is not None:
            lo = max(lo, entries[left[pos]])
        if up[pos] is not None:
            lo = max(lo, entries[up[pos]] + (1 if cols_strict else 0))
        for v in range(lo, top + 1):
            if remaining is not None:
                if remaining[v - 1] == 0:
                    continue
                remaining[v - 1] -= 1
            entries[box] = v
            rec(pos + 1)
            del entries[box]
            if remaining is not None:
                remaining[v - 1] += 1

    rec(0)
    return out


def count_semistandard(shape: Diagram, max_entry: int) -> int:
    return len(enumerate_tableaux(shape, "semistandard", max_entry=max_entry))


def composite_diagram(pieces: list[Diagram]) -> CompositeDiagram:
    return CompositeDiagram(pieces)
