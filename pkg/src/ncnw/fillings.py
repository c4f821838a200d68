"""01-fillings of staircase shapes and the encodings C, E and f.

Cells use matrix coordinates ``(row, col)`` with rows numbered top to bottom
and ``1 <= col <= row <= order``.  Fillings are stored sparsely as the set of
cells holding a one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .partitions import (
    Arc,
    ArcSet,
    Convention,
    SetPartition,
    arcs,
    partition_from_arcs,
)


class FillingError(ValueError):
    pass


@dataclass(frozen=True)
class TriangularFilling:
    order: int
    ones: frozenset[tuple[int, int]]

    def __post_init__(self):
        for cell in self.ones:
            r, c = cell
            if not 1 <= c <= r <= self.order:
                raise FillingError(f"cell {cell} lies outside the staircase of order {self.order}")

    @classmethod
    def of(cls, order: int, ones: Iterable[tuple[int, int]]) -> TriangularFilling:
        return cls(order, frozenset((int(r), int(c)) for r, c in ones))

    def sorted_ones(self) -> list[tuple[int, int]]:
        return sorted(self.ones)

    def row_col_simple(self) -> bool:
        rows = [r for r, _ in self.ones]
        cols = [c for _, c in self.ones]
        return len(set(rows)) == len(rows) and len(set(cols)) == len(cols)

    def check_simple(self) -> None:
        seen_r: dict[int, tuple[int, int]] = {}
        seen_c: dict[int, tuple[int, int]] = {}
        for cell in sorted(self.ones):
            r, c = cell
            if r in seen_r:
                raise FillingError(f"row {r} holds two ones: {seen_r[r]} and {cell}")
            if c in seen_c:
                raise FillingError(f"column {c} holds two ones: {seen_c[c]} and {cell}")
            seen_r[r] = cell
            seen_c[c] = cell

    def zero_hooks(self) -> list[int]:
        used = {r for r, _ in self.ones} | {c for _, c in self.ones}
        return [j for j in range(1, self.order + 1) if j not in used]

    def nonzero_hooks(self) -> list[int]:
        used = {r for r, _ in self.ones} | {c for _, c in self.ones}
        return sorted(used)

    def to_json(self) -> dict:
        return {"order": self.order, "ones": [list(c) for c in self.sorted_ones()]}

    @classmethod
    def from_json(cls, data: dict) -> TriangularFilling:
        try:
            return cls.of(int(data["order"]), data["ones"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, FillingError):
                raise
            raise FillingError(f"malformed filling JSON: {exc}") from None


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(not isinstance(x, int) or x < 1 for x in self.parts):
            raise FillingError(f"composition parts must be positive integers: {list(self.parts)}")

    @property
    def target(self) -> int:
        return sum(self.parts)

    def partial_sums(self) -> list[int]:
        return list(itertools.accumulate(self.parts))

    def __str__(self) -> str:
        return "".join(map(str, self.parts)) if all(p < 10 for p in self.parts) else repr(list(self.parts))


def _one_based(p: SetPartition) -> SetPartition:
    return p.to_convention(Convention.ONE)


def map_C(p: SetPartition) -> TriangularFilling:
    """Filling of order n for a partition of [n+1]: arc (i, j) -> cell (j-1, i)."""
    p = _one_based(p)
    ones = [(a.right - 1, a.left) for a in arcs(p).arcs if not a.is_loop]
    return TriangularFilling.of(max(p.n - 1, 0), ones)


def inv_C(f: TriangularFilling) -> SetPartition:
    f.check_simple()
    arcset = frozenset(Arc(c, r + 1) for r, c in f.ones)
    return partition_from_arcs(ArcSet(f.order + 1, arcset, Convention.ONE))


def map_E(p: SetPartition) -> TriangularFilling:
    """Filling of order n for a partition of [n]: arc or loop (i, j) -> cell (j, i)."""
    p = _one_based(p)
    return TriangularFilling.of(p.n, [(a.right, a.left) for a in arcs(p).arcs])


def inv_E(f: TriangularFilling) -> SetPartition:
    f.check_simple()
    if f.zero_hooks():
        raise FillingError(f"corner hooks {f.zero_hooks()} are zero; not the image of a partition")
    arcset = frozenset(Arc(c, r) for r, c in f.ones)
    return partition_from_arcs(ArcSet(f.order, arcset, Convention.ONE))


def is_proper_se_chain(cells) -> bool:
    rows = [r for r, _ in cells]
    cols = [c for _, c in cells]
    if any(x >= y for x, y in zip(rows, rows[1:])):
        return False
    if any(x >= y for x, y in zip(cols, cols[1:])):
        return False
    return cols[-1] <= rows[0]


def max_proper_se_chain(f: TriangularFilling) -> int:
    """Longest SE-chain whose bounding rectangle fits in the shape.

    A chain is proper iff its last column does not exceed its first row.
    Fixing the first cell (r1, c1), the rest is a longest SE-chain among
    cells strictly south-east of it with column <= r1.
    """
    cells = sorted(f.ones)
    best = 0
    for idx, (r1, c1) in enumerate(cells):
        rest = [(r, c) for r, c in cells[idx + 1:] if r > r1 and c1 < c <= r1]
        # longest chain strictly increasing in both coordinates
        length = {}
        for cell in rest:
            r, c = cell
            length[cell] = 1 + max(
                (length[o] for o in length if o[0] < r and o[1] < c), default=0
            )
        best = max(best, 1 + max(length.values(), default=0))
    return best


def max_proper_se_chain_bruteforce(f: TriangularFilling) -> int:
    cells = sorted(f.ones)
    best = 0
    for size in range(1, len(cells) + 1):
        if not any(is_proper_se_chain(ch) for ch in itertools.combinations(cells, size)):
            break
        best = size
    return best


@dataclass(frozen=True)
class FillingFlags:
    in_C_class: bool
    in_E_class: bool


def filling_class(f: TriangularFilling, k: int) -> FillingFlags:
    if k < 2:
        raise FillingError(f"k must be at least 2, got {k}")
    in_c = f.row_col_simple() and max_proper_se_chain(f) < k
    return FillingFlags(in_c, in_c and not f.zero_hooks())


def map_f(f: TriangularFilling) -> tuple[Composition, TriangularFilling]:
    """Split off the zero corner hooks: (composition of order+1, compressed filling)."""
    f.check_simple()
    keep = f.nonzero_hooks()
    marks = [0] + keep + [f.order + 1]
    comp = Composition(tuple(b - a for a, b in zip(marks, marks[1:])))
    new_index = {old: new for new, old in enumerate(keep, start=1)}
    ones = [(new_index[r], new_index[c]) for r, c in f.ones]
    return comp, TriangularFilling.of(len(keep), ones)


def inv_f(comp: Composition, e: TriangularFilling) -> TriangularFilling:
    if len(comp.parts) != e.order + 1:
        raise FillingError(
            f"composition has {len(comp.parts)} parts but the filling has order {e.order}; "
            f"expected {e.order + 1} parts"
        )
    e.check_simple()
    if e.zero_hooks():
        raise FillingError(f"filling has zero corner hooks {e.zero_hooks()}")
    sums = comp.partial_sums()
    ones = [(sums[r - 1], sums[c - 1]) for r, c in e.ones]
    return TriangularFilling.of(comp.target - 1, ones)


def iter_simple_fillings(order: int) -> Iterator[TriangularFilling]:
    """All fillings of the staircase with at most one 1 per row and per column."""

    def rec(row: int, used: frozenset[int], ones: tuple):
        if row > order:
            yield TriangularFilling(order, frozenset(ones))
            return
        yield from rec(row + 1, used, ones)
        for c in range(1, row + 1):
            if c not in used:
                yield from rec(row + 1, used | {c}, ones + ((row, c),))

    yield from rec(1, frozenset(), ())


def iter_compositions(total: int, parts: int) -> Iterator[Composition]:
    if total < 1 or parts < 1 or parts > total:
        return
    for cuts in itertools.combinations(range(1, total), parts - 1):
        marks = (0,) + cuts + (total,)
        yield Composition(tuple(b - a for a, b in zip(marks, marks[1:])))
