"""Set partitions, arc diagrams and crossing/nesting detection.

A partition is stored with an explicit indexing convention: ``ONE`` for the
ground set ``{1, ..., n}`` and ``ZERO`` for ``{0, ..., n-1}``.  Arcs join
consecutive elements of a block; a singleton block carries a loop ``(i, i)``.
"""

from __future__ import annotations

import enum
import itertools
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence


class PartitionError(ValueError):
    """Raised for malformed partitions, arc sets and diagrams."""


class Convention(str, enum.Enum):
    ZERO = "zero"
    ONE = "one"

    @property
    def offset(self) -> int:
        return 0 if self is Convention.ZERO else 1


class Mode(str, enum.Enum):
    CROSSING = "crossing"
    NESTING = "nesting"


class Kind(str, enum.Enum):
    STRICT = "strict"
    WEAK = "weak"
    ENHANCED = "enhanced"


class Arc(NamedTuple):
    left: int
    right: int

    @property
    def is_loop(self) -> bool:
        return self.left == self.right


@dataclass(frozen=True)
class SetPartition:
    n: int
    blocks: tuple[tuple[int, ...], ...]
    convention: Convention = Convention.ONE

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def ground(self) -> range:
        lo = self.convention.offset
        return range(lo, lo + self.n)

    def block_of(self, x: int) -> tuple[int, ...]:
        for b in self.blocks:
            if x in b:
                return b
        raise PartitionError(f"{x} is not in the ground set")

    def to_convention(self, convention: Convention) -> SetPartition:
        shift = convention.offset - self.convention.offset
        if shift == 0:
            return self
        blocks = tuple(tuple(x + shift for x in b) for b in self.blocks)
        return SetPartition(self.n, blocks, Convention(convention))

    def to_json(self) -> dict:
        return {
            "convention": self.convention.value,
            "n": self.n,
            "blocks": [list(b) for b in self.blocks],
        }

    @classmethod
    def from_json(cls, data: dict) -> SetPartition:
        try:
            convention = Convention(data.get("convention", "one"))
            blocks = data["blocks"]
            n = data.get("n")
        except (KeyError, ValueError, AttributeError) as exc:
            raise PartitionError(f"malformed partition JSON: {exc}") from None
        if n is None:
            n = sum(len(b) for b in blocks)
        return make_partition(n, blocks, convention)

    def __str__(self) -> str:
        inner = ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return "{" + inner + "}"


def make_partition(
    n: int,
    blocks: Iterable[Iterable[int]],
    convention: Convention | str = Convention.ONE,
) -> SetPartition:
    """Validate and canonicalize a partition of the ground set of size ``n``."""
    convention = Convention(convention)
    if not isinstance(n, int) or n < 0:
        raise PartitionError(f"ground-set size must be a nonnegative integer, got {n!r}")
    lo = convention.offset
    hi = lo + n
    seen: dict[int, tuple[int, ...]] = {}
    canon = []
    for raw in blocks:
        block = tuple(sorted(raw))
        if not block:
            raise PartitionError("empty block")
        for x in block:
            if not isinstance(x, int) or not lo <= x < hi:
                raise PartitionError(
                    f"block {list(block)}: element {x!r} outside ground set [{lo}, {hi - 1}]"
                )
            if x in seen:
                raise PartitionError(
                    f"block {list(block)}: element {x} repeated (also in {list(seen[x])})"
                )
            seen[x] = block
        canon.append(block)
    if len(seen) != n:
        missing = sorted(set(range(lo, hi)) - seen.keys())
        raise PartitionError(f"elements {missing} are not covered by any block")
    canon.sort()
    return SetPartition(n, tuple(canon), convention)


def from_rgs(rgs: Sequence[int], convention: Convention = Convention.ONE) -> SetPartition:
    """Partition encoded by a restricted growth string (one label per element)."""
    lo = convention.offset
    groups: list[list[int]] = []
    for pos, label in enumerate(rgs):
        if label == len(groups):
            groups.append([])
        groups[label].append(pos + lo)
    return SetPartition(len(rgs), tuple(tuple(g) for g in groups), convention)


def to_rgs(p: SetPartition) -> tuple[int, ...]:
    lo = p.convention.offset
    out = [0] * p.n
    for label, block in enumerate(p.blocks):
        for x in block:
            out[x - lo] = label
    return tuple(out)


@dataclass(frozen=True)
class ArcSet:
    n: int
    arcs: frozenset[Arc]
    convention: Convention = Convention.ONE

    def sorted(self) -> list[Arc]:
        return sorted(self.arcs)

    def nonloops(self) -> list[Arc]:
        return sorted(a for a in self.arcs if not a.is_loop)

    def to_json(self) -> dict:
        return {
            "convention": self.convention.value,
            "n": self.n,
            "arcs": [list(a) for a in self.sorted()],
        }

    @classmethod
    def from_json(cls, data: dict) -> ArcSet:
        try:
            convention = Convention(data.get("convention", "one"))
            arcs = frozenset(Arc(int(l), int(r)) for l, r in data["arcs"])
            return cls(int(data["n"]), arcs, convention)
        except (KeyError, ValueError, TypeError) as exc:
            raise PartitionError(f"malformed arc-set JSON: {exc}") from None


def block_arcs(blocks: Iterable[Sequence[int]]) -> list[Arc]:
    out = []
    for b in blocks:
        if len(b) == 1:
            out.append(Arc(b[0], b[0]))
        else:
            out.extend(Arc(x, y) for x, y in zip(b, b[1:]))
    return out


def arcs(p: SetPartition) -> ArcSet:
    return ArcSet(p.n, frozenset(block_arcs(p.blocks)), p.convention)


def validate_arcset(a: ArcSet) -> None:
    lo = a.convention.offset
    hi = lo + a.n
    outgoing: dict[int, Arc] = {}
    incoming: dict[int, Arc] = {}
    loops = set()
    for arc in a.arcs:
        l, r = arc
        if not (lo <= l <= r < hi):
            raise PartitionError(f"arc {tuple(arc)} is not a valid arc on [{lo}, {hi - 1}]")
        if arc.is_loop:
            loops.add(l)
            continue
        if l in outgoing:
            raise PartitionError(f"node {l} has two outgoing arcs {tuple(outgoing[l])} and {tuple(arc)}")
        if r in incoming:
            raise PartitionError(f"node {r} has two incoming arcs {tuple(incoming[r])} and {tuple(arc)}")
        outgoing[l] = arc
        incoming[r] = arc
    for x in loops:
        if x in outgoing or x in incoming:
            raise PartitionError(f"loop on node {x}, which has other incident arcs")


def partition_from_arcs(a: ArcSet) -> SetPartition:
    """Blocks are the connected components of the arc graph."""
    validate_arcset(a)
    lo = a.convention.offset
    nxt = {arc.left: arc.right for arc in a.arcs if not arc.is_loop}
    has_prev = {arc.right for arc in a.arcs if not arc.is_loop}
    blocks = []
    for x in range(lo, lo + a.n):
        if x in has_prev:
            continue
        block = [x]
        while block[-1] in nxt:
            block.append(nxt[block[-1]])
        blocks.append(tuple(block))
    return SetPartition(a.n, tuple(blocks), a.convention)


def reflect(p: SetPartition) -> SetPartition:
    """Image under i -> (max + min) - i of the ground set."""
    lo = p.convention.offset
    top = 2 * lo + p.n - 1
    return make_partition(p.n, [[top - x for x in b] for b in p.blocks], p.convention)


# ---------------------------------------------------------------------------
# chains of arcs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrossingWitness:
    mode: Mode
    kind: Kind
    arcs: tuple[Arc, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "mode": self.mode.value,
            "kind": self.kind.value,
            "arcs": [list(a) for a in self.arcs],
        }


def is_chain(chain: Sequence[Arc], mode: Mode, kind: Kind) -> bool:
    """Check the defining inequalities for arcs listed by increasing left end.

    ``kind`` is STRICT or WEAK here; weak chains need at least two arcs.
    """
    k = len(chain)
    if k == 0:
        return False
    lefts = [a.left for a in chain]
    rights = [a.right for a in chain]
    if any(x >= y for x, y in zip(lefts, lefts[1:])):
        return False
    if mode is Mode.CROSSING:
        if any(x >= y for x, y in zip(rights, rights[1:])):
            return False
        pivot = rights[0]
    else:
        if any(x <= y for x, y in zip(rights, rights[1:])):
            return False
        pivot = rights[-1]
    if kind is Kind.STRICT:
        return lefts[-1] < pivot
    return k >= 2 and lefts[-1] == pivot


def _kinds(kind: Kind) -> tuple[Kind, ...]:
    return (Kind.STRICT, Kind.WEAK) if kind is Kind.ENHANCED else (kind,)


def max_chain_bruteforce(
    arcset: Iterable[Arc], mode: Mode, kind: Kind
) -> tuple[int, CrossingWitness | None]:
    """Reference search over subsets of arcs, by increasing size.

    Chains of every mode and kind are closed under deleting a middle arc, and
    a weak chain of size s contains a strict chain of size s - 1, so the
    search stops at the first size with no chain at all.  Weak-only chains
    start at size 2, so for WEAK every size is tried.
    """
    pool = sorted(arcset)
    best: tuple[int, CrossingWitness | None] = (0, None)
    for size in range(1, len(pool) + 1):
        found = None
        for combo in itertools.combinations(pool, size):
            for kd in _kinds(kind):
                if is_chain(combo, mode, kd):
                    found = CrossingWitness(mode, kd, tuple(combo))
                    break
            if found:
                break
        if found is None:
            if kind is Kind.WEAK:
                continue
            break
        best = (size, found)
    return best


def _lis(seq: Iterable[int]) -> int:
    tails: list[int] = []
    for x in seq:
        pos = bisect_left(tails, x)
        if pos == len(tails):
            tails.append(x)
        else:
            tails[pos] = x
    return len(tails)


def _covering(nonloops: Sequence[Arc], point: float) -> list[Arc]:
    return [a for a in nonloops if a.left < point < a.right]


def chain_sizes(arc_list: Iterable[Arc]) -> tuple[int, int, int, int]:
    """Maximal (strict crossing, enhanced crossing, strict nesting, enhanced nesting).

    Every strict chain covers the gap just right of its last left end, and
    arcs covering one common point form a crossing (nesting) exactly when
    their right ends increase (decrease) with the left ends.  So the maxima
    are longest monotone subsequences of the covering arcs, point by point.
    Weak chains are anchored at their shared node.
    """
    nonloops = []
    loops = []
    ending: dict[int, int] = {}
    starting: dict[int, int] = {}
    for a in arc_list:
        if a.left == a.right:
            loops.append(a.left)
        else:
            nonloops.append(a)
            ending[a.right] = a.left
            starting[a.left] = a.right
    if not nonloops:
        return 0, 0, 0, 0
    nonloops.sort()
    cross = nest = 0
    for a in nonloops:
        cov = [b.right for b in nonloops if b.left <= a.left < b.right]
        cross = max(cross, _lis(cov))
        nest = max(nest, _lis(-r for r in cov))
    enh_cross = cross
    for c, first_left in ending.items():
        last_right = starting.get(c)
        if last_right is None:
            continue
        middle = [b.right for b in nonloops if first_left < b.left < c < b.right < last_right]
        enh_cross = max(enh_cross, 2 + _lis(middle))
    enh_nest = nest
    for c in loops:
        cov = [-b.right for b in nonloops if b.left < c < b.right]
        if cov:
            enh_nest = max(enh_nest, 1 + _lis(cov))
    return cross, enh_cross, nest, enh_nest


def iter_chains(pool: Iterable[Arc], k: int, mode: Mode, kind: Kind):
    """Yield every k-chain of the given mode/kind, arcs by increasing left end."""
    arcs_sorted = sorted(pool)
    kinds = _kinds(kind)

    def extend(start: int, chain: list[Arc]):
        if len(chain) == k:
            for kd in kinds:
                if is_chain(chain, mode, kd):
                    yield tuple(chain)
            return
        for idx in range(start, len(arcs_sorted)):
            a = arcs_sorted[idx]
            if chain:
                prev = chain[-1]
                if a.left == prev.left:
                    continue
                if mode is Mode.CROSSING:
                    if a.right <= prev.right or a.left > chain[0].right:
                        continue
                elif a.right >= prev.right:
                    continue
            yield from extend(idx + 1, chain + [a])

    if k >= 1:
        yield from extend(0, [])


def max_chain(
    a: ArcSet | Iterable[Arc], mode: Mode, kind: Kind
) -> tuple[int, CrossingWitness | None]:
    """Largest chain of the given mode/kind with one witness (ENHANCED = strict or weak)."""
    pool = a.arcs if isinstance(a, ArcSet) else list(a)
    sizes = chain_sizes(pool)
    idx = (0 if mode is Mode.CROSSING else 2) + (0 if kind is Kind.STRICT else 1)
    size = sizes[idx]
    if kind is Kind.WEAK:
        # weak-only chains: the enhanced size is an upper bound
        for s in range(size, 1, -1):
            for chain in iter_chains(pool, s, mode, Kind.WEAK):
                return s, CrossingWitness(mode, Kind.WEAK, chain)
        return 0, None
    if size == 0:
        return 0, None
    for kd in _kinds(kind):
        for chain in iter_chains(pool, size, mode, kd):
            return size, CrossingWitness(mode, kd, chain)
    raise AssertionError(f"no witness found for a chain of size {size}")  # pragma: no cover


# ---------------------------------------------------------------------------
# colored diagrams (zero-based)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ColoredDiagram:
    """Arc diagram of a zero-based partition with the block of 0 colored red."""

    arcs: ArcSet
    red_block: tuple[int, ...]

    @classmethod
    def of(cls, p: SetPartition) -> ColoredDiagram:
        if p.convention is not Convention.ZERO:
            raise PartitionError("colored diagrams need a zero-based partition")
        red = p.blocks[0] if p.n else ()
        return cls(arcs(p), red)

    @classmethod
    def from_arcs(cls, arc_list: Iterable[Arc], n: int) -> ColoredDiagram:
        """Rebuild from raw arcs; loops of singletons are normalized and red is recomputed."""
        nonloops = frozenset(Arc(*a) for a in arc_list if a[0] != a[1])
        p = partition_from_arcs(ArcSet(n, nonloops, Convention.ZERO))
        return cls.of(p)

    @property
    def n(self) -> int:
        return self.arcs.n

    def partition(self) -> SetPartition:
        return partition_from_arcs(self.arcs)

    def is_red_arc(self, a: Arc) -> bool:
        return a.left in self.red_set

    @property
    def red_set(self) -> frozenset[int]:
        return frozenset(self.red_block)

    def black_arcs(self) -> list[Arc]:
        red = self.red_set
        return sorted(a for a in self.arcs.arcs if a.left not in red)

    def red_arcs(self) -> list[Arc]:
        red = self.red_set
        return sorted(a for a in self.arcs.arcs if a.left in red and not a.is_loop)


def black_chain_sizes(p: SetPartition) -> tuple[int, int]:
    """(strict, enhanced) maximal crossing sizes among arcs not in the block of 0."""
    sizes = chain_sizes(block_arcs(p.blocks[1:]))
    return sizes[0], sizes[1]


@dataclass(frozen=True)
class ClassFlags:
    in_NC: bool
    in_NW: bool
    in_BNW: bool | None


def class_flags(p: SetPartition, k: int) -> ClassFlags:
    if k < 2:
        raise PartitionError(f"k must be at least 2, got {k}")
    cross, enh, _, _ = chain_sizes(block_arcs(p.blocks))
    bnw = None
    if p.convention is Convention.ZERO:
        bnw = black_chain_sizes(p)[1] < k
    return ClassFlags(cross < k, enh < k, bnw)


def red_nodes_under_black_crossing(d: ColoredDiagram, j: int) -> list[int]:
    """Red nodes a with i_j < a < j_1 for some strict j-crossing of black arcs."""
    if j < 1:
        raise PartitionError(f"crossing size must be at least 1, got {j}")
    black = [a for a in d.black_arcs() if not a.is_loop]
    out = []
    for a in d.red_block:
        cov = [b.right for b in black if b.left < a < b.right]
        if _lis(cov) >= j:
            out.append(a)
    return out
