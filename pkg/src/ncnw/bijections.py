"""The maps Psi, Phi and their inverses on zero-based partitions.

Phi sends partitions without black enhanced k-crossings (BNW) to
k-noncrossing partitions (NC) preserving the number of blocks.  It runs two
phases of arc rewiring on the colored diagram: enhanced left shifts, then
cyclic rotations.  The inverse undoes the rotations first, then the shifts.
Colors are never stored: after each rewiring the red block is recomputed as
the component of node 0.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Iterable

from .partitions import (
    Arc,
    ArcSet,
    ColoredDiagram,
    Convention,
    Kind,
    Mode,
    PartitionError,
    SetPartition,
    block_arcs,
    black_chain_sizes,
    chain_sizes,
    iter_chains,
    make_partition,
    partition_from_arcs,
)


class BijectionError(ValueError):
    """The input lies outside the domain of the map."""


class ImageError(BijectionError):
    """A class-membership check on an input or output failed."""


class StepKind(str, enum.Enum):
    ENHANCED_LEFT_SHIFT = "enhanced_left_shift"
    CYCLIC_ROTATION = "cyclic_rotation"
    UNDO_ROTATION = "undo_rotation"
    UNDO_SHIFT = "undo_shift"


@dataclass(frozen=True)
class Step:
    kind: StepKind
    before: ColoredDiagram
    after: ColoredDiagram
    node: int | None
    removed: tuple[Arc, ...]
    added: tuple[Arc, ...]

    def to_json(self) -> dict:
        return {
            "step": self.kind.value,
            "node": self.node,
            "removed": [list(a) for a in self.removed],
            "added": [list(a) for a in self.added],
            "before": _blocks(self.before),
            "after": _blocks(self.after),
            "red_after": list(self.after.red_block),
        }


@dataclass(frozen=True)
class StepTrace:
    steps: tuple[Step, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.steps)

    def kinds(self) -> list[StepKind]:
        return [s.kind for s in self.steps]

    def to_jsonl(self) -> str:
        return "".join(json.dumps(s.to_json(), separators=(",", ":")) + "\n" for s in self.steps)


def _blocks(d: ColoredDiagram) -> list[list[int]]:
    return [list(b) for b in d.partition().blocks]


def _zero(p: SetPartition) -> SetPartition:
    if p.convention is not Convention.ZERO:
        raise PartitionError("these maps act on zero-based partitions; convert first")
    return p


# ---------------------------------------------------------------------------
# Psi (k = 2)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MatchingPair:
    n: int
    A: tuple[int, ...]
    mu: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        covered = sorted(x for b in self.mu for x in b)
        if covered != sorted(self.A) or len(set(covered)) != len(covered):
            raise BijectionError(f"blocks of mu {list(map(list, self.mu))} must partition A={list(self.A)}")
        if any(not 1 <= x <= self.n for x in self.A):
            raise BijectionError(f"A={list(self.A)} must be a subset of 1..{self.n}")
        if any(len(b) not in (1, 2) for b in self.mu):
            raise BijectionError("mu must have blocks of size one or two")
        if self.mu and chain_sizes(block_arcs(self.mu))[0] >= 2:
            raise BijectionError("mu must be noncrossing")

    @classmethod
    def of(cls, n: int, A: Iterable[int], mu: Iterable[Iterable[int]]) -> MatchingPair:
        return cls(n, tuple(sorted(A)), tuple(sorted(tuple(sorted(b)) for b in mu)))

    @property
    def weight(self) -> int:
        return len(self.mu) + 1

    def to_json(self) -> dict:
        return {"n": self.n, "A": list(self.A), "mu": [list(b) for b in self.mu]}

    @classmethod
    def from_json(cls, data: dict) -> MatchingPair:
        try:
            return cls.of(int(data["n"]), data["A"], data["mu"])
        except (KeyError, TypeError) as exc:
            raise BijectionError(f"malformed matching-pair JSON: {exc}") from None


def psi(p: SetPartition) -> MatchingPair:
    """Keep only the smallest and largest element of every black block."""
    p = _zero(p)
    if chain_sizes(block_arcs(p.blocks))[0] >= 2:
        raise ImageError(f"psi needs a noncrossing partition; {p} has a crossing")
    mu = [(b[0], b[-1]) if len(b) > 1 else (b[0],) for b in p.blocks[1:]]
    A = [x for b in mu for x in b]
    return MatchingPair.of(p.n - 1, A, mu)


def psi_inv(pair: MatchingPair) -> SetPartition:
    """Grow each block of mu over its interval; uncovered elements form the red block."""
    n = pair.n
    owner: dict[int, int] = {}
    spans = sorted(((b[-1] - b[0], idx) for idx, b in enumerate(pair.mu)), reverse=True)
    # wider intervals first, so the smallest containing interval wins
    for _, idx in spans:
        b = pair.mu[idx]
        for x in range(b[0], b[-1] + 1):
            if x not in pair.A or x in b:
                owner[x] = idx
    blocks: list[list[int]] = [[] for _ in pair.mu]
    red = []
    for x in range(n + 1):
        if x in owner:
            blocks[owner[x]].append(x)
        else:
            red.append(x)
    return make_partition(n + 1, [red] + blocks, Convention.ZERO)


# ---------------------------------------------------------------------------
# red/black decomposition
# ---------------------------------------------------------------------------


def decompose(p: SetPartition) -> tuple[tuple[int, ...], SetPartition]:
    """(A, Q): the non-red elements and the black blocks relabeled a_i -> i-1."""
    p = _zero(p)
    if p.n == 0:
        return (), make_partition(0, [], Convention.ZERO)
    A = tuple(x for x in range(p.n) if x not in p.blocks[0])
    index = {a: i for i, a in enumerate(A)}
    q = make_partition(len(A), [[index[x] for x in b] for b in p.blocks[1:]], Convention.ZERO)
    return A, q


def compose(A: Iterable[int], q: SetPartition, n: int) -> SetPartition:
    A = tuple(sorted(A))
    q = _zero(q)
    if len(A) != q.n:
        raise BijectionError(f"|A|={len(A)} does not match the ground size {q.n} of Q")
    if any(not 1 <= a < n for a in A) or len(set(A)) != len(A):
        raise BijectionError(f"A={list(A)} must be a subset of 1..{n - 1}")
    red = [x for x in range(n) if x not in set(A)]
    return make_partition(n, [red] + [[A[x] for x in b] for b in q.blocks], Convention.ZERO)


# ---------------------------------------------------------------------------
# the four rewiring steps
# ---------------------------------------------------------------------------


def _nonloops(d: ColoredDiagram) -> set[Arc]:
    return {a for a in d.arcs.arcs if not a.is_loop}


def _rebuild(n: int, arc_set: set[Arc]) -> ColoredDiagram:
    p = partition_from_arcs(ArcSet(n, frozenset(arc_set), Convention.ZERO))
    return ColoredDiagram.of(p)


def _has_black_crossing(d: ColoredDiagram, k: int) -> bool:
    return black_chain_sizes(d.partition())[0] >= k


def _covering_chains(black: list[Arc], a: int, size: int) -> list[tuple[Arc, ...]]:
    cover = [b for b in black if b.left < a < b.right]
    return list(iter_chains(cover, size, Mode.CROSSING, Kind.STRICT))


def _innermost_covering(d: ColoredDiagram, size: int) -> tuple[int, tuple[Arc, ...]] | None:
    """Smallest red node under a black strict ``size``-crossing, with the lex-min right word."""
    black = [b for b in d.black_arcs() if not b.is_loop]
    for a in d.red_block:
        chains = _covering_chains(black, a, size)
        if chains:
            return a, min(chains, key=lambda ch: [x.right for x in ch])
    return None


def _red_neighbours(red: tuple[int, ...], a: int) -> tuple[int | None, int | None]:
    below = [x for x in red if x < a]
    above = [x for x in red if x > a]
    return (below[-1] if below else None), (above[0] if above else None)


def enhanced_left_shift(d: ColoredDiagram, k: int) -> tuple[ColoredDiagram, Step]:
    """Turn the innermost black (k-1)-crossing over the smallest covered red node
    into a black weak k-crossing centred at that node, which leaves the red block."""
    found = _innermost_covering(d, k - 1)
    if found is None:
        raise BijectionError(f"no red node lies under a black {k - 1}-crossing")
    a, chain = found
    lefts = [x.left for x in chain]
    rights = [x.right for x in chain]
    new = [Arc(lefts[0], a)]
    new += [Arc(lefts[m], rights[m - 1]) for m in range(1, k - 1)]
    new.append(Arc(a, rights[-1]))

    arcs_now = _nonloops(d)
    x, y = _red_neighbours(d.red_block, a)
    removed = list(chain)
    added = list(new)
    for red_arc in (Arc(x, a) if x is not None else None, Arc(a, y) if y is not None else None):
        if red_arc is not None:
            removed.append(red_arc)
    if x is not None and y is not None:
        added.append(Arc(x, y))
    arcs_now.difference_update(removed)
    arcs_now.update(added)
    out = _rebuild(d.n, arcs_now)

    if a in out.red_set or len(out.red_block) != len(d.red_block) - 1:
        raise AssertionError(f"shift at {a} did not shrink the red block by exactly {a}")
    if _has_black_crossing(out, k):
        raise AssertionError(f"enhanced left shift at {a} created a black {k}-crossing")
    step = Step(StepKind.ENHANCED_LEFT_SHIFT, d, out, a, tuple(sorted(removed)), tuple(sorted(added)))
    return out, step


def _red_crossings(d: ColoredDiagram, k: int) -> list[tuple[Arc, ...]]:
    red = d.red_set
    pool = sorted(_nonloops(d))
    return [ch for ch in iter_chains(pool, k, Mode.CROSSING, Kind.STRICT) if any(a.left in red for a in ch)]


def rightmost_red_crossing_arc(d: ColoredDiagram, k: int) -> Arc | None:
    red = d.red_set
    best = None
    for ch in _red_crossings(d, k):
        for a in ch:
            if a.left in red and (best is None or a.right > best.right):
                best = a
    return best


def cyclic_rotation(d: ColoredDiagram, k: int) -> tuple[ColoredDiagram, Step]:
    """Rotate right ends of the greatest k-crossing through the rightmost red arc."""
    red = d.red_set
    crossings = _red_crossings(d, k)
    if not crossings:
        raise BijectionError(f"no red {k}-crossing")
    target = max((a for ch in crossings for a in ch if a.left in red), key=lambda a: a.right)
    chain = max((ch for ch in crossings if target in ch), key=lambda ch: [x.right for x in ch])
    p = chain.index(target) + 1
    if p == 1:
        raise AssertionError(f"red arc {tuple(target)} is first in the rotated crossing")
    lefts = [x.left for x in chain]
    rights = [x.right for x in chain]
    new = [Arc(lefts[m], rights[m + 1]) for m in range(p - 1)]
    new.append(Arc(lefts[p - 1], rights[0]))
    new += list(chain[p:])

    arcs_now = _nonloops(d)
    arcs_now.difference_update(chain)
    arcs_now.update(new)
    out = _rebuild(d.n, arcs_now)
    if _has_black_crossing(out, k):
        raise AssertionError(f"cyclic rotation on {[tuple(a) for a in chain]} created a black {k}-crossing")
    step = Step(StepKind.CYCLIC_ROTATION, d, out, target.right, tuple(sorted(chain)), tuple(sorted(new)))
    return out, step


def undo_cyclic_rotation(d: ColoredDiagram, k: int) -> tuple[ColoredDiagram, Step]:
    found = _innermost_covering(d, k - 1)
    if found is None:
        raise BijectionError(f"no red node lies under a black {k - 1}-crossing")
    a, chain = found
    a_prev, _ = _red_neighbours(d.red_block, a)
    lefts = [x.left for x in chain]
    rights = [x.right for x in chain]
    # t counts the crossing arcs starting left of a'
    t = sum(1 for l in lefts if l < a_prev)
    if not 1 <= t < k - 1:
        raise BijectionError(
            f"red node {a_prev} is not strictly inside the left ends of "
            f"{[tuple(x) for x in chain]}; not in the image of a cyclic rotation"
        )
    red_arc = Arc(a_prev, a)
    removed = list(chain[:t]) + [red_arc]
    added = [Arc(lefts[0], a)]
    added += [Arc(lefts[m], rights[m - 1]) for m in range(1, t)]
    added.append(Arc(a_prev, rights[t - 1]))
    arcs_now = _nonloops(d)
    arcs_now.difference_update(removed)
    arcs_now.update(added)
    out = _rebuild(d.n, arcs_now)
    step = Step(StepKind.UNDO_ROTATION, d, out, a, tuple(sorted(removed)), tuple(sorted(added)))
    return out, step


def _black_weak_crossings(d: ColoredDiagram, k: int) -> list[tuple[Arc, ...]]:
    black = [b for b in d.black_arcs() if not b.is_loop]
    return list(iter_chains(black, k, Mode.CROSSING, Kind.WEAK))


def undo_enhanced_left_shift(d: ColoredDiagram, k: int) -> tuple[ColoredDiagram, Step]:
    """Collapse the outermost black weak k-crossing at the largest centre back
    into a (k-1)-crossing and return the centre to the red block."""
    weak = _black_weak_crossings(d, k)
    if not weak:
        raise BijectionError(f"no black weak {k}-crossing")
    a = max(ch[-1].left for ch in weak)
    chain = max((ch for ch in weak if ch[-1].left == a), key=lambda ch: [x.right for x in ch[1:]])
    lefts = [x.left for x in chain[:-1]]
    rights = [x.right for x in chain[1:]]
    new = [Arc(l, r) for l, r in zip(lefts, rights)]

    arcs_now = _nonloops(d)
    removed = list(chain)
    added = list(new)
    x, y = _red_neighbours(d.red_block, a)
    if x is None:
        raise BijectionError(f"centre {a} has no red node to its left")
    if y is not None:
        removed.append(Arc(x, y))
        added.append(Arc(a, y))
    added.append(Arc(x, a))
    arcs_now.difference_update(removed)
    arcs_now.update(added)
    out = _rebuild(d.n, arcs_now)
    if a not in out.red_set:
        raise AssertionError(f"undoing the shift at {a} did not return it to the red block")
    step = Step(StepKind.UNDO_SHIFT, d, out, a, tuple(sorted(removed)), tuple(sorted(added)))
    return out, step


# ---------------------------------------------------------------------------
# Phi and its inverse
# ---------------------------------------------------------------------------


def in_bnw(p: SetPartition, k: int) -> bool:
    return black_chain_sizes(p)[1] < k


def in_nc(p: SetPartition, k: int) -> bool:
    return chain_sizes(block_arcs(p.blocks))[0] < k


def _check_k(k: int) -> None:
    if k < 2:
        raise BijectionError(f"k must be at least 2, got {k}")


def phi(p: SetPartition, k: int) -> tuple[SetPartition, StepTrace]:
    _check_k(k)
    p = _zero(p)
    if not in_bnw(p, k):
        raise ImageError(f"{p} has a black enhanced {k}-crossing; phi needs BNW^({k})")
    if in_bnw(p, k - 1):
        return p, StepTrace()
    steps = []
    d = ColoredDiagram.of(p)

    cap = len(d.red_block) - 1
    while _innermost_covering(d, k - 1) is not None:
        if cap == 0:
            raise BijectionError("enhanced left shift exceeded its step cap")
        cap -= 1
        d, step = enhanced_left_shift(d, k)
        steps.append(step)

    cap = p.n * p.n
    last_right = None
    while (arc := rightmost_red_crossing_arc(d, k)) is not None:
        if cap == 0:
            raise BijectionError("cyclic rotation exceeded its step cap")
        cap -= 1
        if last_right is not None and arc.right >= last_right:
            raise AssertionError(
                f"rightmost red arc in a {k}-crossing moved from {last_right} to {arc.right}"
            )
        last_right = arc.right
        d, step = cyclic_rotation(d, k)
        steps.append(step)

    out = d.partition()
    if not in_nc(out, k):
        raise ImageError(f"phi produced {out}, which has a {k}-crossing")
    if len(out) != len(p):
        raise AssertionError("phi changed the number of blocks")
    return out, StepTrace(tuple(steps))


def phi_inv(p: SetPartition, k: int) -> tuple[SetPartition, StepTrace]:
    _check_k(k)
    p = _zero(p)
    if not in_nc(p, k):
        raise ImageError(f"{p} has a {k}-crossing; phi_inv needs NC^({k})")
    if in_bnw(p, k - 1):
        return p, StepTrace()
    steps = []
    d = ColoredDiagram.of(p)

    cap = p.n * p.n
    while _innermost_covering(d, k - 1) is not None:
        if cap == 0:
            raise BijectionError("undo rotation exceeded its step cap")
        cap -= 1
        d, step = undo_cyclic_rotation(d, k)
        steps.append(step)

    cap = p.n
    while _black_weak_crossings(d, k):
        if cap == 0:
            raise BijectionError("undo shift exceeded its step cap")
        cap -= 1
        d, step = undo_enhanced_left_shift(d, k)
        steps.append(step)

    out = d.partition()
    if not in_bnw(out, k):
        raise ImageError(f"phi_inv produced {out}, which has a black enhanced {k}-crossing")
    return out, StepTrace(tuple(steps))


def phi_k2_via_psi(p: SetPartition) -> SetPartition:
    """Phi at k = 2 computed as psi_inv of the decomposed pair."""
    A, q = decompose(p)
    mu = [[A[x] for x in b] for b in q.blocks]
    return psi_inv(MatchingPair.of(p.n - 1, A, mu))
