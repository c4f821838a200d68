"""Exhaustive enumeration of set partitions and the block-count identities.

Partitions are generated as restricted growth strings (RGS) in lexicographic
order.  The work can be split into shards by RGS prefix; shard results are
counters that merge by addition, so any sharding gives the same totals.
"""

from __future__ import annotations

import enum
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .numbers import binomial, catalan, gamma, motzkin, stirling2
from .partitions import (
    Arc,
    Convention,
    PartitionError,
    SetPartition,
    block_arcs,
    chain_sizes,
    from_rgs,
    make_partition,
)
from .polynomial import ONE, T, Polynomial

EXHAUSTIVE_LIMIT = 10
LARGE_LIMIT = 12
JOBS_ENV = "NCNW_JOBS"
LARGE_ENV = "NCNW_ALLOW_LARGE"


class PartitionClass(str, enum.Enum):
    NC = "NC"
    NW = "NW"
    BNW = "BNW"
    NONNEST_ENH = "NONNEST_ENH"


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def size_limit() -> int:
    return LARGE_LIMIT if os.environ.get(LARGE_ENV) else EXHAUSTIVE_LIMIT


# ---------------------------------------------------------------------------
# restricted growth strings
# ---------------------------------------------------------------------------


def iter_rgs(n: int, prefix: Sequence[int] = ()) -> Iterator[tuple[int, ...]]:
    """All RGS of length n extending ``prefix``, in lexicographic order."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    word = list(prefix)
    top = -1
    for x in word:
        if not 0 <= x <= top + 1:
            raise ValueError(f"{tuple(prefix)} is not a restricted growth prefix")
        top = max(top, x)
    if len(word) > n:
        return

    def rec(top: int):
        if len(word) == n:
            yield tuple(word)
            return
        for x in range(top + 2):
            word.append(x)
            yield from rec(max(top, x))
            word.pop()

    yield from rec(top)


def iter_partitions(
    n: int, convention: Convention = Convention.ONE, prefix: Sequence[int] = ()
) -> Iterator[SetPartition]:
    for rgs in iter_rgs(n, prefix):
        yield from_rgs(rgs, convention)


def shard_prefixes(n: int, depth: int) -> list[tuple[int, ...]]:
    """RGS prefixes of length min(depth, n); their completions tile all of Pi_n."""
    return list(iter_rgs(min(depth, n)))


# ---------------------------------------------------------------------------
# statistics table
# ---------------------------------------------------------------------------


def partition_stats(blocks: Sequence[Sequence[int]]) -> tuple[int, int, int, int, int]:
    """(blocks, max crossing, max enhanced crossing, max enhanced nesting,
    max black enhanced crossing), black meaning outside the block of the
    smallest element."""
    cross, enh, _, enh_nest = chain_sizes(block_arcs(blocks))
    black_enh = chain_sizes(block_arcs(blocks[1:]))[1]
    return len(blocks), cross, enh, enh_nest, black_enh


def _rgs_blocks(rgs: tuple[int, ...]) -> list[list[int]]:
    groups: list[list[int]] = []
    for pos, label in enumerate(rgs):
        if label == len(groups):
            groups.append([pos])
        else:
            groups[label].append(pos)
    return groups


def _shard_stats(args: tuple[int, tuple[int, ...]]) -> Counter:
    n, prefix = args
    counts: Counter = Counter()
    for rgs in iter_rgs(n, prefix):
        counts[partition_stats(_rgs_blocks(rgs))] += 1
    return counts


def stats_table(n: int, jobs: int = 1) -> dict[tuple[int, int, int, int, int], int]:
    """Counts of every statistics tuple over Pi_n, merged over RGS-prefix shards."""
    if n > size_limit():
        raise ValueError(
            f"exhaustive enumeration is capped at n={size_limit()} (set {LARGE_ENV}=1 for n<={LARGE_LIMIT})"
        )
    return dict(_stats_table(n, max(1, jobs)))


@lru_cache(maxsize=None)
def _stats_table(n: int, jobs: int) -> tuple:
    tasks = [(n, p) for p in shard_prefixes(n, 4 if jobs > 1 else 0)]
    total: Counter = Counter()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_shard_stats, tasks):
                total.update(part)
    else:
        for task in tasks:
            total.update(_shard_stats(task))
    return tuple(sorted(total.items()))


def clear_caches() -> None:
    """Forget memoized statistics tables, so the next call recomputes them."""
    _stats_table.cache_clear()


def _in_class(stats: tuple[int, int, int, int, int], k: int, cls: PartitionClass) -> bool:
    _, cross, enh, enh_nest, black_enh = stats
    if cls is PartitionClass.NC:
        return cross < k
    if cls is PartitionClass.NW:
        return enh < k
    if cls is PartitionClass.BNW:
        return black_enh < k
    return enh_nest < k


def _hereditary_poly(n: int, k: int, cls: PartitionClass) -> Polynomial:
    """Depth-first RGS growth, pruning prefixes that already leave the class.

    Restricting a partition to an initial segment keeps exactly the arcs that
    end inside it, so crossings (black or not) of a prefix persist.
    """
    idx = {PartitionClass.NC: 0, PartitionClass.NW: 1}.get(cls)
    counts: Counter = Counter()

    def ok(groups) -> bool:
        if idx is not None:
            return chain_sizes(block_arcs(groups))[idx] < k
        return chain_sizes(block_arcs(groups[1:]))[1] < k

    def grow(groups: list[list[int]], pos: int):
        if pos == n:
            counts[len(groups)] += 1
            return
        for g in groups:
            g.append(pos)
            if ok(groups):
                grow(groups, pos + 1)
            g.pop()
        groups.append([pos])
        grow(groups, pos + 1)
        groups.pop()

    if n == 0:
        return ONE
    grow([], 0)
    return Polynomial(tuple(counts[p] for p in range(n + 1)))


def class_poly(n: int, k: int, cls: PartitionClass | str, jobs: int = 1) -> Polynomial:
    """Sum of t**blocks over the partitions of an n-set in the given class."""
    cls = PartitionClass(cls)
    if k < 2:
        raise PartitionError(f"k must be at least 2, got {k}")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        return ONE
    if n > size_limit() and cls is not PartitionClass.NONNEST_ENH:
        return _hereditary_poly(n, k, cls)
    coeffs: Counter = Counter()
    for stats, count in stats_table(n, jobs).items():
        if _in_class(stats, k, cls):
            coeffs[stats[0]] += count
    return Polynomial(tuple(coeffs[p] for p in range(n + 1)))


def iter_class(n: int, k: int, cls: PartitionClass | str, convention: Convention = Convention.ZERO):
    cls = PartitionClass(cls)
    for p in iter_partitions(n, convention):
        if _in_class(partition_stats(p.blocks), k, cls):
            yield p


# ---------------------------------------------------------------------------
# identity reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityReport:
    name: str
    params: dict
    lhs: Polynomial
    rhs: Polynomial
    parts: tuple[IdentityReport, ...] = ()
    seconds: float = field(default=0.0, compare=False)

    @property
    def own_equal(self) -> bool:
        return self.lhs == self.rhs

    @property
    def equal(self) -> bool:
        return self.own_equal and all(p.equal for p in self.parts)

    @property
    def mismatch(self) -> int | None:
        return self.lhs.first_mismatch(self.rhs)

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "identity": self.name,
            "params": self.params,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "equal": self.equal,
            "mismatch": self.mismatch,
        }
        if self.parts:
            out["parts"] = [p.to_json(timing) for p in self.parts]
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def euler_rhs(n: int, k: int, cls: PartitionClass, jobs: int = 1) -> Polynomial:
    acc = Polynomial()
    for i in range(n + 1):
        acc = acc + binomial(n, i) * class_poly(i, k, cls, jobs)
    return acc.shift(1)


def verify_euler(n: int, k: int, jobs: int = 1) -> IdentityReport:
    if n < 1 or k < 2:
        raise ValueError(f"verify_euler needs n >= 1 and k >= 2, got n={n}, k={k}")
    start = time.perf_counter()
    lhs = class_poly(n + 1, k, PartitionClass.NC, jobs)
    rhs = euler_rhs(n, k, PartitionClass.NW, jobs)
    return IdentityReport("euler", {"n": n, "k": k}, lhs, rhs, seconds=time.perf_counter() - start)


def gamma_expansion(n: int) -> Polynomial:
    """t * sum_i gamma(n+1, i) t^i (1+t)^(n-2i)."""
    acc = Polynomial()
    one_t = ONE + T
    for i in range(n // 2 + 1):
        acc = acc + gamma(n + 1, i) * (one_t ** (n - 2 * i)).shift(i)
    return acc.shift(1)


def verify_gamma(n: int, jobs: int = 1) -> IdentityReport:
    if n < 0:
        raise ValueError(f"verify_gamma needs n >= 0, got {n}")
    start = time.perf_counter()
    narayana = class_poly(n + 1, 2, PartitionClass.NC, jobs)
    matchings = class_poly(n, 2, PartitionClass.NW, jobs)
    predicted = Polynomial(tuple(gamma(n + 1, n - i) for i in range(n + 1)))
    part = IdentityReport("gamma-matching", {"n": n}, matchings, predicted)
    return IdentityReport(
        "gamma", {"n": n}, narayana, gamma_expansion(n), (part,), time.perf_counter() - start
    )


def verify_stirling(n: int, jobs: int = 1) -> IdentityReport:
    """Large-k regime: both classes are all of Pi_{n+1}, and the identity is
    S(n+1, m+1) = sum_i C(n, i) S(i, m)."""
    if n < 1:
        raise ValueError(f"verify_stirling needs n >= 1, got {n}")
    start = time.perf_counter()
    k = n + 1
    full = Polynomial(tuple(stirling2(n + 1, m) for m in range(n + 2)))
    nc = class_poly(n + 1, k, PartitionClass.NC, jobs)
    nw = class_poly(n + 1, k, PartitionClass.NW, jobs)
    parts = (
        IdentityReport("stirling-nc-full", {"n": n, "k": k}, nc, full),
        IdentityReport("stirling-nw-full", {"n": n, "k": k}, nw, full),
    )
    rhs = Polynomial()
    for i in range(n + 1):
        rhs = rhs + binomial(n, i) * Polynomial(tuple(stirling2(i, m) for m in range(i + 1)))
    lhs = Polynomial(tuple([0] + [stirling2(n + 1, m + 1) for m in range(n + 1)]))
    return IdentityReport("stirling", {"n": n}, lhs, rhs.shift(1), parts, time.perf_counter() - start)


def verify_donaghey(n: int, jobs: int = 1, enumerate_upto: int = 9) -> IdentityReport:
    if n < 0:
        raise ValueError(f"verify_donaghey needs n >= 0, got {n}")
    start = time.perf_counter()
    lhs = Polynomial((catalan(n + 1),))
    rhs = Polynomial((sum(binomial(n, i) * motzkin(i) for i in range(n + 1)),))
    parts = ()
    if n <= enumerate_upto:
        counted_lhs = class_poly(n + 1, 2, PartitionClass.NC, jobs)(1)
        counted_rhs = sum(binomial(n, i) * class_poly(i, 2, PartitionClass.NW, jobs)(1) for i in range(n + 1))
        parts = (IdentityReport("donaghey-enumerated", {"n": n}, Polynomial((counted_lhs,)), Polynomial((counted_rhs,))),)
    return IdentityReport("donaghey", {"n": n}, lhs, rhs, parts, time.perf_counter() - start)


@dataclass(frozen=True)
class NestingGap:
    witness: IdentityReport | None
    scanned: tuple[tuple[int, int], ...]
    agree_at_one: bool

    def to_json(self) -> dict:
        return {
            "witness": None if self.witness is None else self.witness.to_json(),
            "scanned": [list(x) for x in self.scanned],
            "agree_at_t1": self.agree_at_one,
        }


def search_nesting_counterexample(n_max: int, jobs: int = 1) -> NestingGap:
    """Smallest (n, k) where enhanced k-nonnesting partitions break the identity.

    Every scanned pair is also checked for agreement at t = 1.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    scanned = []
    agree = True
    for n in range(1, n_max + 1):
        for k in range(2, n + 2):
            lhs = class_poly(n + 1, k, PartitionClass.NC, jobs)
            rhs = euler_rhs(n, k, PartitionClass.NONNEST_ENH, jobs)
            scanned.append((n, k))
            agree = agree and lhs(1) == rhs(1)
            if lhs != rhs:
                report = IdentityReport("nesting-gap", {"n": n, "k": k}, lhs, rhs)
                return NestingGap(report, tuple(scanned), agree)
    return NestingGap(None, tuple(scanned), agree)


# ---------------------------------------------------------------------------
# Motzkin paths
# ---------------------------------------------------------------------------


class MotzkinError(ValueError):
    pass


def is_motzkin_word(word: str) -> bool:
    height = 0
    for s in word:
        if s not in "UDH":
            return False
        height += {"U": 1, "D": -1, "H": 0}[s]
        if height < 0:
            return False
    return height == 0


def matching_to_motzkin(p: SetPartition) -> str:
    """U at arc openers, D at arc closers, H at loops."""
    if any(len(b) > 2 for b in p.blocks) or chain_sizes(block_arcs(p.blocks))[0] >= 2:
        raise MotzkinError(f"{p} is not a noncrossing partial matching")
    lo = p.convention.offset
    word = [""] * p.n
    for b in p.blocks:
        if len(b) == 1:
            word[b[0] - lo] = "H"
        else:
            word[b[0] - lo] = "U"
            word[b[1] - lo] = "D"
    return "".join(word)


def motzkin_to_matching(word: str, convention: Convention = Convention.ONE) -> SetPartition:
    """Inverse map: each D closes the most recent open U."""
    if not is_motzkin_word(word):
        raise MotzkinError(f"{word!r} is not a Motzkin path")
    lo = convention.offset
    stack: list[int] = []
    blocks = []
    for pos, s in enumerate(word, start=lo):
        if s == "U":
            stack.append(pos)
        elif s == "D":
            blocks.append([stack.pop(), pos])
        else:
            blocks.append([pos])
    return make_partition(len(word), blocks, convention)


def arc_counts(p: SetPartition) -> tuple[int, int]:
    """(all arcs including loops, non-loop arcs)."""
    arcs_ = block_arcs(p.blocks)
    return len(arcs_), sum(1 for a in arcs_ if a.left != a.right)


__all__ = [
    "IdentityReport",
    "NestingGap",
    "PartitionClass",
    "class_poly",
    "clear_caches",
    "iter_class",
    "iter_partitions",
    "iter_rgs",
    "matching_to_motzkin",
    "motzkin_to_matching",
    "search_nesting_counterexample",
    "stats_table",
    "verify_donaghey",
    "verify_euler",
    "verify_gamma",
    "verify_stirling",
]
