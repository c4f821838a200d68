"""Exact combinatorial numbers."""

from __future__ import annotations

from functools import lru_cache
from math import comb


def binomial(n: int, k: int) -> int:
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    return comb(n, k) if 0 <= k <= n else 0


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError(f"catalan needs n >= 0, got {n}")
    return comb(2 * n, n) // (n + 1)


def motzkin(n: int) -> int:
    if n < 0:
        raise ValueError(f"motzkin needs n >= 0, got {n}")
    return sum(comb(n, 2 * i) * catalan(i) for i in range(n // 2 + 1))


def gamma(m: int, i: int) -> int:
    """Coefficient of t^i (1+t)^(m-1-2i) in the expansion of the m-th Narayana polynomial."""
    if m < 1:
        raise ValueError(f"gamma needs m >= 1, got {m}")
    if i < 0:
        return 0
    return binomial(m - 1, 2 * i) * catalan(i)


def bell(n: int) -> int:
    """Bell number from the Bell triangle."""
    if n < 0:
        raise ValueError(f"bell needs n >= 0, got {n}")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


@lru_cache(maxsize=None)
def stirling2(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError(f"stirling2 needs nonnegative arguments, got ({a}, {b})")
    if a == 0 or b == 0:
        return 1 if a == b else 0
    return b * stirling2(a - 1, b) + stirling2(a - 1, b - 1)


KINDS = {
    "catalan": (catalan, 1),
    "motzkin": (motzkin, 1),
    "bell": (bell, 1),
    "stirling2": (stirling2, 2),
    "binomial": (binomial, 2),
    "gamma": (gamma, 2),
}


def number(kind: str, *args: int) -> int:
    try:
        fn, arity = KINDS[kind.lower()]
    except KeyError:
        raise ValueError(f"unknown number kind {kind!r}; choose from {sorted(KINDS)}") from None
    if len(args) != arity:
        raise ValueError(f"{kind} takes {arity} argument(s), got {len(args)}")
    return fn(*args)
