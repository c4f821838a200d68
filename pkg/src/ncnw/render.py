"""Plain-text drawings of arc diagrams and staircase fillings.

Red (block of 0, zero-based input only) is shown with ``=`` and ``:`` for arcs
and a ``*`` after the node label; black arcs use ``-`` and ``|``.
"""

from __future__ import annotations

from .fillings import TriangularFilling
from .partitions import Convention, SetPartition, arcs

CELL = 4


def _levels(spans: list[tuple[int, int]]) -> dict[tuple[int, int], int]:
    placed: dict[tuple[int, int], int] = {}
    for span in sorted(spans, key=lambda s: (s[1] - s[0], s)):
        taken = {lv for other, lv in placed.items() if not (other[1] < span[0] or span[1] < other[0])}
        level = 1
        while level in taken:
            level += 1
        placed[span] = level
    return placed


def render_arcs(p: SetPartition) -> str:
    lo = p.convention.offset
    red = set(p.blocks[0]) if p.convention is Convention.ZERO and p.n else set()
    arc_list = arcs(p).sorted()
    spans = [(a.left, a.right) for a in arc_list if not a.is_loop]
    levels = _levels(spans)
    height = max(levels.values(), default=0)
    width = CELL * p.n
    grid = [[" "] * width for _ in range(height + 1)]

    def col(x: int) -> int:
        return CELL * (x - lo) + 1

    for (l, r), level in sorted(levels.items(), key=lambda item: -item[1]):
        is_red = l in red
        horiz, vert = ("=", ":") if is_red else ("-", "|")
        row = height - level
        for c in range(col(l), col(r) + 1):
            grid[row][c] = horiz
        grid[row][col(l)] = grid[row][col(r)] = "+"
        for below in range(row + 1, height):
            for c in (col(l), col(r)):
                if grid[below][c] == " ":
                    grid[below][c] = vert
    loop_row = grid[height]
    for a in arc_list:
        if a.is_loop:
            loop_row[col(a.left)] = "o"
    for l, r in spans:
        for c in (col(l), col(r)):
            if loop_row[c] == " ":
                loop_row[c] = ":" if l in red else "|"
    labels = "".join(
        f"{x}{'*' if x in red else ''}".center(CELL) for x in range(lo, lo + p.n)
    )
    lines = ["".join(row).rstrip() for row in grid] + [labels.rstrip()]
    return "\n".join(line for line in lines if line or line is lines[-1]) + "\n"


def render_filling(f: TriangularFilling) -> str:
    width = len(str(f.order)) if f.order else 1
    lines = []
    for r in range(1, f.order + 1):
        cells = " ".join("•" if (r, c) in f.ones else "·" for c in range(1, r + 1))
        lines.append(f"{r:>{width}} {cells}")
    if f.order:
        lines.append(" " * (width + 1) + " ".join(str(c % 10) for c in range(1, f.order + 1)))
    return "\n".join(lines) + "\n"
