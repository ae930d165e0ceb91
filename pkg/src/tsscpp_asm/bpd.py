"""
Bumpless pipe dreams on an n x n grid.

Pipe k enters through the south edge of column k and every pipe leaves through
the east border, moving only north and east.  Text form is one line per row over
the alphabet ``.-|+rj`` (blank, horizontal, vertical, cross, SE elbow, NW elbow).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .perm import Cell, Perm, check_perm, format_perm, inversions
from .poly import Monomial
from .poset import Poset, closure

__all__ = [
    "Tile", "Bpd", "BpdError", "Routing", "tiles_from_matrix", "validate", "parse",
    "trace_pipes", "is_reduced", "permutation", "reduced_permutation", "demazure_permutation", "blank_weight",
    "blank_row_counts", "rothe_bpd", "simple_droops", "droop_poset",
    "bpds_by_permutation", "enumerate_bpd_red",
]


class BpdError(ValueError):
    pass


class Tile(IntEnum):
    BLANK = 0
    HORIZONTAL = 1
    VERTICAL = 2
    CROSS = 3
    SE_ELBOW = 4
    NW_ELBOW = 5

    @property
    def char(self) -> str:
        return ".-|+rj"[self]

    @classmethod
    def from_char(cls, ch: str) -> "Tile":
        k = ".-|+rj".find(ch)
        if k < 0 or len(ch) != 1:
            raise BpdError(f"unknown tile character {ch!r}")
        return cls(k)


# edges touched by each tile kind, as (north, south, west, east)
_EDGES = {
    Tile.BLANK: (False, False, False, False),
    Tile.HORIZONTAL: (False, False, True, True),
    Tile.VERTICAL: (True, True, False, False),
    Tile.CROSS: (True, True, True, True),
    Tile.SE_ELBOW: (False, True, False, True),
    Tile.NW_ELBOW: (True, False, True, False),
}


@dataclass(frozen=True, order=True)
class Bpd:
    tiles: tuple[tuple[Tile, ...], ...]

    @property
    def n(self) -> int:
        return len(self.tiles)

    def __getitem__(self, cell: Cell) -> Tile:
        i, j = cell
        return self.tiles[i - 1][j - 1]

    def cells(self, kind: Tile | None = None) -> Iterator[Cell]:
        for i, row in enumerate(self.tiles, start=1):
            for j, t in enumerate(row, start=1):
                if kind is None or t == kind:
                    yield (i, j)

    def blanks(self) -> frozenset[Cell]:
        return frozenset(self.cells(Tile.BLANK))

    def to_text(self) -> str:
        return "\n".join("".join(t.char for t in row) for row in self.tiles) + "\n"

    def __str__(self) -> str:
        return self.to_text().rstrip("\n")


def tiles_from_matrix(rows: Sequence[Sequence[int]]) -> Bpd:
    """Fill rule: +1 -> SE elbow, -1 -> NW elbow, zeros by partial sums.

    A zero cell carries a horizontal segment when the row sum up to it is 1 and a
    vertical one when the column sum from the top down to it is 1.
    """
    n = len(rows)
    col_sum = [0] * n
    out = []
    for row in rows:
        acc = 0
        line = []
        for j, v in enumerate(row):
            acc += v
            col_sum[j] += v
            if v == 1:
                line.append(Tile.SE_ELBOW)
            elif v == -1:
                line.append(Tile.NW_ELBOW)
            else:
                h, vert = acc == 1, col_sum[j] == 1
                line.append(
                    Tile.CROSS if h and vert else Tile.HORIZONTAL if h else Tile.VERTICAL if vert else Tile.BLANK
                )
        out.append(tuple(line))
    return Bpd(tuple(out))


def validate(tiles: Iterable[Iterable]) -> Bpd:
    """Check edge matching and the boundary conditions; accepts Tiles, ints or chars."""
    grid = []
    for row in tiles:
        line = []
        for t in row:
            line.append(Tile.from_char(t) if isinstance(t, str) else Tile(t))
        grid.append(tuple(line))
    n = len(grid)
    if n == 0:
        raise BpdError("empty grid")
    for i, row in enumerate(grid, start=1):
        if len(row) != n:
            raise BpdError(f"row {i} has {len(row)} tiles, expected {n}")
    for i in range(n):
        for j in range(n):
            north, south, west, east = _EDGES[grid[i][j]]
            cell = (i + 1, j + 1)
            if i == 0 and north:
                raise BpdError(f"pipe leaves through the north border at {cell}")
            if j == 0 and west:
                raise BpdError(f"pipe enters through the west border at {cell}")
            if i == n - 1 and not south:
                raise BpdError(f"no pipe enters through the south edge at {cell}")
            if j == n - 1 and not east:
                raise BpdError(f"no pipe leaves through the east edge at {cell}")
            if i < n - 1 and south != _EDGES[grid[i + 1][j]][0]:
                raise BpdError(f"edge mismatch between {cell} and {(i + 2, j + 1)}")
            if j < n - 1 and east != _EDGES[grid[i][j + 1]][2]:
                raise BpdError(f"edge mismatch between {cell} and {(i + 1, j + 2)}")
    return Bpd(tuple(grid))


def parse(text: str) -> Bpd:
    return validate(line.strip() for line in text.strip().splitlines() if line.strip())


@dataclass(frozen=True)
class Routing:
    paths: tuple[tuple[Cell, ...], ...]      # paths[k-1] = cells visited by pipe k
    exits: tuple[int, ...]                   # exits[k-1] = east row where pipe k leaves
    crossings: dict                          # CROSS cell -> frozenset of the two pipes there

    def word(self) -> Perm:
        """Pipe labels read down the east border."""
        w = [0] * len(self.exits)
        for k, row in enumerate(self.exits, start=1):
            w[row - 1] = k
        return tuple(w)


def trace_pipes(D: Bpd) -> Routing:
    """Scan rows bottom to top, cells left to right, carrying pipe labels along.

    This is also the order in which each pipe visits its cells.
    """
    n = D.n
    up = list(range(1, n + 1))  # label travelling north into the current row, per column
    paths: list[list[Cell]] = [[] for _ in range(n)]
    exits = [0] * n
    crossings = {}
    for i in range(n, 0, -1):
        h = 0
        for j in range(1, n + 1):
            t = D.tiles[i - 1][j - 1]
            if t == Tile.SE_ELBOW:
                h, up[j - 1] = up[j - 1], 0
                paths[h - 1].append((i, j))
            elif t == Tile.NW_ELBOW:
                up[j - 1], h = h, 0
                paths[up[j - 1] - 1].append((i, j))
            elif t == Tile.HORIZONTAL:
                paths[h - 1].append((i, j))
            elif t == Tile.VERTICAL:
                paths[up[j - 1] - 1].append((i, j))
            elif t == Tile.CROSS:
                a, b = h, up[j - 1]
                paths[a - 1].append((i, j))
                paths[b - 1].append((i, j))
                crossings[(i, j)] = frozenset((a, b))
        exits[h - 1] = i
    return Routing(tuple(tuple(p) for p in paths), tuple(exits), crossings)


def _scan(tiles) -> tuple[Perm, int]:
    """East-border word and number of crosses, without recording paths."""
    n = len(tiles)
    up = list(range(1, n + 1))
    word = [0] * n
    crosses = 0
    for i in range(n - 1, -1, -1):
        h = 0
        row = tiles[i]
        for j in range(n):
            t = row[j]
            if t == 4:
                h = up[j]
                up[j] = 0
            elif t == 5:
                up[j] = h
                h = 0
            elif t == 3:
                crosses += 1
        word[i] = h
    return tuple(word), crosses


def reduced_permutation(D: Bpd) -> Perm | None:
    """Permutation of D if it is reduced, else None.

    Two pipes that meet an odd number of times end up inverted, so the cross
    count is at least the inversion count of the exit word, with equality exactly
    when no pair meets twice.
    """
    word, crosses = _scan(D.tiles)
    return word if crosses == inversions(word) else None


def demazure_permutation(D: Bpd) -> Perm:
    """Exit word when two pipes that already crossed bounce off each other at
    any later cross tile instead of crossing again.  Agrees with permutation(D)
    on reduced D."""
    n = D.n
    up = list(range(1, n + 1))
    word = [0] * n
    crossed = set()
    for i in range(n - 1, -1, -1):
        h = 0
        for j, t in enumerate(D.tiles[i]):
            if t == Tile.SE_ELBOW:
                h, up[j] = up[j], 0
            elif t == Tile.NW_ELBOW:
                up[j], h = h, 0
            elif t == Tile.CROSS:
                pair = frozenset((h, up[j]))
                if pair in crossed:
                    h, up[j] = up[j], h
                else:
                    crossed.add(pair)
        word[i] = h
    return tuple(word)


def is_reduced(D: Bpd) -> bool:
    seen = set()
    for pair in trace_pipes(D).crossings.values():
        if pair in seen:
            return False
        seen.add(pair)
    return True


def permutation(D: Bpd) -> Perm:
    if not is_reduced(D):
        raise BpdError("permutation requested for a non-reduced bumpless pipe dream")
    return trace_pipes(D).word()


def blank_weight(D: Bpd) -> Monomial:
    return Monomial.from_rows(i for i, _ in D.cells(Tile.BLANK))


def blank_row_counts(D: Bpd) -> tuple[int, ...]:
    counts = [0] * D.n
    for i, _ in D.cells(Tile.BLANK):
        counts[i - 1] += 1
    return tuple(counts)


def rothe_bpd(pi: Perm) -> Bpd:
    pi = check_perm(pi)
    n = len(pi)
    return tiles_from_matrix([[1 if pi[i] == j + 1 else 0 for j in range(n)] for i in range(n)])


_DROOP_RIGHT = {Tile.HORIZONTAL: Tile.SE_ELBOW, Tile.NW_ELBOW: Tile.VERTICAL}
_DROOP_BELOW = {Tile.VERTICAL: Tile.SE_ELBOW, Tile.NW_ELBOW: Tile.HORIZONTAL}


def simple_droops(D: Bpd) -> list[Bpd]:
    """Every BPD reachable by one simple droop, in order of the droop's NW cell.

    The pipe turning at the SE elbow (i, j) is pushed through the blank at
    (i+1, j+1); the tiles at (i, j+1) and (i+1, j) adjust so the 2x2 square keeps
    its boundary connections.
    """
    n = D.n
    t = D.tiles
    out = []
    for i in range(n - 1):
        for j in range(n - 1):
            if t[i][j] != Tile.SE_ELBOW or t[i + 1][j + 1] != Tile.BLANK:
                continue
            right, below = t[i][j + 1], t[i + 1][j]
            if right not in _DROOP_RIGHT or below not in _DROOP_BELOW:
                continue
            grid = [list(row) for row in t]
            grid[i][j] = Tile.BLANK
            grid[i][j + 1] = _DROOP_RIGHT[right]
            grid[i + 1][j] = _DROOP_BELOW[below]
            grid[i + 1][j + 1] = Tile.NW_ELBOW
            out.append(Bpd(tuple(tuple(row) for row in grid)))
    return out


def droop_poset(pi: Perm) -> Poset:
    return closure(rothe_bpd(pi), simple_droops)


@lru_cache(maxsize=None)
def bpds_by_permutation(n: int) -> dict[Perm, tuple[Bpd, ...]]:
    """Reduced BPDs of size n grouped by permutation, each group in canonical order."""
    from .asm import enumerate_asm, asm_to_bpd

    groups: dict[Perm, list[Bpd]] = {}
    for A in enumerate_asm(n):
        D = asm_to_bpd(A)
        w = reduced_permutation(D)
        if w is not None:
            groups.setdefault(w, []).append(D)
    return {w: tuple(sorted(v)) for w, v in sorted(groups.items())}


def enumerate_bpd_red(pi: Perm) -> tuple[Bpd, ...]:
    pi = check_perm(pi)
    if len(pi) > 7:
        raise BpdError(f"reduced BPD enumeration is limited to n <= 7, got {format_perm(pi)}")
    return bpds_by_permutation(len(pi)).get(pi, ())
