"""
Permutations in one-line notation.

A permutation of size n is a tuple holding 1..n in some order, so ``(1, 4, 3, 2)``
is the permutation 1432.  Cells of Rothe diagrams are 1-indexed ``(row, col)``
pairs with row 1 at the top.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _itertools_permutations
from typing import Iterable, Iterator

Perm = tuple[int, ...]
Cell = tuple[int, int]

__all__ = [
    "Perm", "Cell", "RotheDiagram", "Block", "BlockDecomposition",
    "check_perm", "parse_perm", "format_perm", "identity", "inverse",
    "inversions", "all_perms", "contains_pattern", "avoids", "lehmer_code",
    "from_lehmer_code", "descents", "is_grassmannian", "is_inverse_grassmannian",
    "rothe_diagram", "connected_components", "essential_boxes", "dominant_region",
    "block_decomposition",
]


def check_perm(word: Iterable[int]) -> Perm:
    pi = tuple(int(x) for x in word)
    if sorted(pi) != list(range(1, len(pi) + 1)):
        raise ValueError(f"not a permutation of 1..{len(pi)}: {pi}")
    return pi


def parse_perm(text: str) -> Perm:
    """Parse ``"14253"`` or ``"1,4,2,5,3"`` (the latter is required past n = 9)."""
    text = text.strip()
    if "," in text:
        return check_perm(part for part in text.split(",") if part.strip())
    if not text.isdigit():
        raise ValueError(f"malformed permutation: {text!r}")
    return check_perm(int(ch) for ch in text)


def format_perm(pi: Perm) -> str:
    if len(pi) <= 9:
        return "".join(str(x) for x in pi)
    return ",".join(str(x) for x in pi)


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def inverse(pi: Perm) -> Perm:
    inv = [0] * len(pi)
    for i, v in enumerate(pi, start=1):
        inv[v - 1] = i
    return tuple(inv)


def inversions(pi: Perm) -> int:
    n = len(pi)
    return sum(1 for i in range(n) for j in range(i + 1, n) if pi[i] > pi[j])


def all_perms(n: int) -> Iterator[Perm]:
    """All of S_n in lexicographic order."""
    return _itertools_permutations(range(1, n + 1))


def contains_pattern(pi: Perm, pattern: Perm) -> bool:
    """True iff some subsequence of ``pi`` is order-isomorphic to ``pattern``."""
    k = len(pattern)
    if k == 0:
        return True
    n = len(pi)
    chosen: list[int] = []

    def extend(start: int) -> bool:
        t = len(chosen)
        if t == k:
            return True
        for p in range(start, n - (k - t) + 1):
            v = pi[p]
            if all((pattern[s] < pattern[t]) == (chosen[s] < v) for s in range(t)):
                chosen.append(v)
                if extend(p + 1):
                    return True
                chosen.pop()
        return False

    return extend(0)


@lru_cache(maxsize=None)
def avoids(pi: Perm, *patterns: Perm) -> bool:
    return not any(contains_pattern(pi, p) for p in patterns)


def lehmer_code(pi: Perm) -> tuple[int, ...]:
    n = len(pi)
    return tuple(sum(1 for j in range(i + 1, n) if pi[j] < pi[i]) for i in range(n))


def from_lehmer_code(code: Iterable[int], n: int | None = None) -> Perm:
    code = list(code)
    if n is None:
        n = len(code)
    code += [0] * (n - len(code))
    if len(code) > n:
        raise ValueError("code longer than n")
    remaining = list(range(1, n + 1))
    word = []
    for i, c in enumerate(code):
        if not 0 <= c < len(remaining):
            raise ValueError(f"code entry {c} at position {i + 1} is out of range for n={n}")
        word.append(remaining.pop(c))
    return tuple(word)


def descents(pi: Perm) -> list[int]:
    return [i for i in range(1, len(pi)) if pi[i - 1] > pi[i]]


def is_grassmannian(pi: Perm) -> bool:
    return len(descents(pi)) <= 1


def is_inverse_grassmannian(pi: Perm) -> bool:
    return is_grassmannian(inverse(pi))


@dataclass(frozen=True)
class RotheDiagram:
    n: int
    blanks: frozenset[Cell]

    def __len__(self) -> int:
        return len(self.blanks)

    def __contains__(self, cell) -> bool:
        return cell in self.blanks


def rothe_diagram(pi: Perm) -> RotheDiagram:
    """D(pi) = {(i, j) : pi(i) > j and pi^{-1}(j) > i}."""
    pinv = inverse(pi)
    n = len(pi)
    blanks = frozenset(
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if pi[i - 1] > j and pinv[j - 1] > i
    )
    return RotheDiagram(n, blanks)


def connected_components(cells: Iterable[Cell]) -> list[frozenset[Cell]]:
    """4-connected components, ordered by their NW-most cell."""
    todo = set(cells)
    comps = []
    for start in sorted(todo):
        if start not in todo:
            continue
        todo.discard(start)
        comp = {start}
        queue = deque([start])
        while queue:
            i, j = queue.popleft()
            for nb in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
                if nb in todo:
                    todo.discard(nb)
                    comp.add(nb)
                    queue.append(nb)
        comps.append(frozenset(comp))
    return comps


def essential_boxes(pi: Perm) -> frozenset[Cell]:
    """SE-most corners of the blank regions of the Rothe diagram."""
    blanks = rothe_diagram(pi).blanks
    return frozenset(
        (i, j) for (i, j) in blanks if (i + 1, j) not in blanks and (i, j + 1) not in blanks
    )


def dominant_region(pi: Perm) -> frozenset[Cell]:
    blanks = rothe_diagram(pi).blanks
    if (1, 1) not in blanks:
        return frozenset()
    for comp in connected_components(blanks):
        if (1, 1) in comp:
            return comp
    raise AssertionError("unreachable")


def _rothe_tile(pi: Perm, pinv: Perm, i: int, j: int) -> str:
    """Tile character of the Rothe BPD of pi at (i, j), in the BPD text alphabet."""
    if pi[i - 1] == j:
        return "r"
    horizontal = pi[i - 1] < j
    vertical = pinv[j - 1] < i
    return {(False, False): ".", (True, False): "-", (False, True): "|", (True, True): "+"}[
        (horizontal, vertical)
    ]


@dataclass(frozen=True)
class Block:
    """One block of a block decomposition.

    ``rows`` and ``cols`` list the ambient rows and columns the block occupies.
    For a Grassmannian block these are the top ``len(rows)`` rows and the first
    ``len(cols)`` columns of the Rothe BPD of ``perm``; columns crossed by a pipe
    that merely passes through the strip are left out.  Inverse-Grassmannian
    blocks are the transpose: leftmost columns, with pass-through rows left out.
    """

    perm: Perm
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    grassmannian: bool

    @property
    def bounding_box(self) -> tuple[Cell, Cell]:
        return (self.rows[0], self.cols[0]), (self.rows[-1], self.cols[-1])

    def cells(self) -> Iterator[tuple[Cell, Cell]]:
        """Pairs (ambient cell, cell in the Rothe BPD of ``perm``)."""
        for a, i in enumerate(self.rows, start=1):
            for b, j in enumerate(self.cols, start=1):
                yield (i, j), (a, b)


@dataclass(frozen=True)
class BlockDecomposition:
    pi: Perm
    dominant: tuple[int, ...]
    grassmannian_blocks: tuple[Block, ...]
    inverse_grassmannian_blocks: tuple[Block, ...]

    @property
    def blocks(self) -> tuple[Block, ...]:
        return self.inverse_grassmannian_blocks + self.grassmannian_blocks


def _partition_of(cells: frozenset[Cell]) -> tuple[int, ...]:
    rows: dict[int, int] = {}
    for i, _ in cells:
        rows[i] = rows.get(i, 0) + 1
    return tuple(rows[i] for i in sorted(rows))


def _grassmannian_block(pi: Perm, r: int, blanks, dominant) -> Block:
    """Block for essential boxes sitting in row r."""
    n = len(pi)
    pinv = inverse(pi)
    c = min(j for j in range(1, n + 1) if (r, j) not in dominant)
    top = min(i for i in range(1, n + 1) if (i, c) not in dominant)
    rows = tuple(range(top, r + 1))
    last = max(pi[i - 1] for i in rows)
    # a column whose pipe turns above the strip only passes through it
    cols = tuple(j for j in range(c, last + 1) if pinv[j - 1] >= top)
    code = [sum(1 for j in cols if (i, j) in blanks) for i in rows]
    sigma = from_lehmer_code(code, len(rows) + code[-1])
    block = Block(sigma, rows, cols, grassmannian=True)
    _check_block_tiles(pi, block)
    return block


def _transpose(cells: Iterable[Cell]) -> frozenset[Cell]:
    return frozenset((j, i) for i, j in cells)


def _check_block_tiles(pi: Perm, block: Block) -> None:
    pinv = inverse(pi)
    sigma = block.perm
    sinv = inverse(sigma)
    for (i, j), (a, b) in block.cells():
        if b > len(sigma) or a > len(sigma) or (
            _rothe_tile(pi, pinv, i, j) != _rothe_tile(sigma, sinv, a, b)
        ):
            raise ValueError(
                f"block {format_perm(sigma)} does not match the Rothe BPD of "
                f"{format_perm(pi)} at cell {(i, j)}"
            )


def _inverse_grassmannian_block(pi: Perm, c: int, blanks, dominant) -> Block:
    t = _grassmannian_block(inverse(pi), c, _transpose(blanks), _transpose(dominant))
    block = Block(inverse(t.perm), t.cols, t.rows, grassmannian=False)
    _check_block_tiles(pi, block)
    return block


def block_decomposition(pi: Perm) -> BlockDecomposition:
    """Split the Rothe diagram of a (1432, 2143)-avoiding permutation into blocks.

    Essential boxes outside the dominant region are grouped by shared rows
    (Grassmannian blocks) or shared columns (inverse-Grassmannian blocks).  A
    group made of a single box is both; it is reported as inverse-Grassmannian.
    Every block is checked tile by tile against the Rothe BPD of ``pi``.
    """
    pi = check_perm(pi)
    if not avoids(pi, (2, 1, 4, 3), (1, 4, 3, 2)):
        raise ValueError(f"{format_perm(pi)} contains 2143 or 1432")
    blanks = rothe_diagram(pi).blanks
    dominant = dominant_region(pi)
    ess = sorted(essential_boxes(pi) - dominant)

    # union-find over shared rows / columns
    parent = list(range(len(ess)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(len(ess)):
        for b in range(a + 1, len(ess)):
            if ess[a][0] == ess[b][0] or ess[a][1] == ess[b][1]:
                parent[find(a)] = find(b)
    groups: dict[int, list[Cell]] = {}
    for a, e in enumerate(ess):
        groups.setdefault(find(a), []).append(e)

    grass, inv_grass = [], []
    for group in sorted(groups.values()):
        same_row = len({i for i, _ in group}) == 1
        same_col = len({j for _, j in group}) == 1
        if not (same_row or same_col):
            raise ValueError(f"essential boxes {group} are neither row- nor column-aligned")
        if same_col:
            try:
                inv_grass.append(_inverse_grassmannian_block(pi, group[0][1], blanks, dominant))
                continue
            except ValueError:
                if not same_row:
                    raise
        grass.append(_grassmannian_block(pi, group[0][0], blanks, dominant))
    return BlockDecomposition(pi, _partition_of(dominant), tuple(grass), tuple(inv_grass))
