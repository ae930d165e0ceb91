"""
Pipe dreams on the staircase and bounded compatible sequences.

Crosses may sit on cells (i, j) with i + j <= n.  A pipe dream is stored as a
bitset over those cells in row-major order, so the natural order on pipe dreams
of one size is the order of the integer ``bits``.  Pipes enter along the north
border (pipe c at column c) and leave along the west border.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .perm import Cell, Perm, check_perm, format_perm, inversions, lehmer_code, avoids
from .poly import Monomial
from .poset import Poset, closure

__all__ = [
    "PipeDream", "CompatibleSequence", "PdError", "MAX_N", "staircase_cells",
    "pd_to_sequence", "sequence_to_pd", "trace", "is_reduced", "permutation",
    "reduced_permutation", "cross_weight", "cross_row_counts", "bottom_pd", "top_pd",
    "is_pseudo_yamanouchi", "simple_slides", "inverse_simple_slides", "slide_poset",
    "enumerate_pd", "enumerate_pd_red", "pds_by_permutation",
]

MAX_N = 7


class PdError(ValueError):
    pass


@lru_cache(maxsize=None)
def staircase_cells(n: int) -> tuple[Cell, ...]:
    return tuple((i, j) for i in range(1, n) for j in range(1, n - i + 1))


@lru_cache(maxsize=None)
def _cell_index(n: int) -> dict[Cell, int]:
    return {c: k for k, c in enumerate(staircase_cells(n))}


@dataclass(frozen=True, order=True)
class PipeDream:
    n: int
    bits: int

    def __post_init__(self):
        if self.n < 1:
            raise PdError(f"size must be positive, got {self.n}")
        if not 0 <= self.bits < 1 << len(staircase_cells(self.n)):
            raise PdError(f"bitset {self.bits} out of range for n={self.n}")

    @classmethod
    def from_crosses(cls, n: int, crosses: Iterable[Cell]) -> "PipeDream":
        index = _cell_index(n)
        bits = 0
        for c in crosses:
            c = tuple(c)
            if c not in index:
                raise PdError(f"cell {c} is off the staircase for n={n}")
            bits |= 1 << index[c]
        return cls(n, bits)

    @property
    def crosses(self) -> frozenset[Cell]:
        return frozenset(_crosses(self.n, self.bits))

    def has_cross(self, cell: Cell) -> bool:
        k = _cell_index(self.n).get(cell)
        return k is not None and bool(self.bits >> k & 1)

    def to_text(self) -> str:
        n = self.n
        lines = []
        for i in range(1, n + 1):
            lines.append("".join("+" if self.has_cross((i, j)) else "." for j in range(1, n - i + 2)))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "PipeDream":
        lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
        n = len(lines)
        crosses = []
        for i, line in enumerate(lines, start=1):
            if len(line) != n - i + 1:
                raise PdError(f"row {i} has {len(line)} cells, expected {n - i + 1}")
            for j, ch in enumerate(line, start=1):
                if ch == "+":
                    if i + j > n:
                        raise PdError(f"cross at {(i, j)} lies on the antidiagonal")
                    crosses.append((i, j))
                elif ch != ".":
                    raise PdError(f"unknown pipe dream character {ch!r}")
        return cls.from_crosses(n, crosses)

    def __str__(self) -> str:
        return self.to_text().rstrip("\n")


@lru_cache(maxsize=1 << 16)
def _crosses(n: int, bits: int) -> tuple[Cell, ...]:
    cells = staircase_cells(n)
    return tuple(cells[k] for k in range(len(cells)) if bits >> k & 1)


@dataclass(frozen=True)
class CompatibleSequence:
    a: tuple[int, ...]
    r: tuple[int, ...]

    def validate(self, n: int | None = None) -> "CompatibleSequence":
        a, r = self.a, self.r
        if len(a) != len(r):
            raise PdError("a and r must have the same length")
        for i in range(len(a)):
            if r[i] < 1 or a[i] < 1:
                raise PdError("entries must be positive")
            if a[i] < r[i]:
                raise PdError(f"a_{i + 1} = {a[i]} is smaller than r_{i + 1} = {r[i]}")
            if n is not None and a[i] > n - 1:
                raise PdError(f"a_{i + 1} = {a[i]} exceeds n - 1 = {n - 1}")
            if i + 1 < len(a):
                if r[i] < r[i + 1]:
                    raise PdError("r must be weakly decreasing")
                if a[i] >= a[i + 1] and r[i] == r[i + 1]:
                    raise PdError(f"r_{i + 1} must exceed r_{i + 2} since a_{i + 1} >= a_{i + 2}")
        return self

    def to_json(self, n: int | None = None) -> str:
        data = {"a": list(self.a), "r": list(self.r)}
        if n is not None:
            data["n"] = n
        return json.dumps(data)

    @classmethod
    def from_json(cls, text: str | dict) -> tuple["CompatibleSequence", int | None]:
        data = json.loads(text) if isinstance(text, str) else text
        try:
            s = cls(tuple(int(x) for x in data["a"]), tuple(int(x) for x in data["r"]))
        except (KeyError, TypeError, ValueError):
            raise PdError('sequence JSON needs integer lists "a" and "r"') from None
        n = data.get("n")
        return s.validate(n), n


def pd_to_sequence(D: PipeDream) -> CompatibleSequence:
    """Rows bottom to top, each left to right; the cross (r, c) contributes (r + c - 1, r)."""
    crosses = sorted(D.crosses, key=lambda c: (-c[0], c[1]))
    return CompatibleSequence(tuple(r + c - 1 for r, c in crosses), tuple(r for r, _ in crosses))


def sequence_to_pd(s: CompatibleSequence, n: int) -> PipeDream:
    s.validate(n)
    cells = [(r, a + 1 - r) for a, r in zip(s.a, s.r)]
    if len(set(cells)) != len(cells):
        raise PdError("sequence places two crosses on the same cell")
    return PipeDream.from_crosses(n, cells)


@dataclass(frozen=True)
class PdRouting:
    exits: tuple[int, ...]        # exits[c-1] = west row where pipe c leaves
    crossings: dict               # cross cell -> frozenset of the two pipes there

    def word(self) -> Perm:
        w = [0] * len(self.exits)
        for c, row in enumerate(self.exits, start=1):
            w[row - 1] = c
        return tuple(w)


def trace(D: PipeDream) -> PdRouting:
    """Follow every pipe through the grid geometrically."""
    n = D.n
    crosses = D.crosses
    exits = [0] * n
    meet: dict[Cell, list[int]] = {}
    for c in range(1, n + 1):
        i, j, heading = 1, c, "S"
        while j >= 1:
            if (i, j) in crosses:
                meet.setdefault((i, j), []).append(c)
            elif heading == "S":
                heading = "W"
            else:
                heading = "S"
            if heading == "S":
                i += 1
            else:
                j -= 1
        exits[c - 1] = i
    return PdRouting(tuple(exits), {cell: frozenset(p) for cell, p in meet.items()})


@lru_cache(maxsize=1 << 18)
def _word_permutation(n: int, bits: int) -> tuple[Perm, bool]:
    """Multiply out the reading word: crosses top to bottom, right to left in
    each row, the cross (i, j) standing for the transposition s_{i+j-1}."""
    w = list(range(1, n + 1))
    reduced = True
    for i, j in sorted(_crosses(n, bits), key=lambda c: (c[0], -c[1])):
        k = i + j - 2
        if w[k] > w[k + 1]:
            reduced = False
        w[k], w[k + 1] = w[k + 1], w[k]
    return tuple(w), reduced


def reduced_permutation(D: PipeDream) -> Perm | None:
    w, reduced = _word_permutation(D.n, D.bits)
    return w if reduced else None


def is_reduced(D: PipeDream) -> bool:
    return _word_permutation(D.n, D.bits)[1]


def permutation(D: PipeDream) -> Perm:
    w, reduced = _word_permutation(D.n, D.bits)
    if not reduced:
        raise PdError("permutation requested for a non-reduced pipe dream")
    return w


def cross_weight(D: PipeDream) -> Monomial:
    return Monomial.from_rows(i for i, _ in _crosses(D.n, D.bits))


def cross_row_counts(D: PipeDream) -> tuple[int, ...]:
    counts = [0] * D.n
    for i, _ in _crosses(D.n, D.bits):
        counts[i - 1] += 1
    return tuple(counts)


def bottom_pd(pi: Perm) -> PipeDream:
    """Row i holds code(i) crosses pushed against the west border."""
    pi = check_perm(pi)
    return PipeDream.from_crosses(
        len(pi), ((i, j) for i, c in enumerate(lehmer_code(pi), start=1) for j in range(1, c + 1))
    )


def top_pd(pi: Perm) -> PipeDream:
    pi = check_perm(pi)
    if not avoids(pi, (1, 4, 3, 2)):
        raise PdError(f"{format_perm(pi)} contains 1432, so its slide poset need not have a top")
    P = slide_poset(pi)
    tops = P.maximal()
    if len(tops) != 1:
        raise PdError(f"slide poset of {format_perm(pi)} has {len(tops)} maximal elements")
    top = P.elements[tops[0]]
    crosses = top.crosses
    for i, j in crosses:
        if i > 1 and (i - 1, j) not in crosses:
            raise PdError(f"top pipe dream of {format_perm(pi)} is not top-justified in column {j}")
    return top


def _cnt_ok(a: Sequence[int], n: int) -> bool:
    cnt = [0] * (n + 1)
    for v in a:
        cnt[v] += 1
        # only the counts around v changed
        if 2 <= v <= n - 1 and 1 + cnt[v - 1] < cnt[v]:
            return False
    return True


def is_pseudo_yamanouchi(obj: PipeDream | CompatibleSequence, n: int | None = None) -> bool:
    """1 + cnt(k, j) >= cnt(k, j + 1) for every prefix length k and 1 <= j <= n - 2.

    Raising cnt(k, v) can only break the inequality with j + 1 = v, so one check
    per letter suffices.
    """
    if isinstance(obj, PipeDream):
        n = obj.n
        obj = pd_to_sequence(obj)
    elif n is None:
        n = max(obj.a, default=0) + 1
    return _cnt_ok(obj.a, n)


def simple_slides(D: PipeDream) -> list[PipeDream]:
    """Move one cross from (r, c) to (r - 1, c + 1).

    The three other cells of the 2x2 square must be elbows.  The cell (r, c + 1)
    may fall on the antidiagonal, where every tile is an elbow anyway.
    """
    out = []
    index = _cell_index(D.n)
    for r, c in _crosses(D.n, D.bits):
        if r == 1:
            continue
        if D.has_cross((r - 1, c)) or D.has_cross((r - 1, c + 1)) or D.has_cross((r, c + 1)):
            continue
        bits = D.bits & ~(1 << index[(r, c)]) | 1 << index[(r - 1, c + 1)]
        out.append(PipeDream(D.n, bits))
    return sorted(out)


def inverse_simple_slides(D: PipeDream) -> list[PipeDream]:
    out = []
    index = _cell_index(D.n)
    for r, c in _crosses(D.n, D.bits):
        if c == 1:
            continue
        if D.has_cross((r + 1, c - 1)) or D.has_cross((r, c - 1)) or D.has_cross((r + 1, c)):
            continue
        bits = D.bits & ~(1 << index[(r, c)]) | 1 << index[(r + 1, c - 1)]
        out.append(PipeDream(D.n, bits))
    return sorted(out)


def slide_poset(pi: Perm) -> Poset:
    return closure(bottom_pd(pi), simple_slides)


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise PdError(f"n must lie in 1..{MAX_N}, got {n}")


def enumerate_pd(n: int) -> Iterator[PipeDream]:
    _check_n(n)
    for bits in range(1 << len(staircase_cells(n))):
        yield PipeDream(n, bits)


@lru_cache(maxsize=None)
def pds_by_permutation(n: int) -> dict[Perm, tuple[PipeDream, ...]]:
    """Reduced pipe dreams of size n grouped by permutation (n <= 6)."""
    if not 1 <= n <= 6:
        raise PdError(f"grouping every pipe dream is limited to n <= 6, got {n}")
    groups: dict[Perm, list[PipeDream]] = {}
    for D in enumerate_pd(n):
        w, reduced = _word_permutation(n, D.bits)
        if reduced:
            groups.setdefault(w, []).append(D)
    return {w: tuple(v) for w, v in sorted(groups.items())}


def enumerate_pd_red(pi: Perm) -> tuple[PipeDream, ...]:
    pi = check_perm(pi)
    n = len(pi)
    _check_n(n)
    if n <= 6:
        return pds_by_permutation(n).get(pi, ())
    # every reduced pipe dream of pi has exactly inv(pi) crosses
    index = _cell_index(n)
    out = []
    for cells in combinations(staircase_cells(n), inversions(pi)):
        bits = sum(1 << index[c] for c in cells)
        w, reduced = _word_permutation(n, bits)
        if reduced and w == pi:
            out.append(PipeDream(n, bits))
    return tuple(sorted(out))
