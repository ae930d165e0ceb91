"""
TSSCPP boolean triangles.

A triangle of order n has rows i = 1..n-1; row i holds b[i][j] for
j = n-i..n-1, stored left to right.  Text form is one line per row, e.g. the
order-4 triangle ``1 / 01 / 100`` is written ``"1\\n01\\n100\\n"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Iterator, Sequence

from .pd import PipeDream, reduced_permutation
from .perm import Perm, check_perm
from .poly import Monomial

__all__ = [
    "BooleanTriangle", "TriangleError", "MAX_N", "validate", "enumerate_triangles",
    "count_triangles", "weight", "triangle_to_pd", "pd_to_triangle", "tsscpp_red",
    "triangles_by_permutation", "andrews_count", "is_permutation_triangle",
    "to_text", "from_text",
]

MAX_N = 7


class TriangleError(ValueError):
    def __init__(self, message: str, violation: tuple[int, int] | None = None):
        super().__init__(message)
        self.violation = violation


@dataclass(frozen=True, order=True)
class BooleanTriangle:
    n: int
    rows: tuple[tuple[int, ...], ...]

    def b(self, i: int, j: int) -> int:
        """Entry b_{i,j}, defined for n - i <= j <= n - 1."""
        if not (1 <= i <= self.n - 1 and self.n - i <= j <= self.n - 1):
            raise IndexError(f"b_{{{i},{j}}} is outside a triangle of order {self.n}")
        return self.rows[i - 1][j - (self.n - i)]

    def ones(self) -> list[tuple[int, int]]:
        n = self.n
        return [(i, n - i + k) for i, row in enumerate(self.rows, start=1) for k, v in enumerate(row) if v]

    def __str__(self) -> str:
        return to_text(self).rstrip("\n")


def _first_violation(n: int, rows: Sequence[Sequence[int]]) -> tuple[int, int] | None:
    """First failing (i, j)-inequality, by i and then j.

    Writing C(d, i) for the sum of b_{k,d} over k <= i, the (i, j)-inequality
    says 1 + C(n-j-1, i) >= C(n-j, i).
    """
    col = [0] * n  # col[d] = C(d, i) for the rows seen so far
    for i, row in enumerate(rows, start=1):
        for k, v in enumerate(row):
            col[n - i + k] += v
        for j in range(1, i):
            d = n - j
            if 1 + col[d - 1] < col[d]:
                return (i, j)
    return None


def validate(rows: Sequence[Sequence[int]], n: int | None = None) -> BooleanTriangle:
    rows = tuple(tuple(int(v) for v in row) for row in rows)
    if n is None:
        n = len(rows) + 1
    if len(rows) != n - 1:
        raise TriangleError(f"a triangle of order {n} has {n - 1} rows, got {len(rows)}")
    for i, row in enumerate(rows, start=1):
        if len(row) != i:
            raise TriangleError(f"row {i} has {len(row)} entries, expected {i}")
        if any(v not in (0, 1) for v in row):
            raise TriangleError(f"row {i} has an entry outside {{0, 1}}")
    bad = _first_violation(n, rows)
    if bad is not None:
        raise TriangleError(f"the {bad}-inequality fails", bad)
    return BooleanTriangle(n, rows)


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise TriangleError(f"n must lie in 1..{MAX_N}, got {n}")


@lru_cache(maxsize=None)
def _row_choices(i: int) -> tuple[tuple[int, ...], ...]:
    return tuple(product((0, 1), repeat=i))


def enumerate_triangles(n: int) -> Iterator[BooleanTriangle]:
    """All triangles of order n, rows chosen depth first in lexicographic order."""
    _check_n(n)
    col = [0] * n
    stack: list[tuple[int, ...]] = []

    def rec(i: int):
        if i == n:
            yield BooleanTriangle(n, tuple(stack))
            return
        for row in _row_choices(i):
            for k, v in enumerate(row):
                col[n - i + k] += v
            if all(1 + col[n - j - 1] >= col[n - j] for j in range(1, i)):
                stack.append(row)
                yield from rec(i + 1)
                stack.pop()
            for k, v in enumerate(row):
                col[n - i + k] -= v

    yield from rec(1)


def count_triangles(n: int) -> int:
    """Same count as enumerate_triangles, by dynamic programming on column sums."""
    _check_n(n)
    ways = {(0,) * n: 1}
    for i in range(1, n):
        nxt: dict[tuple[int, ...], int] = {}
        for col, c in ways.items():
            for row in _row_choices(i):
                new = list(col)
                for k, v in enumerate(row):
                    new[n - i + k] += v
                if all(1 + new[n - j - 1] >= new[n - j] for j in range(1, i)):
                    key = tuple(new)
                    nxt[key] = nxt.get(key, 0) + c
        ways = nxt
    return sum(ways.values())


def andrews_count(n: int) -> int:
    """prod_{j=0}^{n-1} (3j+1)! / (n+j)!"""
    num, den = 1, 1
    for j in range(n):
        num *= factorial(3 * j + 1)
        den *= factorial(n + j)
    return num // den


def weight(T: BooleanTriangle) -> Monomial:
    return Monomial.from_rows(T.n - i for i, _ in T.ones())


def is_permutation_triangle(T: BooleanTriangle) -> bool:
    """Rows weakly decreasing, i.e. the ones are left-justified."""
    return all(all(a >= b for a, b in zip(row, row[1:])) for row in T.rows)


def triangle_to_pd(T: BooleanTriangle) -> PipeDream:
    """Flip vertically and left-justify: cross at (i, j) iff b_{n-i, i+j-1} = 1."""
    n = T.n
    return PipeDream.from_crosses(n, ((n - p, q + 1 - (n - p)) for p, q in T.ones()))


def pd_to_triangle(D: PipeDream) -> BooleanTriangle:
    n = D.n
    rows = [[0] * p for p in range(1, n)]
    for i, j in D.crosses:
        p, q = n - i, i + j - 1
        rows[p - 1][q - (n - p)] = 1
    try:
        return validate(rows, n)
    except TriangleError as exc:
        raise TriangleError(f"pipe dream is not pseudo-Yamanouchi: {exc}", exc.violation) from None


@lru_cache(maxsize=None)
def triangles_by_permutation(n: int) -> dict[Perm, tuple[BooleanTriangle, ...]]:
    """Triangles whose pipe dream is reduced, grouped by that permutation."""
    groups: dict[Perm, list[BooleanTriangle]] = {}
    for T in enumerate_triangles(n):
        w = reduced_permutation(triangle_to_pd(T))
        if w is not None:
            groups.setdefault(w, []).append(T)
    return {w: tuple(v) for w, v in sorted(groups.items())}


def tsscpp_red(pi: Perm) -> tuple[BooleanTriangle, ...]:
    pi = check_perm(pi)
    _check_n(len(pi))
    return triangles_by_permutation(len(pi)).get(pi, ())


def to_text(T: BooleanTriangle) -> str:
    return "".join("".join(str(v) for v in row) + "\n" for row in T.rows)


def from_text(text: str, n: int | None = None) -> BooleanTriangle:
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if any(set(line) - {"0", "1"} for line in lines):
        raise TriangleError("triangle rows must be 0/1 strings")
    if n is None:
        n = len(lines) + 1
    return validate([[int(ch) for ch in line] for line in lines], n)
