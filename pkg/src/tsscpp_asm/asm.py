"""Alternating sign matrices and their bumpless pipe dreams."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .bpd import Bpd, Tile, tiles_from_matrix
from .perm import Cell, Perm, check_perm
from .poly import Monomial

__all__ = [
    "Asm", "AsmError", "MAX_N", "validate", "enumerate_asm", "count_asm", "nw_zeros",
    "positive_inversions", "inversion_number", "weight", "asm_to_bpd", "bpd_to_asm",
    "permutation_matrix", "to_json", "from_json", "to_text", "from_text",
]

MAX_N = 8


class AsmError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Asm:
    rows: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, cell: Cell) -> int:
        i, j = cell
        return self.rows[i - 1][j - 1]

    def __str__(self) -> str:
        return to_text(self).rstrip("\n")


def validate(matrix: Sequence[Sequence[int]]) -> Asm:
    rows = tuple(tuple(int(v) for v in row) for row in matrix)
    n = len(rows)
    if n == 0:
        raise AsmError("empty matrix")
    for i, row in enumerate(rows, start=1):
        if len(row) != n:
            raise AsmError(f"matrix is not square: row {i} has {len(row)} entries, expected {n}")
        for j, v in enumerate(row, start=1):
            if v not in (-1, 0, 1):
                raise AsmError(f"entry {v} at {(i, j)} is not in {{-1, 0, 1}}")

    def check_line(values, what):
        acc = 0
        for v in values:
            acc += v
            if acc not in (0, 1):
                raise AsmError(f"{what}: nonzero entries do not alternate starting with 1")
        if acc != 1:
            raise AsmError(f"{what} sums to {acc}, expected 1")

    for i, row in enumerate(rows, start=1):
        check_line(row, f"row {i}")
    for j in range(n):
        check_line((row[j] for row in rows), f"column {j + 1}")
    return Asm(rows)


@lru_cache(maxsize=None)
def _transitions(n: int) -> dict[tuple[int, ...], tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]]:
    """state -> sorted (row, next state) pairs.

    A state is the 0/1 vector of column sums so far.  The row is the difference of
    consecutive states and must itself have partial sums in {0, 1}.
    """
    states = list(product((0, 1), repeat=n))
    table = {}
    for s in states:
        moves = []
        for t in states:
            if sum(t) != sum(s) + 1:
                continue
            row = tuple(b - a for a, b in zip(s, t))
            acc, ok = 0, True
            for v in row:
                acc += v
                if acc not in (0, 1):
                    ok = False
                    break
            if ok:
                moves.append((row, t))
        table[s] = tuple(sorted(moves))
    return table


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise AsmError(f"n must lie in 1..{MAX_N}, got {n}")


def enumerate_asm(n: int) -> Iterator[Asm]:
    """All n x n ASMs, lexicographic in the row-major entries (-1 < 0 < 1)."""
    _check_n(n)
    table = _transitions(n)
    stack: list[tuple[int, ...]] = []

    def rec(state):
        if len(stack) == n:
            yield Asm(tuple(stack))
            return
        for row, nxt in table[state]:
            stack.append(row)
            yield from rec(nxt)
            stack.pop()

    yield from rec((0,) * n)


def count_asm(n: int) -> int:
    _check_n(n)
    table = _transitions(n)
    ways = {(0,) * n: 1}
    for _ in range(n):
        nxt: dict[tuple[int, ...], int] = {}
        for s, c in ways.items():
            for _, t in table[s]:
                nxt[t] = nxt.get(t, 0) + c
        ways = nxt
    return ways.get((1,) * n, 0)


def nw_zeros(A: Asm) -> frozenset[Cell]:
    """Zeros with nothing nonzero to their north or west in the partial-sum sense."""
    n = A.n
    col = [0] * n
    out = set()
    for i, row in enumerate(A.rows, start=1):
        acc = 0
        for j, v in enumerate(row, start=1):
            acc += v
            col[j - 1] += v
            if v == 0 and acc == 0 and col[j - 1] == 0:
                out.add((i, j))
    return frozenset(out)


def positive_inversions(A: Asm) -> int:
    return len(nw_zeros(A))


def inversion_number(A: Asm) -> int:
    """sum of A[i][j] * A[k][l] over i < k, j > l."""
    n = A.n
    total = 0
    for i in range(n):
        for j in range(n):
            a = A.rows[i][j]
            if a:
                for k in range(i + 1, n):
                    for l in range(j):
                        total += a * A.rows[k][l]
    return total


def weight(A: Asm) -> Monomial:
    return Monomial.from_rows(i for i, _ in nw_zeros(A))


def asm_to_bpd(A: Asm) -> Bpd:
    return tiles_from_matrix(A.rows)


def bpd_to_asm(D: Bpd) -> Asm:
    return Asm(tuple(
        tuple(1 if t == Tile.SE_ELBOW else -1 if t == Tile.NW_ELBOW else 0 for t in row)
        for row in D.tiles
    ))


def permutation_matrix(pi: Perm) -> Asm:
    pi = check_perm(pi)
    n = len(pi)
    return Asm(tuple(tuple(1 if pi[i] == j + 1 else 0 for j in range(n)) for i in range(n)))


def to_json(A: Asm) -> str:
    return json.dumps({"n": A.n, "rows": [list(r) for r in A.rows]})


def from_json(text: str | dict) -> Asm:
    data = json.loads(text) if isinstance(text, str) else text
    try:
        rows = data["rows"]
    except (KeyError, TypeError):
        raise AsmError('ASM JSON needs a "rows" field') from None
    A = validate(rows)
    if "n" in data and data["n"] != A.n:
        raise AsmError(f'"n" is {data["n"]} but the matrix is {A.n} x {A.n}')
    return A


def to_text(A: Asm) -> str:
    return "\n".join(" ".join(str(v) for v in row) for row in A.rows) + "\n"


def from_text(text: str) -> Asm:
    try:
        rows = [[int(tok) for tok in line.split()] for line in text.strip().splitlines() if line.strip()]
    except ValueError as exc:
        raise AsmError(f"malformed ASM text: {exc}") from None
    return validate(rows)
