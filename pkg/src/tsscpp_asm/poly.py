"""Monomials and polynomials in x_1, x_2, ... with exact integer coefficients."""

from __future__ import annotations

from collections import Counter
from typing import Callable, Iterable, Mapping


class Monomial:
    """A product of variables x_i, stored as sorted ``(i, exponent)`` pairs."""

    __slots__ = ("_exps", "_hash")

    def __init__(self, exponents: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        merged: dict[int, int] = {}
        for i, e in items:
            if e < 0:
                raise ValueError(f"negative exponent {e} on x{i}")
            if e:
                merged[i] = merged.get(i, 0) + e
        self._exps = tuple(sorted(merged.items()))
        self._hash = hash(self._exps)

    @classmethod
    def from_rows(cls, rows: Iterable[int]) -> "Monomial":
        """The monomial prod x_i over a multiset of row indices."""
        return cls(Counter(rows))

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        text = text.strip()
        if text == "1":
            return cls()
        exps: dict[int, int] = {}
        for factor in text.split("*"):
            var, _, power = factor.strip().partition("^")
            if not var.startswith("x") or not var[1:].isdigit():
                raise ValueError(f"malformed monomial factor {factor!r}")
            i = int(var[1:])
            exps[i] = exps.get(i, 0) + (int(power) if power else 1)
        return cls(exps)

    @property
    def exponents(self) -> dict[int, int]:
        return dict(self._exps)

    def exponent(self, i: int) -> int:
        return dict(self._exps).get(i, 0)

    def degree(self) -> int:
        return sum(e for _, e in self._exps)

    def row_vector(self, n: int) -> tuple[int, ...]:
        """Exponents of x_1..x_n as a tuple."""
        exps = dict(self._exps)
        return tuple(exps.get(i, 0) for i in range(1, n + 1))

    def substitute(self, index_map: Callable[[int], int]) -> "Monomial":
        """Rename variables: x_i becomes x_{index_map(i)}."""
        return Monomial((index_map(i), e) for i, e in self._exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(list(self._exps) + list(other._exps))

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self._exps == other._exps

    def __lt__(self, other: "Monomial") -> bool:
        return self._exps < other._exps

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if not self._exps:
            return "1"
        return "*".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in self._exps)

    def __repr__(self) -> str:
        return f"Monomial({str(self)!r})"


class WeightPolynomial:
    """Sparse polynomial: Monomial -> positive integer coefficient.

    Doubles as a weight multiset (the coefficient is a multiplicity).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self.terms: dict[Monomial, int] = {}
        for m, c in (terms or {}).items():
            if c < 0:
                raise ValueError("coefficients must be nonnegative")
            if c:
                self.terms[m] = c

    @classmethod
    def from_monomials(cls, monomials: Iterable[Monomial]) -> "WeightPolynomial":
        return cls(Counter(monomials))

    def coefficient(self, m: Monomial) -> int:
        return self.terms.get(m, 0)

    def total(self) -> int:
        """Sum of coefficients, i.e. the size of the underlying multiset."""
        return sum(self.terms.values())

    def dominated_by(self, other: "WeightPolynomial") -> bool:
        return all(c <= other.coefficient(m) for m, c in self.terms.items())

    def __add__(self, other: "WeightPolynomial") -> "WeightPolynomial":
        out = Counter(self.terms)
        out.update(other.terms)
        return WeightPolynomial(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, WeightPolynomial) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda t: t[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: t[0]):
            if c == 1:
                parts.append(str(m))
            elif m == Monomial():
                parts.append(str(c))
            else:
                parts.append(f"{c}*{m}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"WeightPolynomial({str(self)!r})"
