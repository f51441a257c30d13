"""Exact integer and rational combinatorics.

Stirling numbers are served from triangular tables that grow on demand.
Growth happens under a lock; rows are append-only, so readers always see
either a complete row or none.
"""
from __future__ import annotations

import functools
import math
import threading
from fractions import Fraction
from typing import Iterable

__all__ = [
    "stirling_first_unsigned",
    "stirling_second",
    "binomial",
    "truncated_mzv_ones",
    "bernoulli_number",
    "RationalPolynomial",
]


class _TriangleTable:
    """Row-wise memo of a Stirling-type recurrence T(n+1, k) = a(n, k)*T(n, k) + T(n, k-1)."""

    def __init__(self, weight):
        self._weight = weight
        self._rows: list[list[int]] = [[1]]
        self._lock = threading.Lock()

    def row(self, n: int) -> list[int]:
        rows = self._rows
        if n < len(rows):
            return rows[n]
        with self._lock:
            while len(rows) <= n:
                m = len(rows) - 1
                prev = rows[m]
                new = [0] * (m + 2)
                for k in range(1, m + 2):
                    below = prev[k] if k <= m else 0
                    new[k] = self._weight(m, k) * below + prev[k - 1]
                rows.append(new)
        return rows[n]

    def __call__(self, n: int, k: int) -> int:
        if n < 0 or k < 0:
            raise ValueError(f"indices must be non-negative, got ({n}, {k})")
        if k > n:
            return 0
        return self.row(n)[k]


_first = _TriangleTable(lambda m, k: m)
_second = _TriangleTable(lambda m, k: k)


def stirling_first_unsigned(m: int, k: int) -> int:
    """Unsigned Stirling cycle number ``[m k]``."""
    return _first(m, k)


def stirling_second(n: int, k: int) -> int:
    """Stirling partition number ``{n k}``."""
    return _second(n, k)


def binomial(n: int, k: int) -> int:
    """``C(n, k)``, returning 0 outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def truncated_mzv_ones(N: int, p: int) -> Fraction:
    """``zeta_N({1}_{p-1})``, the elementary symmetric polynomial
    ``e_{p-1}(1, 1/2, ..., 1/N)``; equals 1 when ``p == 1``."""
    if N < 0 or p < 1:
        raise ValueError(f"need N >= 0 and p >= 1, got N={N}, p={p}")
    e = [Fraction(1)] + [Fraction(0)] * (p - 1)
    for j in range(1, N + 1):
        inv = Fraction(1, j)
        for r in range(p - 1, 0, -1):
            e[r] += e[r - 1] * inv
    return e[p - 1]


@functools.lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """``B_n`` with the convention ``B_1 = -1/2``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2:
        return Fraction(0)
    acc = sum((binomial(n + 1, k) * bernoulli_number(k) for k in range(n)), Fraction(0))
    return -acc / (n + 1)


class RationalPolynomial:
    """Dense univariate polynomial, coefficients in ascending degree.

    Coefficients are normally :class:`fractions.Fraction`; multiprecision floats
    are tolerated so the same container can hold Appell families with a real
    order parameter.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if not isinstance(c, int) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "RationalPolynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "RationalPolynomial":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = Fraction(0) if not self.coeffs else self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, RationalPolynomial):
            other = RationalPolynomial([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, RationalPolynomial):
            other = RationalPolynomial([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPolynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalPolynomial):
            return RationalPolynomial(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def compose_affine(self, a, b) -> "RationalPolynomial":
        """The polynomial ``x -> self(a*x + b)``."""
        lin = RationalPolynomial([b, a])
        acc = RationalPolynomial()
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)

