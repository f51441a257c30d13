"""Truncated power series as plain coefficient lists.

All routines take ``n``, the number of coefficients to keep, and work for any
field of scalars that supports ``+ - * /`` with ints (Fractions or mpmath
floats). Exactness is preserved whenever the inputs are exact.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Series = list


def _pad(a: Sequence, n: int) -> Series:
    a = list(a[:n])
    return a + [Fraction(0)] * (n - len(a))


def mul(a: Sequence, b: Sequence, n: int) -> Series:
    a, b = _pad(a, n), _pad(b, n)
    out = [Fraction(0)] * n
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(n - i):
            out[i + j] += ai * b[j]
    return out


def scale(a: Sequence, c) -> Series:
    return [c * x for x in a]


def add(a: Sequence, b: Sequence, n: int) -> Series:
    a, b = _pad(a, n), _pad(b, n)
    return [x + y for x, y in zip(a, b)]


def reciprocal(a: Sequence, n: int) -> Series:
    a = _pad(a, n)
    if a[0] == 0:
        raise ZeroDivisionError("series with zero constant term has no reciprocal")
    out = [Fraction(0)] * n
    inv0 = 1 / a[0] if not isinstance(a[0], int) else Fraction(1, a[0])
    out[0] = inv0
    for k in range(1, n):
        acc = sum((a[j] * out[k - j] for j in range(1, k + 1)), Fraction(0))
        out[k] = -acc * inv0
    return out


def derivative(a: Sequence) -> Series:
    return [k * a[k] for k in range(1, len(a))]


def integral(a: Sequence, n: int) -> Series:
    """Antiderivative with zero constant term, truncated to ``n`` coefficients."""
    out = [Fraction(0)] * n
    for k in range(min(len(a), n - 1)):
        out[k + 1] = a[k] / (k + 1) if not isinstance(a[k], int) else Fraction(a[k], k + 1)
    return out


def log1(a: Sequence, n: int) -> Series:
    """``log(a)`` for a series with constant term 1."""
    a = _pad(a, n)
    if a[0] != 1:
        raise ValueError("log1 needs constant term 1")
    return integral(mul(derivative(a), reciprocal(a, n), n), n)


def exp0(a: Sequence, n: int) -> Series:
    """``exp(a)`` for a series with zero constant term (via ``E' = a' E``)."""
    a = _pad(a, n)
    if a[0] != 0:
        raise ValueError("exp0 needs constant term 0")
    da = derivative(a)
    out = [Fraction(0)] * n
    out[0] = Fraction(1)
    for k in range(1, n):
        acc = sum((da[j] * out[k - 1 - j] for j in range(k) if j < len(da)), Fraction(0))
        out[k] = acc / k
    return out


def power(a: Sequence, d, n: int) -> Series:
    """``a**d``; integer ``d`` allows any nonzero constant term, otherwise it must be 1."""
    a = _pad(a, n)
    if isinstance(d, int) or (isinstance(d, Fraction) and d.denominator == 1):
        d = int(d)
        base = a if d >= 0 else reciprocal(a, n)
        out = _pad([Fraction(1)], n)
        for _ in range(abs(d)):
            out = mul(out, base, n)
        return out
    if a[0] != 1:
        raise ValueError("non-integer power needs constant term 1")
    return exp0(scale(log1(a, n), d), n)


def exp_series(n: int, c=1) -> Series:
    """Taylor coefficients of ``exp(c*t)``."""
    return [Fraction(1, math.factorial(k)) * c ** k for k in range(n)]


def log1p_series(n: int) -> Series:
    """Taylor coefficients of ``log(1 + h)``."""
    return [Fraction(0)] + [Fraction((-1) ** (k + 1), k) for k in range(1, n)]


def taylor_to_derivatives(a: Sequence) -> list:
    """Convert Taylor coefficients ``a_k`` into derivative values ``k! a_k``."""
    return [math.factorial(k) * c for k, c in enumerate(a)]
