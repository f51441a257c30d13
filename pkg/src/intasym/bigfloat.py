"""Multiprecision plumbing.

Every precision gets its own :class:`mpmath.ctx_mp.MPContext`, created once
and never mutated afterwards, so numbers built at different precisions never
share the global ``mpmath.mp`` state and callers on different threads cannot
clobber each other's working precision.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from mpmath.ctx_mp import MPContext

DEFAULT_PRECISION = 256

_contexts: dict[int, MPContext] = {}
_lock = threading.Lock()


def context(bits: int = DEFAULT_PRECISION) -> MPContext:
    """Shared, read-only mpmath context working at ``bits`` of precision."""
    bits = int(bits)
    if bits < 16:
        raise ValueError(f"precision must be at least 16 bits, got {bits}")
    ctx = _contexts.get(bits)
    if ctx is None:
        with _lock:
            ctx = _contexts.get(bits)
            if ctx is None:
                ctx = MPContext()
                ctx.prec = bits
                _contexts[bits] = ctx
    return ctx


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def to_mpf(x, ctx: MPContext):
    """Convert ints, Fractions, floats, mpfs and symbolic constants to ``ctx``."""
    if isinstance(x, Rational):
        x = Fraction(x)
        if x.denominator == 1:
            return ctx.mpf(x.numerator)
        return ctx.mpf(x.numerator) / x.denominator
    evaluate = getattr(x, "evaluate", None)
    if evaluate is not None:
        return evaluate(ctx)
    return ctx.mpf(x)


def ulp(x, ctx: MPContext):
    """Half a unit in the last place of ``x`` (at least the absolute floor)."""
    return abs(x) * ctx.ldexp(1, -ctx.prec) + ctx.ldexp(1, -2 * ctx.prec)


@dataclass(frozen=True)
class BigFloat:
    """A multiprecision value together with a conservative absolute error bound."""

    value: object
    error: object
    ctx: MPContext

    @classmethod
    def exact(cls, x, ctx: MPContext) -> "BigFloat":
        v = to_mpf(x, ctx)
        err = ctx.zero if is_exact(x) and _representable(x, ctx.prec) else ulp(v, ctx)
        return cls(v, err, ctx)

    @property
    def prec(self) -> int:
        return self.ctx.prec

    def _coerce(self, other) -> "BigFloat":
        if isinstance(other, BigFloat):
            return other
        return BigFloat.exact(other, self.ctx)

    def __add__(self, other):
        o = self._coerce(other)
        v = self.value + o.value
        return BigFloat(v, self.error + o.error + ulp(v, self.ctx), self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return BigFloat(-self.value, self.error, self.ctx)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        v = self.value * o.value
        err = (abs(self.value) * o.error + abs(o.value) * self.error
               + self.error * o.error + ulp(v, self.ctx))
        return BigFloat(v, err, self.ctx)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if abs(o.value) <= o.error:
            raise ZeroDivisionError("divisor not bounded away from zero")
        v = self.value / o.value
        lo = abs(o.value) - o.error
        err = (self.error + abs(v) * o.error) / lo + ulp(v, self.ctx)
        return BigFloat(v, err, self.ctx)

    def __abs__(self):
        return BigFloat(abs(self.value), self.error, self.ctx)

    def __float__(self):
        return float(self.value)

    def contains(self, x, slack=1) -> bool:
        """True when ``x`` lies within ``slack`` error bounds of the value."""
        return abs(self.value - to_mpf(x, self.ctx)) <= slack * self.error

    def close_to(self, other: "BigFloat", slack=1) -> bool:
        o = self._coerce(other)
        return abs(self.value - o.value) <= slack * (self.error + o.error)

    def digits(self, n: int | None = None) -> str:
        if n is None:
            n = int(self.ctx.prec * 0.30103)
        return self.ctx.nstr(self.value, n, strip_zeros=False)

    def __repr__(self):
        return f"BigFloat({self.ctx.nstr(self.value, 25)} ± {self.ctx.nstr(self.error, 3)})"


def _representable(x, bits: int) -> bool:
    x = Fraction(x)
    d = x.denominator
    return d & (d - 1) == 0 and abs(x.numerator).bit_length() <= bits


def bigsum(items, ctx: MPContext) -> BigFloat:
    total = BigFloat(ctx.zero, ctx.zero, ctx)
    for it in items:
        total = total + it
    return total
