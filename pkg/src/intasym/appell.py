"""Appell-type polynomial families and the moment coefficients beta_nu.

A weight function ``f`` enters the expansion only through the coefficients
``beta_nu`` of ``phi_r = int_0^1 f(u) u^r du ~ sum beta_nu / r^(nu+1)``.
They can be produced two independent ways:

* from an Appell form ``f(u) = b * A(c ln u)``:
  ``beta_nu = b (-1)^nu c^nu P_nu(1/c)``;
* from derivative data at u = 1:
  ``beta_nu = (-1)^nu sum_l {nu+1, l+1} f^(l)(1)``.

Every :class:`BetaSequence` is stored as ``scale * core`` where ``core`` is
exact whenever the inputs are, and ``scale`` is a common factor such as
``sqrt(2/pi)`` that may be irrational. Because everything downstream is linear
in beta, exact decisions (symmetry tests) can be made on ``core`` alone.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from . import series as ps
from .bigfloat import DEFAULT_PRECISION, context, is_exact, to_mpf
from .errors import DomainError, InsufficientDerivatives, NonEvaluableF
from .exactnum import RationalPolynomial, binomial, stirling_second
from .scalars import Constant, parse_scalar

GUARD_BITS = 64
REFLECTION_CHECK_ORDER = 12


class Kind(str, enum.Enum):
    MONOMIAL = "monomial"
    BERNOULLI = "bernoulli"
    EULER = "euler"
    GENOCCHI = "genocchi"
    HERMITE = "hermite_probabilist"

    @classmethod
    def parse(cls, name: str) -> "Kind":
        aliases = {"hermite": cls.HERMITE}
        if name in aliases:
            return aliases[name]
        return cls(name)


@dataclass(frozen=True)
class AppellFamily:
    """A polynomial family identified by its seed kind and order ``d``.

    ``d`` is a Fraction for rational orders (exact coefficients) or an mpmath
    float for genuinely real orders (coefficients computed in floating point).
    It is ignored for monomials and Hermite.
    """

    kind: Kind
    d: object = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind.parse(self.kind) if isinstance(self.kind, str) else self.kind)
        d = self.d
        if isinstance(d, (int, float, str)) and not isinstance(d, bool):
            d = parse_scalar(d)
        if isinstance(d, Constant):
            raise DomainError("Appell order d must be rational or a multiprecision float")
        if self.kind in (Kind.MONOMIAL, Kind.HERMITE):
            d = Fraction(0)
        object.__setattr__(self, "d", d)

    @property
    def exact(self) -> bool:
        return is_exact(self.d)

    def seed_series(self, n: int, ctx=None) -> list:
        """First ``n`` Taylor coefficients of the seed ``A(t)``."""
        if n <= 0:
            return []
        kind, d = self.kind, self.d
        if not self.exact and ctx is not None:
            d = to_mpf(d, ctx)
        if kind is Kind.MONOMIAL:
            return ps._pad([Fraction(1)], n)
        if kind is Kind.HERMITE:
            out = [Fraction(0)] * n
            for k in range(0, n, 2):
                out[k] = Fraction((-1) ** (k // 2), 2 ** (k // 2) * math.factorial(k // 2))
            return out
        if kind is Kind.EULER:
            # 2/(1+e^t) = 1/((1+e^t)/2)
            half = [Fraction(1)] + [Fraction(1, 2 * math.factorial(k)) for k in range(1, n)]
            return ps.power(ps.reciprocal(half, n), d, n)
        if kind is Kind.BERNOULLI:
            # t/(e^t-1) = 1/((e^t-1)/t)
            base = [Fraction(1, math.factorial(k + 1)) for k in range(n)]
            return ps.power(ps.reciprocal(base, n), d, n)
        if kind is Kind.GENOCCHI:
            if not (is_exact(d) and Fraction(d).denominator == 1 and d >= 0):
                raise DomainError(
                    f"genocchi seed (2t/(1+e^t))^d is a power series only for integer d >= 0, got d={d}")
            k = int(d)
            half = [Fraction(1)] + [Fraction(1, 2 * math.factorial(j)) for j in range(1, n)]
            body = ps.power(ps.reciprocal(half, n), k, n)
            return ([Fraction(0)] * k + body)[:n]
        raise AssertionError(kind)

    def seed_value(self, t, ctx):
        """Pointwise value of ``A(t)`` at a real ``t`` (mpmath float in ``ctx``)."""
        kind = self.kind
        if kind is Kind.MONOMIAL:
            return ctx.one
        if kind is Kind.HERMITE:
            return ctx.exp(-t * t / 2)
        d = to_mpf(self.d, ctx)
        if kind is Kind.EULER:
            base = 2 / (2 + ctx.expm1(t))
        elif kind is Kind.BERNOULLI:
            base = ctx.one if t == 0 else t / ctx.expm1(t)
        else:
            base = 2 * t / (2 + ctx.expm1(t))
            if is_exact(self.d) and Fraction(self.d).denominator == 1:
                return base ** int(self.d)
        if base == 0:
            return ctx.zero
        return ctx.exp(d * ctx.log(base))

    def __str__(self):
        if self.kind in (Kind.MONOMIAL, Kind.HERMITE):
            return self.kind.value
        return f"{self.kind.value}(d={self.d})"


@dataclass(frozen=True)
class AppellForm:
    """``f(u) = b * A(c * ln u)``."""

    family: AppellFamily
    b: object
    c: object

    def __post_init__(self):
        b = parse_scalar(self.b) if not isinstance(self.b, (Fraction, Constant)) else self.b
        c = parse_scalar(self.c) if not isinstance(self.c, (Fraction, Constant)) else self.c
        if isinstance(c, Constant):
            raise DomainError("the log-scale c must be rational")
        if c == 0:
            raise DomainError("AppellForm needs c != 0")
        if isinstance(b, Fraction) and b == 0:
            raise DomainError("AppellForm needs b != 0")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def evaluate(self, u, ctx):
        t = to_mpf(self.c, ctx) * ctx.log(u)
        return to_mpf(self.b, ctx) * self.family.seed_value(t, ctx)


@dataclass(frozen=True)
class DerivativeForm:
    """Derivative data ``f(1), f'(1), ..., f^(N)(1)``, times an optional common ``scale``.

    ``evaluator(u, ctx)`` may be supplied when ``f`` is known pointwise; without
    it the function cannot be integrated numerically.
    """

    values_at_1: tuple
    scale: object = Fraction(1)
    evaluator: Optional[Callable] = field(default=None, compare=False)

    def __post_init__(self):
        vals = tuple(v if not isinstance(v, (int, float, str)) else parse_scalar(v)
                     for v in self.values_at_1)
        if any(isinstance(v, Constant) for v in vals):
            raise DomainError("derivative values must be rational; put irrational factors in scale")
        object.__setattr__(self, "values_at_1", vals)
        sc = self.scale
        if not isinstance(sc, (Fraction, Constant)):
            sc = parse_scalar(sc)
        object.__setattr__(self, "scale", sc)

    def evaluate(self, u, ctx):
        if self.evaluator is None:
            raise NonEvaluableF("derivative-only description of f has no pointwise evaluator")
        return self.evaluator(u, ctx)


FDescriptor = Union[AppellForm, DerivativeForm]


@dataclass(frozen=True)
class BetaSequence:
    """``beta_nu = scale * core[nu]`` for ``nu = 0..N``."""

    core: tuple
    scale: object = Fraction(1)
    provenance: str = "appell"

    def __len__(self):
        return len(self.core)

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in self.core)

    @property
    def scale_is_one(self) -> bool:
        return isinstance(self.scale, Fraction) and self.scale == 1

    def values(self, ctx=None) -> list:
        """Numeric ``beta_nu``; exact Fractions when possible and no ``ctx`` is given."""
        if ctx is None:
            if not isinstance(self.scale, Fraction):
                raise ValueError("irrational scale needs a precision context")
            return [self.scale * v for v in self.core]
        s = to_mpf(self.scale, ctx)
        return [s * to_mpf(v, ctx) for v in self.core]

    def __getitem__(self, nu):
        return self.core[nu]


def _parse_family(family) -> AppellFamily:
    return family if isinstance(family, AppellFamily) else AppellFamily(*family)


def appell_polynomials(family: AppellFamily, n_max: int, precision: int = DEFAULT_PRECISION):
    """``P_0 .. P_{n_max}`` from ``e^{xt} A(t) = sum P_n(x) t^n / n!``."""
    if n_max < 0:
        raise DomainError("n_max must be non-negative")
    family = _parse_family(family)
    ctx = None if family.exact else context(precision + GUARD_BITS)
    # one guard order beyond n_max
    a = family.seed_series(n_max + 2, ctx)
    s = [math.factorial(j) * a[j] for j in range(n_max + 1)]
    polys = []
    for n in range(n_max + 1):
        polys.append(RationalPolynomial(binomial(n, k) * s[n - k] for k in range(n + 1)))
    return polys


def _as_fraction_or_mpf(x, ctx):
    return x if is_exact(x) else to_mpf(x, ctx)


def beta_from_appell(f: AppellForm, n_max: int, precision: int = DEFAULT_PRECISION) -> BetaSequence:
    polys = appell_polynomials(f.family, n_max, precision)
    c = f.c
    inv_c = 1 / c
    core = []
    for nu, P in enumerate(polys):
        core.append((-1) ** nu * c ** nu * P(inv_c))
    if not f.family.exact:
        ctx = context(precision)
        core = [to_mpf(v, ctx) for v in core]
    if isinstance(f.b, Fraction):
        return BetaSequence(tuple(f.b * v for v in core), Fraction(1), "appell")
    return BetaSequence(tuple(core), f.b, "appell")


def beta_from_derivatives(values_at_1: Sequence, n_max: int, scale=Fraction(1)) -> BetaSequence:
    """``beta_nu = (-1)^nu sum_{l<=nu} {nu+1, l+1} f^(l)(1)`` for ``nu <= n_max``."""
    if isinstance(values_at_1, DerivativeForm):
        scale = values_at_1.scale
        values_at_1 = values_at_1.values_at_1
    if len(values_at_1) < n_max + 1:
        raise InsufficientDerivatives(
            f"need f^(0..{n_max})(1), got {len(values_at_1)} values")
    vals = [Fraction(v) if isinstance(v, int) else v for v in values_at_1]
    core = []
    for nu in range(n_max + 1):
        acc = sum((stirling_second(nu + 1, l + 1) * vals[l] for l in range(nu + 1)), Fraction(0))
        core.append((-1) ** nu * acc)
    if isinstance(scale, Fraction) and scale != 1:
        return BetaSequence(tuple(scale * v for v in core), Fraction(1), "derivatives")
    return BetaSequence(tuple(core), scale, "derivatives")


def beta_sequence(f: FDescriptor, n_max: int, precision: int = DEFAULT_PRECISION) -> BetaSequence:
    if isinstance(f, AppellForm):
        return beta_from_appell(f, n_max, precision)
    return beta_from_derivatives(f, n_max)


def _reflection_candidate(family: AppellFamily):
    kind = family.kind
    if kind in (Kind.MONOMIAL, Kind.HERMITE):
        return Fraction(0)
    if kind in (Kind.BERNOULLI, Kind.EULER):
        return family.d
    if kind is Kind.GENOCCHI:
        d = family.d
        if is_exact(d) and Fraction(d).denominator == 1 and int(d) % 2 == 0:
            return d
        return None
    return None


def reflection_omega(family: AppellFamily, precision: int = DEFAULT_PRECISION):
    """The shift ``omega`` with ``A(-t) = e^{omega t} A(t)``, or None.

    The tabulated value is confirmed on Taylor coefficients through order 12
    (exactly for rational d, to working precision otherwise).
    """
    family = _parse_family(family)
    omega = _reflection_candidate(family)
    if omega is None:
        return None
    n = REFLECTION_CHECK_ORDER + 1
    ctx = None if family.exact else context(precision + GUARD_BITS)
    a = family.seed_series(n, ctx)
    om = omega if family.exact else to_mpf(omega, ctx)
    lhs = ps.mul([(-1) ** k * a[k] for k in range(n)], ps.exp_series(n, -om), n)
    if family.exact:
        ok = all(x == y for x, y in zip(lhs, a))
    else:
        tol = ctx.ldexp(1, -precision)
        ok = all(abs(x - y) <= tol * (1 + abs(y)) for x, y in zip(lhs, a))
    return omega if ok else None
