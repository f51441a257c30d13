"""Worked examples: exact descriptors of f together with closed-form limits.

Each entry is a function of ``w`` (most are only published for one default
``w``) and produces everything :class:`~intasym.expansion.IntegralSpec` needs.
Published tables are attached only at the entry's default ``(q, w)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import series
from .appell import AppellFamily, AppellForm, DerivativeForm, Kind
from .bigfloat import DEFAULT_PRECISION, is_exact
from .errors import DomainError
from .expansion import IntegralSpec
from .scalars import Constant, parse_scalar

# derivative data shipped for derivative-form entries, whatever the requested order
MIN_DERIVATIVES = 13


@dataclass(frozen=True)
class Built:
    f: object
    limit: Optional[tuple] = None
    half_line: Optional[Callable] = None
    published: Optional[dict] = None


@dataclass(frozen=True)
class RegistryEntry:
    name: str
    q: Fraction
    w: Fraction
    summary: str
    build: Callable[[Fraction, int], Built]


def _sincos_build(w, n_deriv):
    # f(1+h) = 2^(-1/2) (1 + h + h^2/2)^(-3/2)
    taylor = series.power([Fraction(1), Fraction(1), Fraction(1, 2)], Fraction(-3, 2), n_deriv)
    f = DerivativeForm(tuple(series.taylor_to_derivatives(taylor)), scale=Constant("1/sqrt(2)"),
                       evaluator=lambda u, ctx: 2 * (1 + u * u) ** ctx.mpf(-1.5))
    return Built(
        f=f,
        limit=("sqrt(2)", lambda ctx: ctx.sqrt(2)),
        published={
            2: ("sqrt(2)*pi^2/24", lambda ctx: ctx.sqrt(2) * ctx.pi ** 2 / 24),
            3: ("sqrt(2)*zeta(3)/4", lambda ctx: ctx.sqrt(2) * ctx.zeta(3) / 4),
            4: ("-sqrt(2)*pi^4/1152", lambda ctx: -ctx.sqrt(2) * ctx.pi ** 4 / 1152),
            5: ("-sqrt(2)*pi^2*zeta(3)/32 + sqrt(2)*zeta(5)/16",
                lambda ctx: ctx.sqrt(2) * (-ctx.pi ** 2 * ctx.zeta(3) / 32 + ctx.zeta(5) / 16)),
            6: ("131*sqrt(2)*pi^6/193536 - 3*sqrt(2)*zeta(3)^2/32",
                lambda ctx: ctx.sqrt(2) * (131 * ctx.pi ** 6 / 193536 - 3 * ctx.zeta(3) ** 2 / 32)),
        },
    )


def sincos_appell_form() -> AppellForm:
    """The sin-cos density as an Euler-type Appell form; agrees with the derivative data."""
    return AppellForm(AppellFamily(Kind.EULER, Fraction(3, 2)), Constant("1/sqrt(2)"), Fraction(2))


def _sincos_w_build(w, n_deriv):
    d = 1 + w / 2
    b = Constant(f"1/(pi*2**(({w})/2-1))")
    f = AppellForm(AppellFamily(Kind.EULER, d), b, Fraction(2))
    wf = Fraction(w)

    def limit(ctx):
        return 2 / ctx.pi * ctx.betainc(ctx.mpf(1) / 2, (ctx.mpf(wf.numerator) / wf.denominator + 1) / 2, 0,
                                        ctx.mpf(1) / 2)

    return Built(f=f, limit=(f"(2/pi)*B_(1/2)(1/2, ({w}+1)/2)", limit))


def _zn_build(w, n_deriv):
    f = AppellForm(AppellFamily(Kind.EULER, Fraction(3)), Fraction(1, 4), Fraction(1))
    return Built(
        f=f,
        limit=("3/4", lambda ctx: ctx.mpf(3) / 4),
        published={
            2: ("pi^2/48", lambda ctx: ctx.pi ** 2 / 48),
            3: ("zeta(3)/8", lambda ctx: ctx.zeta(3) / 8),
            4: ("-pi^4/960", lambda ctx: -ctx.pi ** 4 / 960),
            5: ("-pi^2*zeta(3)/48", lambda ctx: -ctx.pi ** 2 * ctx.zeta(3) / 48),
            6: ("83*pi^6/241920 - zeta(3)^2/16",
                lambda ctx: 83 * ctx.pi ** 6 / 241920 - ctx.zeta(3) ** 2 / 16),
            7: ("3*pi^4*zeta(3)/640 + pi^2*zeta(5)/32 + 3*zeta(7)/16",
                lambda ctx: 3 * ctx.pi ** 4 * ctx.zeta(3) / 640 + ctx.pi ** 2 * ctx.zeta(5) / 32
                + 3 * ctx.zeta(7) / 16),
            8: ("-253*pi^8/14515200 + 5*pi^2*zeta(3)^2/192 + 3*zeta(3)*zeta(5)/16",
                lambda ctx: -253 * ctx.pi ** 8 / 14515200 + 5 * ctx.pi ** 2 * ctx.zeta(3) ** 2 / 192
                + 3 * ctx.zeta(3) * ctx.zeta(5) / 16),
        },
    )


def _zn_w_build(w, n_deriv):
    d = w + 2
    b = Fraction(2) ** -(w + 1) if w.denominator == 1 else Constant(f"2**(-({w})-1)")
    f = AppellForm(AppellFamily(Kind.EULER, d), b, Fraction(1))
    if w == -1:
        return Built(f=f, limit=("2*log(2)", lambda ctx: 2 * ctx.ln2))
    wf = Fraction(w)
    return Built(f=f, limit=(f"(2 - 2^(-{w}))/({w}+1)",
                             lambda ctx: (2 - ctx.power(2, -_mp(wf, ctx))) / (_mp(wf, ctx) + 1)))


def _mp(x: Fraction, ctx):
    return ctx.mpf(x.numerator) / x.denominator


def _hermite_build(w, n_deriv):
    scale = Constant("sqrt(2/pi)")
    wf = Fraction(w)

    def half_line(t, ctx):
        # f(e^-t) e^-t = sqrt(2/pi) exp(-t^2/2 + w t/2)
        return ctx.sqrt(2 / ctx.pi) * ctx.exp(-t * t / 2 + _mp(wf, ctx) * t / 2)

    def limit(ctx):
        x = _mp(wf, ctx)
        return ctx.exp(x * x / 8) * ctx.erfc(-x / (2 * ctx.sqrt(2)))

    if w == -2:
        f = AppellForm(AppellFamily(Kind.HERMITE), scale, Fraction(1))
        published = {
            2: ("-sqrt(2/pi)*zeta(2)", lambda ctx: -ctx.sqrt(2 / ctx.pi) * ctx.zeta(2)),
            3: ("2*sqrt(2/pi)*zeta(3)", lambda ctx: 2 * ctx.sqrt(2 / ctx.pi) * ctx.zeta(3)),
            4: ("-sqrt(2/pi)*zeta(4)/2", lambda ctx: -ctx.sqrt(2 / ctx.pi) * ctx.zeta(4) / 2),
            5: ("sqrt(2/pi)*(-2*pi^2*zeta(3)/3 + 4*zeta(5))",
                lambda ctx: ctx.sqrt(2 / ctx.pi) * (-2 * ctx.pi ** 2 * ctx.zeta(3) / 3 + 4 * ctx.zeta(5))),
            6: ("sqrt(2/pi)*(-13*zeta(6)/8 + 4*zeta(3)^2)",
                lambda ctx: ctx.sqrt(2 / ctx.pi) * (-13 * ctx.zeta(6) / 8 + 4 * ctx.zeta(3) ** 2)),
        }
        return Built(f=f, limit=("sqrt(e)*erfc(1/sqrt(2))", limit), half_line=half_line,
                     published=published)
    # f(1+h) = sqrt(2/pi) exp(-L^2/2 - (w/2+1) L) with L = log(1+h)
    L = series.log1p_series(n_deriv)
    expo = series.add(series.scale(series.mul(L, L, n_deriv), Fraction(-1, 2)),
                      series.scale(L, -(wf / 2 + 1)), n_deriv)
    taylor = series.exp0(expo, n_deriv)

    def evaluate(u, ctx):
        lu = ctx.log(u)
        return ctx.sqrt(2 / ctx.pi) * ctx.exp(-lu * lu / 2 - (_mp(wf, ctx) / 2 + 1) * lu)

    f = DerivativeForm(tuple(series.taylor_to_derivatives(taylor)), scale=scale, evaluator=evaluate)
    return Built(f=f, limit=(f"exp(w^2/8)*erfc(-w/(2*sqrt(2))) at w={w}", limit), half_line=half_line)


def _yn_build(w, n_deriv):
    f = AppellForm(AppellFamily(Kind.EULER, Fraction(3)), Fraction(1, 4), Fraction(1))
    return Built(f=f, limit=("3/4", lambda ctx: ctx.mpf(3) / 4))


REGISTRY = {
    e.name: e for e in (
        RegistryEntry("sincos", Fraction(-1), Fraction(1),
                      "f(u) = 2(1+u^2)^(-3/2), q=-1, w=1; derivative data times 2^(-1/2)", _sincos_build),
        RegistryEntry("sincos-moment-w", Fraction(-1), Fraction(1),
                      "f(u) = (4/pi)(1+u^2)^(-1-w/2), q=-1; Euler form with d=1+w/2, c=2",
                      _sincos_w_build),
        RegistryEntry("zn-norm", Fraction(1), Fraction(1),
                      "f(u) = 2/(1+u)^3, q=1, w=1; Euler d=3, b=1/4, c=1", _zn_build),
        RegistryEntry("zn-norm-w", Fraction(1), Fraction(2),
                      "f(u) = 2/(1+u)^(w+2), q=1; Euler d=w+2, b=2^-(w+1), c=1", _zn_w_build),
        RegistryEntry("hermite-lognormal", Fraction(1), Fraction(-2),
                      "f(u) = sqrt(2/pi) exp(-log(u)^2/2) u^(-w/2-1), q=1; Hermite form at w=-2",
                      _hermite_build),
        RegistryEntry("yn-difference", Fraction(-1), Fraction(1),
                      "f(u) = 2/(1+u)^3, q=-1, w=1; Euler d=3, b=1/4, c=1", _yn_build),
    )
}


def registry_names() -> list:
    return sorted(REGISTRY)


def registry_spec(name: str, q=None, w=None, orders: int = 8,
                  precision: int = DEFAULT_PRECISION) -> IntegralSpec:
    """An :class:`IntegralSpec` for a registry entry, optionally at a non-default ``q`` or ``w``."""
    if name not in REGISTRY:
        raise DomainError(f"unknown registry entry {name!r}; choose from {', '.join(registry_names())}")
    entry = REGISTRY[name]
    q = entry.q if q is None else parse_scalar(q) if not is_exact(q) else Fraction(q)
    w = entry.w if w is None else parse_scalar(w) if not is_exact(w) else Fraction(w)
    if not (is_exact(q) and is_exact(w)):
        raise DomainError(f"registry entry {name!r} needs rational q and w")
    built = entry.build(Fraction(w), max(orders, MIN_DERIVATIVES))
    published = built.published if (q, w) == (entry.q, entry.w) and built.published else {}
    return IntegralSpec(q=q, w=w, f=built.f, orders=orders, precision=precision, name=name,
                        limit=built.limit, half_line=built.half_line, published=published)
