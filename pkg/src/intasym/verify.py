"""Numerical oracle: direct quadrature of ``I_n`` and ``phi_r`` and remainder-decay fits.

Nothing here uses the Nielsen or zeta machinery; agreement with
:mod:`intasym.expansion` is therefore an independent check.
"""
from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .appell import beta_sequence
from .bigfloat import BigFloat, context, to_mpf
from .errors import DegenerateFit, DomainError
from .expansion import ExpansionResult, IntegralSpec, expansion_coefficients, moment_phi
from .quadrature import QuadratureResult, exp_sinh, tanh_sinh

GUARD_BITS = 32
# points whose residual is within this factor of the numerical noise are dropped from fits
NOISE_FACTOR = 10


@dataclass
class DecayReport:
    n_grid: list
    residuals: list                      # BigFloat per grid point
    fitted_slope: Optional[float]
    expected_slope: float
    noise_dominated: list = field(default_factory=list)  # grid points excluded from the fit
    precision_floor: bool = False

    @property
    def slope_error(self) -> Optional[float]:
        if self.fitted_slope is None:
            return None
        return abs(self.fitted_slope - self.expected_slope)

    def within(self, tol: float) -> bool:
        return self.slope_error is not None and self.slope_error <= tol


def _weight_factor(q, w, n, logu, ctx):
    """``(1 + q u^n)^(w/n)`` from ``log u``; keeps relative accuracy when ``u^n`` is near ``-1/q``."""
    x = n * logu
    if q == -1:
        inner = -ctx.expm1(x)
        if inner <= 0:
            return ctx.zero
        return ctx.exp(ctx.log(inner) * w / n)
    return ctx.exp(ctx.log1p(q * ctx.exp(x)) * w / n)


def integrate_In(spec: IntegralSpec, n: int, tol=None) -> QuadratureResult:
    """``int_0^1 f(u) (1 + q u^n)^(w/n) du`` by double-exponential quadrature."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    prec = spec.precision
    work = context(prec + GUARD_BITS)
    q, w = to_mpf(spec.q, work), to_mpf(spec.w, work)
    q_is_minus_one = spec.q == -1

    if spec.half_line is not None:
        # u = e^(-t): the registry supplies f(e^(-t)) e^(-t) directly
        def g(t):
            return spec.half_line(t, work) * _weight_factor(-1 if q_is_minus_one else q, w, n, -t, work)
        return exp_sinh(g, 0, prec, tol)

    f_eval = spec.f.evaluate
    f_eval(work.mpf(0.5), work)  # surfaces NonEvaluableF before quadrature starts

    def integrand(u, uc):
        logu = work.log(u) if 2 * u < 1 else work.log1p(-uc)
        return f_eval(u, work) * _weight_factor(-1 if q_is_minus_one else q, w, n, logu, work)

    return tanh_sinh(integrand, 0, 1, prec, tol, complement=True)


def fit_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of ``log|y|`` against ``log x``."""
    return statistics.linear_regression([math.log(x) for x in xs],
                                        [math.log(abs(y)) for y in ys]).slope


def _fit(grid, residuals, expected) -> DecayReport:
    kept, dropped = [], []
    for n, r in zip(grid, residuals):
        (kept if abs(r.value) > NOISE_FACTOR * r.error else dropped).append((n, r))
    if len(kept) < 2:
        raise DegenerateFit(
            f"only {len(kept)} residual(s) above the noise floor; "
            f"the expansion is exact to working precision or the grid is too coarse")
    slope = fit_slope([n for n, _ in kept], [float(r.value) for _, r in kept])
    return DecayReport(list(grid), list(residuals), slope, expected, [n for n, _ in dropped])


def _check_grid(grid, lo=1):
    grid = [int(n) for n in grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError(f"grid must be strictly increasing, got {grid}")
    if not grid or grid[0] < lo:
        raise DomainError(f"grid must be non-empty with entries >= {lo}")
    return grid


def residuals_In(spec: IntegralSpec, P: int, n_grid: Sequence[int],
                 expansion: Optional[ExpansionResult] = None,
                 overrides: Optional[Mapping[int, object]] = None, tol=None) -> list:
    """``I_n - (a_0 + sum_{p=2}^{P} a_p/n^p)`` for each ``n``.

    ``overrides`` replaces selected ``a_p`` by given values, for testing
    alternative coefficient tables against the quadrature.
    """
    if expansion is None or expansion.spec.orders < P:
        expansion = expansion_coefficients(spec.with_orders(max(P, 2)))
    ctx = context(spec.precision)
    overrides = {p: BigFloat(to_mpf(v, ctx), ctx.zero, ctx) if not isinstance(v, BigFloat) else v
                 for p, v in (overrides or {}).items()}
    out = []
    for n in n_grid:
        integral = integrate_In(spec, n, tol).value
        approx = overrides.get(0, expansion.a(0))
        nn = ctx.mpf(n)
        for p in range(2, P + 1):
            approx = approx + overrides.get(p, expansion.a(p)) * BigFloat(1 / nn ** p, ctx.zero, ctx)
        out.append(integral - approx)
    return out


def decay_check(spec: IntegralSpec, P: int, n_grid: Sequence[int] = (16, 32, 64),
                expansion: Optional[ExpansionResult] = None,
                overrides: Optional[Mapping[int, object]] = None, tol=None) -> DecayReport:
    """Fit the decay rate of the order-``P`` remainder; expected slope ``-(P+1)``."""
    grid = _check_grid(n_grid)
    return _fit(grid, residuals_In(spec, P, grid, expansion, overrides, tol), -(P + 1))


def watson_check(f, nu_max: int, r_grid: Sequence[int] = (20, 40, 80),
                 precision: int = 256) -> DecayReport:
    """Fit the decay of ``phi_r - sum_{nu<=nu_max} beta_nu / r^(nu+1)``; expected slope ``-(nu_max+2)``."""
    grid = _check_grid(r_grid)
    ctx = context(precision)
    betas = beta_sequence(f, nu_max, precision).values(ctx)
    res = []
    for r in grid:
        phi = moment_phi(f, r, precision)
        rr = ctx.mpf(r)
        approx = sum((b / rr ** (nu + 1) for nu, b in enumerate(betas)), ctx.zero)
        res.append(phi - BigFloat(approx, abs(approx) * ctx.ldexp(1, -(precision - 8)), ctx))
    return _fit(grid, res, -(nu_max + 2))
