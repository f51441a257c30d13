"""Asymptotic coefficients of ``I_n = int_0^1 f(u) (1 + q u^n)^(w/n) du``.

    I_n ~ int_0^1 f + sum_{p>=2} a_p / n^p,
    a_p = sum_{l=1}^{p-1} (-w)^(p-l) beta_(l-1) S_(l,p-l)(-q).

For ``q = -1`` each Nielsen value is an ordinary height-one MZV and ``a_p``
gets an exact zeta-polynomial form. For ``q = 1`` the values are alternating;
an exact zeta form is attached only when the pair-sum symmetry holds.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Mapping, Optional

from .appell import AppellForm, BetaSequence, DerivativeForm, beta_sequence
from .bigfloat import DEFAULT_PRECISION, BigFloat, bigsum, context, is_exact, to_mpf
from .errors import DomainError, InsufficientDerivatives, NonEvaluableF
from .quadrature import tanh_sinh
from .scalars import Constant, parse_scalar
from .symmetry import solvability_check
from .zetavals import ZetaPolynomial, mzv_height_one, mzv_label, nielsen_S

log = logging.getLogger(__name__)

# relative disagreement with a published table entry that triggers a warning
PUBLISHED_TOLERANCE = 1e-15


@dataclass(frozen=True)
class IntegralSpec:
    """One instance of the integral family.

    ``limit`` optionally supplies the closed form of ``int_0^1 f`` as
    ``(label, ctx -> mpf)``. ``half_line`` optionally supplies
    ``t -> f(e^(-t)) e^(-t)`` as ``(t, ctx) -> mpf`` for integrands better
    handled on the half-line.
    ``published`` maps ``p`` to ``(label, ctx -> mpf)`` for literature values
    that assembled coefficients are compared against.
    """

    q: object
    w: object
    f: object
    orders: int = 8
    precision: int = DEFAULT_PRECISION
    name: Optional[str] = None
    limit: Optional[tuple] = None
    half_line: Optional[Callable] = field(default=None, compare=False)
    published: Mapping = field(default_factory=dict, compare=False)

    def __post_init__(self):
        q, w = self.q, self.w
        if not is_exact(q) and not hasattr(q, "_mpf_"):
            q = parse_scalar(q)
        if not is_exact(w) and not hasattr(w, "_mpf_"):
            w = parse_scalar(w)
        if isinstance(q, Constant) or isinstance(w, Constant):
            raise DomainError("q and w must be rational or multiprecision floats")
        object.__setattr__(self, "q", Fraction(q) if is_exact(q) else q)
        object.__setattr__(self, "w", Fraction(w) if is_exact(w) else w)
        if self.w == 0:
            raise DomainError("w must be nonzero")
        if self.q == -1:
            if not self.w > 0:
                raise DomainError("q = -1 requires w > 0: (1 - u^n)^(w/n) must stay integrable")
        elif not (-1 < self.q <= 1):
            raise DomainError(f"q must lie in (-1, 1] or equal -1, got {self.q}")
        if int(self.orders) != self.orders or self.orders < 2:
            raise DomainError(f"expansion order P must be an integer >= 2, got {self.orders}")
        if isinstance(self.f, DerivativeForm) and len(self.f.values_at_1) < self.orders - 1:
            raise InsufficientDerivatives(
                f"order P={self.orders} needs f^(0..{self.orders - 2})(1), "
                f"got {len(self.f.values_at_1)} values")

    @property
    def ctx(self):
        return context(self.precision)

    def with_orders(self, orders: int) -> "IntegralSpec":
        return replace(self, orders=orders)

    def evaluate_f(self, u, ctx):
        return self.f.evaluate(u, ctx)


@dataclass(frozen=True)
class ZetaForm:
    """``scale * poly``: an exact value in terms of single zeta values."""

    poly: ZetaPolynomial
    scale: object = Fraction(1)

    def evaluate(self, precision: int = DEFAULT_PRECISION) -> BigFloat:
        v = self.poly.evaluate(precision)
        if isinstance(self.scale, Fraction) and self.scale == 1:
            return v
        return v * BigFloat.exact(self.scale, context(precision))

    def render(self, pi_form: bool = False, symbol: str = "zeta") -> str:
        body = self.poly.render_pi(symbol) if pi_form else self.poly.render(symbol)
        if isinstance(self.scale, Fraction) and self.scale == 1:
            return body
        return f"{self.scale} * ({body})"

    def __str__(self):
        return self.render()


@dataclass
class Term:
    ell: int
    k: int
    beta: object          # BigFloat
    nielsen: BigFloat     # S_(ell,k)(-q)
    label: str            # name of the special value, e.g. "sigma(1,1)" or "zeta(2,1)"


@dataclass
class Coefficient:
    p: int
    value: BigFloat
    terms: list
    zeta_form: Optional[ZetaForm] = None

    @property
    def error_bound(self):
        return self.value.error


@dataclass
class ExpansionResult:
    spec: IntegralSpec
    a0: Optional[BigFloat]
    a0_source: str
    beta: BetaSequence
    coefficients: list
    warnings: list = field(default_factory=list)

    def coefficient(self, p: int) -> Coefficient:
        for c in self.coefficients:
            if c.p == p:
                return c
        raise KeyError(p)

    def a(self, p: int) -> BigFloat:
        """``a_p`` with ``a_0`` the limit and ``a_1 = 0``."""
        ctx = context(self.spec.precision)
        if p == 0:
            if self.a0 is None:
                raise NonEvaluableF("limit constant unavailable for this f")
            return self.a0
        if p == 1:
            return BigFloat(ctx.zero, ctx.zero, ctx)
        return self.coefficient(p).value

    def partial_sum(self, n, upto: Optional[int] = None) -> BigFloat:
        """``a_0 + sum_{p=2}^{upto} a_p / n^p``."""
        ctx = context(self.spec.precision)
        upto = self.spec.orders if upto is None else upto
        nn = to_mpf(n, ctx)
        total = self.a(0)
        for p in range(2, upto + 1):
            total = total + self.a(p) * BigFloat(1 / nn ** p, ctx.zero, ctx)
        return total


def _beta_bigfloats(beta: BetaSequence, ctx) -> list:
    out = []
    scale = BigFloat.exact(beta.scale, ctx)
    for v in beta.core:
        core = BigFloat.exact(v, ctx) if is_exact(v) else BigFloat(ctx.mpf(v), abs(ctx.mpf(v)) * ctx.ldexp(1, -(ctx.prec - 8)), ctx)
        out.append(core * scale if not beta.scale_is_one else core)
    return out


def limit_constant(spec: IntegralSpec) -> BigFloat:
    """``int_0^1 f(u) du``: closed form when the IntegralSpec carries one, else quadrature."""
    return _limit_with_source(spec)[0]


def _limit_with_source(spec: IntegralSpec):
    ctx = context(spec.precision)
    if spec.limit is not None:
        label, fn = spec.limit
        v = ctx.mpf(fn(context(spec.precision + 32)))
        return BigFloat(v, 2 * abs(v) * ctx.ldexp(1, -spec.precision), ctx), f"closed form: {label}"
    if isinstance(spec.f, DerivativeForm) and spec.f.evaluator is None:
        raise NonEvaluableF("no closed form and no pointwise evaluator for f")
    res = tanh_sinh(lambda u: spec.f.evaluate(u, context(spec.precision + 32)), 0, 1, spec.precision)
    return res.value, f"tanh-sinh quadrature ({res.levels_used} levels)"


def moment_phi(f, r: int, precision: int = DEFAULT_PRECISION) -> BigFloat:
    """``phi_r = int_0^1 f(u) u^r du`` by tanh-sinh quadrature."""
    if int(r) != r or r < 1:
        raise DomainError("moment index r must be a positive integer")
    work = context(precision + 32)

    def integrand(u, uc):
        logu = work.log(u) if 2 * u < 1 else work.log1p(-uc)
        return f.evaluate(u, work) * work.exp(r * logu)

    return tanh_sinh(integrand, 0, 1, precision, complement=True).value


def _zeta_form_q_minus1(p, w, beta: BetaSequence) -> Optional[ZetaForm]:
    if not (beta.exact and is_exact(w)):
        return None
    poly = ZetaPolynomial()
    for ell in range(1, p):
        k = p - ell
        c = (-w) ** k * beta.core[ell - 1]
        if c:
            poly = poly + mzv_height_one(ell, k) * c
    return ZetaForm(poly, beta.scale)


def _zeta_form_q_one(p, w, beta: BetaSequence, precision) -> Optional[ZetaForm]:
    report = solvability_check(p, w, beta, precision)
    if not (report.holds and report.exact):
        return None
    poly = ZetaPolynomial()
    for nu in range(1, p):
        rho = report.rho[nu - 1]
        if rho:
            poly = poly + mzv_height_one(nu, p - nu) * rho
    return ZetaForm(poly, beta.scale)


def expansion_coefficients(spec: IntegralSpec, *, with_limit: bool = True) -> ExpansionResult:
    """All ``a_2 .. a_P`` with their term-by-term decomposition."""
    P = spec.orders
    prec = spec.precision
    ctx = context(prec)
    beta = beta_sequence(spec.f, P - 2, prec)
    if len(beta) < P - 1:
        raise InsufficientDerivatives(f"need beta_0..beta_{P - 2}")
    betas = _beta_bigfloats(beta, ctx)
    q, w = spec.q, spec.w
    wv = BigFloat.exact(w, ctx)
    z = -q
    warnings = []

    nielsen_cache: dict = {}

    def S(ell, k):
        key = (ell, k)
        if key not in nielsen_cache:
            nielsen_cache[key] = nielsen_S(ell, k, z, prec)
        return nielsen_cache[key]

    coefficients = []
    for p in range(2, P + 1):
        terms = []
        parts = []
        for ell in range(1, p):
            k = p - ell
            sv = S(ell, k)
            if q == -1:
                label = mzv_label(ell, k)
            elif q == 1:
                label = f"(-1)^{k}*sigma({ell},{k})"
            else:
                label = f"S({ell},{k})({_fmt(z)})"
            weight = (-wv) * BigFloat.exact(1, ctx)
            for _ in range(k - 1):
                weight = weight * (-wv)
            term_value = weight * betas[ell - 1] * sv
            parts.append(term_value)
            terms.append(Term(ell, k, betas[ell - 1], sv, label))
        value = bigsum(parts, ctx)
        zf = None
        if q == -1:
            zf = _zeta_form_q_minus1(p, w, beta)
        elif q == 1:
            zf = _zeta_form_q_one(p, w, beta, prec)
        coefficients.append(Coefficient(p, value, terms, zf))

    a0, source = None, "unavailable"
    if with_limit:
        try:
            a0, source = _limit_with_source(spec)
        except NonEvaluableF as exc:
            warnings.append(f"limit constant not computed: {exc}")
    result = ExpansionResult(spec, a0, source, beta, coefficients, warnings)
    result.warnings.extend(compare_published(result))
    return result


def reduce_to_zeta_q_minus1(result: ExpansionResult) -> ExpansionResult:
    """Attach exact zeta-polynomial forms to every coefficient of a ``q = -1`` result."""
    spec = result.spec
    if spec.q != -1:
        raise DomainError("zeta reduction via height-one MZVs applies only to q = -1")
    warnings = list(result.warnings)
    coeffs = []
    for c in result.coefficients:
        zf = c.zeta_form or _zeta_form_q_minus1(c.p, spec.w, result.beta)
        if zf is None:
            msg = f"a_{c.p}: no exact zeta form (beta or w not rational)"
            if msg not in warnings:
                warnings.append(msg)
        else:
            check = zf.evaluate(spec.precision)
            if not check.close_to(c.value, slack=4):
                raise ArithmeticError(
                    f"a_{c.p}: zeta form {zf} = {check} disagrees with assembled value {c.value}")
        coeffs.append(replace(c, zeta_form=zf))
    return replace(result, coefficients=coeffs, warnings=warnings)


def compare_published(result: ExpansionResult) -> list:
    """Warnings for published coefficient values the assembly does not reproduce."""
    spec = result.spec
    if not spec.published:
        return []
    ctx = context(spec.precision)
    out = []
    for p, (label, fn) in sorted(spec.published.items()):
        if p > spec.orders:
            continue
        ref = ctx.mpf(fn(ctx))
        got = result.a(p).value
        if abs(got - ref) > PUBLISHED_TOLERANCE * max(1, abs(ref)):
            out.append(
                f"published a_{p} = {label} = {ctx.nstr(ref, 15)} does not match the assembled "
                f"value {ctx.nstr(got, 15)}; reporting the assembled value "
                f"(quadrature decay test decides between them)")
    return out


def _fmt(x) -> str:
    return str(x)
