"""Nielsen's generalized polylogarithms and the zeta values they reduce to.

Notation: ``s(m, p) = S_{m,p}(1) = zeta(m+1, {1}_{p-1})`` and
``sigma(m, p) = (-1)^p S_{m,p}(-1)``.

Evaluation routes for ``S_{m,p}(z)``:

* ``z = 1``: the exact zeta-polynomial from the Borwein-Bradley-Broadhurst
  generating function, evaluated numerically;
* ``-1 <= z < -1/2``: Cohen-Rodriguez Villegas-Zagier acceleration of the
  alternating series;
* ``|z| <= 1/2``: the series itself with a geometric tail bound;
* ``1/2 < z < 1``: tanh-sinh quadrature of the defining integral.
"""
from __future__ import annotations

import functools
import math
from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping

from .bigfloat import DEFAULT_PRECISION, BigFloat, bigsum, context, is_exact, to_mpf, ulp
from .errors import DomainError
from .exactnum import bernoulli_number, binomial

GUARD_BITS = 32
CVZ_SAFETY = 16


# --------------------------------------------------------------------------
# zeta(s)


@functools.lru_cache(maxsize=512)
def _zeta_cached(s: int, precision: int) -> BigFloat:
    ctx = context(precision)
    work = context(precision + GUARD_BITS)
    v = ctx.mpf(work.zeta(s))
    return BigFloat(v, 4 * ulp(v, ctx), ctx)


def zeta(s: int, precision: int = DEFAULT_PRECISION) -> BigFloat:
    """Riemann zeta at an integer ``s >= 2``."""
    if int(s) != s or s < 2:
        raise DomainError(f"zeta(s) needs an integer s >= 2, got {s}")
    return _zeta_cached(int(s), int(precision))


def even_zeta_pi_coefficient(s: int) -> Fraction:
    """Rational ``r`` with ``zeta(s) = r * pi^s`` for even ``s >= 2``."""
    if s < 2 or s % 2:
        raise DomainError("closed form exists only for even s >= 2")
    k = s // 2
    return (-1) ** (k + 1) * bernoulli_number(s) * 2 ** (s - 1) / math.factorial(s)


# --------------------------------------------------------------------------
# zeta polynomials


def _mono(args: Iterable[int]) -> tuple:
    return tuple(sorted(args))


class ZetaPolynomial:
    """Rational linear combination of products of single zeta values.

    A monomial is a sorted tuple of integer arguments, each at least 2; the
    empty tuple is the constant 1. Equality is structural.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            mono = _mono(mono)
            if any(a < 2 for a in mono):
                raise ValueError(f"zeta arguments must be >= 2, got {mono}")
            c = Fraction(c)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def zeta(cls, s: int) -> "ZetaPolynomial":
        return cls({(s,): Fraction(1)})

    @classmethod
    def constant(cls, c) -> "ZetaPolynomial":
        return cls({(): Fraction(c)})

    def canonical_terms(self) -> list:
        """Monomials ordered by weight, then lexicographically."""
        return sorted(self.terms.items(), key=lambda mc: (sum(mc[0]), mc[0]))

    def weights(self) -> set:
        return {sum(m) for m in self.terms}

    def is_homogeneous(self, weight: int | None = None) -> bool:
        ws = self.weights()
        if not ws:
            return True
        return len(ws) == 1 and (weight is None or ws == {weight})

    def __eq__(self, other):
        if not isinstance(other, ZetaPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return ZetaPolynomial(out)

    def __neg__(self):
        return ZetaPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ZetaPolynomial):
            out: dict = defaultdict(Fraction)
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    out[_mono(m1 + m2)] += c1 * c2
            return ZetaPolynomial(out)
        c = Fraction(other)
        return ZetaPolynomial({m: c * v for m, v in self.terms.items()})

    __rmul__ = __mul__

    def evaluate(self, precision: int = DEFAULT_PRECISION) -> BigFloat:
        ctx = context(precision)
        parts = []
        for mono, c in self.canonical_terms():
            term = BigFloat.exact(c, ctx)
            for s in mono:
                term = term * zeta(s, precision)
            parts.append(term)
        return bigsum(parts, ctx)

    def pi_form(self) -> dict:
        """Rewrite even zetas as rational multiples of powers of pi.

        Returns ``{(pi_power, odd_args): coefficient}``.
        """
        out: dict = defaultdict(Fraction)
        for mono, c in self.terms.items():
            power = 0
            odd = []
            for s in mono:
                if s % 2 == 0:
                    c = c * even_zeta_pi_coefficient(s)
                    power += s
                else:
                    odd.append(s)
            out[(power, tuple(odd))] += c
        return {k: v for k, v in out.items() if v}

    def render(self, symbol: str = "zeta") -> str:
        return _render(
            ((c, _render_mono(m, symbol)) for m, c in self.canonical_terms()))

    def render_pi(self, symbol: str = "zeta") -> str:
        items = sorted(self.pi_form().items(), key=lambda kv: (kv[0][0] + sum(kv[0][1]), -kv[0][0], kv[0][1]))
        return _render((c, _render_pi_mono(pw, odd, symbol)) for (pw, odd), c in items)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"ZetaPolynomial({self.render()})"


def _render_mono(mono, symbol):
    if not mono:
        return ""
    parts = []
    for s in sorted(set(mono)):
        k = mono.count(s)
        parts.append(f"{symbol}({s})" + (f"^{k}" if k > 1 else ""))
    return "*".join(parts)


def _render_pi_mono(power, odd, symbol):
    parts = []
    if power:
        parts.append("pi" if power == 1 else f"pi^{power}")
    rest = _render_mono(odd, symbol)
    if rest:
        parts.append(rest)
    return "*".join(parts)


def _render(items) -> str:
    out = []
    for c, mono in items:
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        out.append((sign, body))
    if not out:
        return "0"
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


# --------------------------------------------------------------------------
# height-one MZVs via the BBB generating function
#
#   sum_{m,n>=0} zeta(m+2,{1}_n) x^{m+1} y^{n+1}
#       = 1 - exp( sum_{k>=2} (x^k + y^k - (x+y)^k) zeta(k)/k )
#
# Writing E = exp(G) by total degree, d E_d = sum_k k G_k E_{d-k}.


@functools.lru_cache(maxsize=None)
def _bbb_degree(d: int) -> tuple:
    """Homogeneous degree-``d`` part of ``exp(G)``: entry ``i`` is the x^i y^(d-i) coefficient."""
    if d == 0:
        return (ZetaPolynomial.constant(1),)
    if d == 1:
        return (ZetaPolynomial(), ZetaPolynomial())
    acc = [ZetaPolynomial() for _ in range(d + 1)]
    for k in range(2, d + 1):
        # k * G_k = (x^k + y^k - (x+y)^k) zeta(k): coefficient of x^i y^(k-i)
        zk = ZetaPolynomial.zeta(k)
        gk = [-binomial(k, i) for i in range(k + 1)]
        gk[0] += 1
        gk[k] += 1
        prev = _bbb_degree(d - k)
        for i, gi in enumerate(gk):
            if gi == 0:
                continue
            term = zk * gi
            for j, pj in enumerate(prev):
                if pj:
                    acc[i + j] = acc[i + j] + term * pj
    return tuple(p * Fraction(1, d) for p in acc)


@functools.lru_cache(maxsize=None)
def mzv_height_one(m: int, p: int) -> ZetaPolynomial:
    """``zeta(m+1, {1}_{p-1})`` as a rational polynomial in single zeta values."""
    if m < 1 or p < 1:
        raise DomainError(f"need m >= 1 and p >= 1, got ({m}, {p})")
    # coefficient of x^m y^p in 1 - exp(G)
    return -_bbb_degree(m + p)[m]


def mzv_label(m: int, p: int, alternating: bool = False, symbol: str = "zeta") -> str:
    """Printable name of ``zeta(m+1, {1}_{p-1})`` or its alternating variant."""
    head = str(m + 1)
    if alternating:
        head += "\u0305" if symbol == "ζ" else "bar"
    return f"{symbol}({','.join([head] + ['1'] * (p - 1))})"


# --------------------------------------------------------------------------
# Nielsen S_{m,p}(z)


def _check_mp(m, p):
    if int(m) != m or int(p) != p or m < 1 or p < 1:
        raise DomainError(f"Nielsen S_(m,p) needs integers m, p >= 1, got ({m}, {p})")


def _series_terms(m: int, p: int, zabs, N: int, ctx):
    """``|z|^j zeta_{j-1}({1}_{p-1}) / j^(m+1)`` for ``j = 1..N``."""
    e = [ctx.one] + [ctx.zero] * (p - 1)
    out = []
    zpow = ctx.one
    for j in range(1, N + 1):
        zpow *= zabs
        out.append(zpow * e[p - 1] / ctx.mpf(j) ** (m + 1))
        for r in range(p - 1, 0, -1):
            e[r] += e[r - 1] / j
    return out


def _cvz_alternating(a, ctx):
    """``sum_{k>=0} (-1)^k a_k`` by Cohen-Rodriguez Villegas-Zagier, using all of ``a``."""
    n = len(a)
    d = (3 + ctx.sqrt(8)) ** n
    d = (d + 1 / d) / 2
    b = -ctx.one
    c = -d
    s = ctx.zero
    for k in range(n):
        c = b - c
        s += c * a[k]
        b = b * (k + n) * (k - n) / ((k + ctx.mpf(1) / 2) * (k + 1))
    return s / d


def _cvz_terms_needed(bits: int) -> int:
    rate = math.log(3 + math.sqrt(8))
    return int(math.ceil(((bits + 8) * math.log(2) + math.log(2 * CVZ_SAFETY)) / rate)) + 2


def _nielsen_alternating(m, p, zabs, precision):
    work = context(precision + GUARD_BITS)
    N = _cvz_terms_needed(precision + 8)
    a = _series_terms(m, p, to_mpf(zabs, work), N, work)
    # sum_j (-1)^j a_j with j starting at 1
    val = -_cvz_alternating(a, work)
    amax = max(abs(x) for x in a)
    err = 2 * CVZ_SAFETY * amax / (3 + work.sqrt(8)) ** N + N * ulp(amax, work)
    return val, err


def _nielsen_direct(m, p, z, precision):
    work = context(precision + GUARD_BITS)
    zz = to_mpf(z, work)
    zabs = abs(zz)
    eps = work.ldexp(1, -(precision + 4))
    e = [work.one] + [work.zero] * (p - 1)
    total = work.zero
    zpow = work.one
    fact = math.factorial(p - 1)
    j = 0
    while True:
        j += 1
        zpow *= zz
        total += zpow * e[p - 1] / work.mpf(j) ** (m + 1)
        for r in range(p - 1, 0, -1):
            e[r] += e[r - 1] / j
        if j >= 2 * p:
            J = j
            rho = zabs * (1 + work.one / J) ** (p - 1)
            nxt = zabs ** (J + 1) * (1 + work.log(J + 1)) ** (p - 1) / (fact * work.mpf(J + 1) ** (m + 1))
            tail = nxt / (1 - rho)
            if tail < eps or zabs == 0:
                return total, tail + j * ulp(total, work)


def _nielsen_quadrature(m, p, z, precision):
    from .quadrature import tanh_sinh

    work = context(precision + GUARD_BITS)
    zz = to_mpf(z, work)
    pref = work.one / (math.factorial(m - 1) * math.factorial(p))

    def integrand(t):
        return (-work.log(t)) ** (m - 1) * (-work.log1p(-zz * t)) ** p / t

    res = tanh_sinh(integrand, 0, 1, precision + GUARD_BITS // 2)
    return pref * work.mpf(res.value.value), pref * work.mpf(res.error_estimate)


def nielsen_S(m: int, p: int, z, precision: int = DEFAULT_PRECISION) -> BigFloat:
    """Nielsen's generalized polylogarithm ``S_{m,p}(z)`` for real ``|z| <= 1``."""
    _check_mp(m, p)
    ctx = context(precision)
    if is_exact(z):
        z = Fraction(z)
        if abs(z) > 1:
            raise DomainError(f"|z| <= 1 required, got z={z}")
        if z == 0:
            return BigFloat(ctx.zero, ctx.zero, ctx)
        if z == 1:
            return mzv_height_one(m, p).evaluate(precision)
    else:
        zf = to_mpf(z, ctx)
        if abs(zf) > 1:
            raise DomainError(f"|z| <= 1 required, got z={z}")
        if zf == 1:
            return mzv_height_one(m, p).evaluate(precision)
        if zf == 0:
            return BigFloat(ctx.zero, ctx.zero, ctx)
    zval = to_mpf(z, context(precision + GUARD_BITS))
    if 2 * zval < -1:
        val, err = _nielsen_alternating(m, p, -zval, precision)
    elif 2 * zval <= 1:
        val, err = _nielsen_direct(m, p, zval, precision)
    else:
        val, err = _nielsen_quadrature(m, p, zval, precision)
    v = ctx.mpf(val)
    return BigFloat(v, ctx.mpf(err) + ulp(v, ctx), ctx)


def s_value(m: int, p: int, precision: int = DEFAULT_PRECISION) -> BigFloat:
    """``s_{m,p} = S_{m,p}(1)``."""
    return nielsen_S(m, p, 1, precision)


@functools.lru_cache(maxsize=1024)
def _sigma_cached(m: int, p: int, precision: int) -> BigFloat:
    v = nielsen_S(m, p, -1, precision)
    return v if p % 2 == 0 else -v


def sigma(m: int, p: int, precision: int = DEFAULT_PRECISION) -> BigFloat:
    """``sigma_{m,p} = (-1)^p S_{m,p}(-1)``."""
    _check_mp(m, p)
    return _sigma_cached(int(m), int(p), int(precision))


def kolbig_identity_residual(j: int, k: int, precision: int = DEFAULT_PRECISION) -> BigFloat:
    """Left side minus right side of Kolbig's sigma/s relation at ``(j, k)``."""
    _check_mp(j, k)
    ctx = context(precision)
    parts = []
    for nu in range(1, j + 1):
        parts.append(sigma(nu, j + k - nu, precision) * binomial(j + k - nu - 1, k - 1))
    for nu in range(1, k + 1):
        parts.append(sigma(nu, j + k - nu, precision) * binomial(j + k - nu - 1, j - 1))
    return bigsum(parts, ctx) - s_value(j, k, precision)
