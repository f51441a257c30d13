"""Reduction of q = 1 coefficients from alternating to ordinary MZVs.

For ``q = 1`` the coefficient ``a_p = sum_nu w^(p-nu) beta_(nu-1) sigma_(nu,p-nu)``
involves alternating values. Kolbig's relation lets it be rewritten as
``sum_nu rho_(p,nu) s_(nu,p-nu)`` exactly when the pair sums

    eta_(p,nu) = sum_{j=1}^{nu} (-1)^(nu-j) C(nu-1, j-1) w^j beta_(p-j-1)

are symmetric, ``eta_(p,nu) = eta_(p,p-nu)``. The symmetric solution is
``rho_(p,nu) = eta_(p,nu) / 2``.

All pair sums here are computed on the exact core of a :class:`BetaSequence`
(its common scale factor multiplies through), so the symmetry verdict is exact
whenever beta and w are rational.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .appell import AppellFamily, BetaSequence, reflection_omega
from .bigfloat import DEFAULT_PRECISION, context, is_exact, to_mpf
from .errors import InsufficientDerivatives, SolvabilityViolated
from .exactnum import RationalPolynomial, binomial
from .zetavals import mzv_label


def binomial_transform(a: Sequence) -> list:
    """``psi_nu = sum_l (-1)^l C(nu, l) a_l``; an involution."""
    return [sum(((-1) ** l * binomial(nu, l) * a[l] for l in range(nu + 1)), Fraction(0))
            for nu in range(len(a))]


def generating_polynomial_A(a: Sequence, p: int) -> RationalPolynomial:
    """``A_p(x) = sum_{k<=p} C(p, k) (-1)^k a_k x^k``."""
    if p < 0:
        raise ValueError("p must be non-negative")
    if len(a) < p + 1:
        raise ValueError(f"generating polynomial of degree {p} needs {p + 1} terms, got {len(a)}")
    return RationalPolynomial(binomial(p, k) * (-1) ** k * a[k] for k in range(p + 1))


def check_A_symmetry(A: RationalPolynomial, p: int, tol=None) -> bool:
    """Whether ``A(x) == (-1)^p A(1 - x)``; exact unless ``tol`` is given."""
    mirrored = A.compose_affine(-1, 1) * (-1) ** p
    if tol is None and A.is_exact and mirrored.is_exact:
        return A == mirrored
    tol = 0 if tol is None else tol
    n = max(len(A.coeffs), len(mirrored.coeffs))
    return all(abs(A[k] - mirrored[k]) <= tol for k in range(n))


def weighted_sequence(p: int, w, beta: Sequence) -> list:
    """``a_k = w^(k+1) beta_(p-k-2)`` for ``0 <= k <= p-2``."""
    _need(beta, p)
    return [w ** (k + 1) * beta[p - k - 2] for k in range(p - 1)]


def _core(beta):
    return beta.core if isinstance(beta, BetaSequence) else tuple(beta)


def _need(beta, p):
    if p < 2:
        raise ValueError(f"pair sums need p >= 2, got {p}")
    if len(beta) < p - 1:
        raise InsufficientDerivatives(f"order p={p} needs beta_0..beta_{p - 2}, have {len(beta)} values")


def eta_pair_sums(p: int, w, beta) -> list:
    """``[eta_(p,1), ..., eta_(p,p-1)]``.

    For a :class:`BetaSequence` the result is in units of its ``scale``.
    """
    b = _core(beta)
    _need(b, p)
    out = []
    for nu in range(1, p):
        acc = Fraction(0)
        for j in range(1, nu + 1):
            acc += (-1) ** (nu - j) * binomial(nu - 1, j - 1) * w ** j * b[p - j - 1]
        out.append(acc)
    return out


@dataclass
class SymmetryReport:
    p: int
    eta: list
    holds: bool
    exact: bool
    violations: list = field(default_factory=list)
    rho: Optional[list] = None
    scale: object = Fraction(1)

    def first_violation(self):
        return self.violations[0] if self.violations else None


def _equal(x, y, exact, tol):
    if exact:
        return x == y
    return abs(x - y) <= tol * (1 + abs(x) + abs(y))


def solvability_check(p: int, w, beta, precision: int = DEFAULT_PRECISION) -> SymmetryReport:
    """Test ``eta_(p,nu) == eta_(p,p-nu)`` for ``1 <= nu <= floor(p/2)``."""
    b = _core(beta)
    scale = beta.scale if isinstance(beta, BetaSequence) else Fraction(1)
    exact = is_exact(w) and all(is_exact(x) for x in b[: max(p - 1, 0)])
    tol = None
    if not exact:
        ctx = context(precision)
        w = to_mpf(w, ctx)
        b = [to_mpf(x, ctx) for x in b]
        tol = ctx.ldexp(1, -(precision // 2))
    eta = eta_pair_sums(p, w, b)
    violations = []
    for nu in range(1, p // 2 + 1):
        lhs, rhs = eta[nu - 1], eta[p - nu - 1]
        if not _equal(lhs, rhs, exact, tol):
            violations.append((nu, lhs, rhs))
    holds = not violations
    rho = None
    if holds:
        rho = [eta[nu - 1] / 2 for nu in range(1, p)]
    return SymmetryReport(p, eta, holds, exact, violations, rho, scale)


def appell_criterion(family: AppellFamily, c, w) -> bool:
    """``c * omega == w + 2`` for a family with reflection shift ``omega``."""
    omega = reflection_omega(family)
    if omega is None:
        return False
    if is_exact(omega) and is_exact(c) and is_exact(w):
        return Fraction(c) * Fraction(omega) == Fraction(w) + 2
    ctx = context(DEFAULT_PRECISION)
    lhs = to_mpf(c, ctx) * to_mpf(omega, ctx)
    rhs = to_mpf(w, ctx) + 2
    return abs(lhs - rhs) <= ctx.ldexp(1, -(DEFAULT_PRECISION // 2)) * (1 + abs(rhs))


def rho_reduction(p: int, w, beta, precision: int = DEFAULT_PRECISION) -> list:
    """Symmetric ``rho_(p,nu)`` with a reference to the s-value each multiplies."""
    report = solvability_check(p, w, beta, precision)
    if not report.holds:
        nu, lhs, rhs = report.violations[0]
        raise SolvabilityViolated(
            f"pair sums not symmetric at p={p}, nu={nu}: {lhs} != {rhs}")
    return [{"nu": nu, "rho": report.rho[nu - 1], "s_ref": mzv_label(nu, p - nu)}
            for nu in range(1, p)]
