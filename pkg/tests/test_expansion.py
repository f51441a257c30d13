from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intasym.appell import AppellFamily, AppellForm, DerivativeForm, Kind
from intasym.errors import DomainError, InsufficientDerivatives, NonEvaluableF
from intasym.expansion import (IntegralSpec, expansion_coefficients, limit_constant, moment_phi,
                               reduce_to_zeta_q_minus1)
from intasym.registry import registry_spec
from oracles import coefficient_by_laplace, ones_coefficients_loggamma, to_mpf

TOL = mpmath.mpf(10) ** -60
ONE = AppellForm(AppellFamily(Kind.MONOMIAL), 1, 1)
ZN_F = AppellForm(AppellFamily(Kind.EULER, 3), Fraction(1, 4), 1)
small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=7)


def close(a, b, tol=TOL):
    with mpmath.workprec(300):
        return abs(to_mpf(a) - to_mpf(b)) <= tol * (1 + abs(to_mpf(b)))


def test_zn_leading_coefficients():
    r = expansion_coefficients(registry_spec("zn-norm", orders=3))
    with mpmath.workprec(256):
        assert close(r.a(2).value, mpmath.pi ** 2 / 48)
        assert close(r.a(3).value, mpmath.zeta(3) / 8)
        assert close(r.a(0).value, Fraction(3, 4))
    assert r.a(1).value == 0
    assert r.a0_source.startswith("closed form")


def test_yn_leading_coefficient():
    r = expansion_coefficients(registry_spec("yn-difference", orders=2))
    with mpmath.workprec(256):
        assert close(r.a(2).value, -mpmath.zeta(2) / 4)
    assert r.coefficient(2).zeta_form.render() == "-1/4*zeta(2)"


def test_hermite_leading_coefficient():
    r = expansion_coefficients(registry_spec("hermite-lognormal", orders=3))
    with mpmath.workprec(256):
        assert close(r.a(2).value, -mpmath.sqrt(2 / mpmath.pi) * mpmath.zeta(2))
        assert close(r.a(3).value, 2 * mpmath.sqrt(2 / mpmath.pi) * mpmath.zeta(3))
    assert r.coefficient(2).zeta_form.render() == "sqrt(2/pi) * (-zeta(2))"


def test_sincos_third_coefficient():
    r = expansion_coefficients(registry_spec("sincos", orders=3))
    with mpmath.workprec(256):
        assert close(r.a(3).value, mpmath.sqrt(2) * mpmath.zeta(3) / 4)


@pytest.mark.parametrize("q", [Fraction(1, 2), Fraction(-1, 2), Fraction(3, 10), Fraction(1), Fraction(-1)], ids=str)
def test_assembly_against_laplace_oracle(q):
    w = Fraction(3, 2)
    r = expansion_coefficients(IntegralSpec(q, w, ZN_F, orders=6))
    beta = [x * r.beta.scale for x in r.beta.core]
    for p in range(2, 7):
        assert close(r.a(p).value, coefficient_by_laplace(beta, w, q, p))


@settings(max_examples=8)
@given(st.lists(small_rationals, min_size=4, max_size=4), st.sampled_from([Fraction(-1), Fraction(1, 3), Fraction(1)]),
       st.sampled_from([Fraction(1), Fraction(5, 2)]))
def test_derivative_data_against_laplace_oracle(values, q, w):
    r = expansion_coefficients(IntegralSpec(q, w, DerivativeForm(values), orders=4), with_limit=False)
    beta = list(r.beta.core)
    for p in range(2, 5):
        assert close(r.a(p).value, coefficient_by_laplace(beta, w, q, p), mpmath.mpf(10) ** -50)


def test_constant_f_matches_log_gamma_series():
    r = expansion_coefficients(IntegralSpec(-1, 1, ONE, orders=8))
    ref = ones_coefficients_loggamma(8)
    for p in range(2, 9):
        assert close(r.a(p).value, ref[p])
    with mpmath.workprec(256):
        assert close(r.a(2).value, -mpmath.zeta(2))
        assert close(r.a(3).value, 2 * mpmath.zeta(3))


@pytest.mark.parametrize("w", [Fraction(1, 2), Fraction(2), Fraction(7, 3)], ids=str)
def test_constant_f_matches_gamma_taylor_series(w):
    # I_n = Gamma(1+x) Gamma(1+w x) / Gamma(1+(w+1) x) with x = 1/n
    r = expansion_coefficients(IntegralSpec(-1, w, ONE, orders=6))
    with mpmath.workprec(400):
        wm = to_mpf(w)
        ref = mpmath.taylor(lambda x: mpmath.gamma(1 + x) * mpmath.gamma(1 + wm * x) / mpmath.gamma(1 + (wm + 1) * x),
                            0, 6)
    for p in range(2, 7):
        assert close(r.a(p).value, ref[p], mpmath.mpf(10) ** -40)


@given(st.lists(small_rationals, min_size=5, max_size=5), st.lists(small_rationals, min_size=5, max_size=5))
def test_coefficients_are_linear_in_f(u, v):
    spec = lambda vals: IntegralSpec(Fraction(1, 2), 2, DerivativeForm(vals), orders=6, precision=128)
    a, b = (expansion_coefficients(spec(x), with_limit=False) for x in (u, v))
    s = expansion_coefficients(spec([x + y for x, y in zip(u, v)]), with_limit=False)
    for p in range(2, 7):
        assert s.a(p).close_to(a.a(p) + b.a(p), slack=8)


def test_q_zero_has_no_correction():
    r = expansion_coefficients(IntegralSpec(0, 1, ZN_F, orders=5))
    assert all(r.a(p).value == 0 for p in range(2, 6))


def test_zeta_forms_agree_with_values():
    for name in ("zn-norm", "yn-difference", "hermite-lognormal", "sincos"):
        r = expansion_coefficients(registry_spec(name, orders=7))
        for c in r.coefficients:
            assert c.zeta_form is not None, (name, c.p)
            assert c.zeta_form.evaluate(256).close_to(c.value, slack=4)


def test_zn_zeta_forms_rendered():
    r = expansion_coefficients(registry_spec("zn-norm", orders=3))
    assert r.coefficient(2).zeta_form.render(pi_form=True) == "1/48*pi^2"
    assert r.coefficient(3).zeta_form.render() == "1/8*zeta(3)"


def test_off_criterion_q_one_has_no_zeta_form():
    r = expansion_coefficients(IntegralSpec(1, 2, ZN_F, orders=4))
    assert r.coefficient(2).zeta_form is not None
    assert r.coefficient(3).zeta_form is None


def test_reduce_to_zeta_q_minus1():
    r = reduce_to_zeta_q_minus1(expansion_coefficients(IntegralSpec(-1, 1, ONE, orders=4), with_limit=False))
    assert r.coefficient(2).zeta_form.render() == "-zeta(2)"
    assert r.coefficient(3).zeta_form.render() == "2*zeta(3)"
    with pytest.raises(DomainError):
        reduce_to_zeta_q_minus1(expansion_coefficients(registry_spec("zn-norm", orders=3)))


def test_reduce_warns_for_float_data():
    ctx = mpmath.mp
    spec = IntegralSpec(-1, ctx.mpf(1.25), ZN_F, orders=3)
    r = reduce_to_zeta_q_minus1(expansion_coefficients(spec, with_limit=False))
    assert any("no exact zeta form" in w for w in r.warnings)


def test_partial_sum_and_limit():
    r = expansion_coefficients(registry_spec("zn-norm", orders=4))
    with mpmath.workprec(256):
        expected = mpmath.mpf(3) / 4 + sum(r.a(p).value / mpmath.mpf(10) ** p for p in range(2, 5))
        assert close(r.partial_sum(10).value, expected)
        assert close(r.partial_sum(10, upto=2).value, mpmath.mpf(3) / 4 + r.a(2).value / 100)


def test_limit_by_quadrature_when_no_closed_form():
    spec = IntegralSpec(-1, 1, ZN_F, orders=2)
    assert close(limit_constant(spec).value, Fraction(3, 4))
    assert "quadrature" in expansion_coefficients(spec).a0_source


def test_limit_missing_for_derivative_only_f():
    r = expansion_coefficients(IntegralSpec(-1, 1, DerivativeForm([1, 0, 0]), orders=3))
    assert r.a0 is None and r.warnings
    with pytest.raises(NonEvaluableF):
        r.a(0)


def test_moment_phi():
    with mpmath.workprec(256):
        # int_0^1 2 u^2 / (1+u)^3 du = 2 log 2 - 5/4
        second = 2 * mpmath.log(2) - mpmath.mpf(5) / 4
    assert close(moment_phi(ZN_F, 1).value, Fraction(1, 4))
    assert close(moment_phi(ZN_F, 2).value, second)
    assert close(moment_phi(ONE, 5).value, Fraction(1, 6))
    with pytest.raises(DomainError):
        moment_phi(ONE, 0)


def test_published_mismatch_warnings():
    zn = expansion_coefficients(registry_spec("zn-norm", orders=8))
    assert len(zn.warnings) == 1 and "a_8" in zn.warnings[0]
    sc = expansion_coefficients(registry_spec("sincos", orders=6))
    flagged = sorted(int(w.split("a_")[1][0]) for w in sc.warnings)
    assert flagged == [2, 4, 5, 6]
    assert not expansion_coefficients(registry_spec("hermite-lognormal", orders=6)).warnings


@pytest.mark.parametrize("kwargs", [
    dict(q=2, w=1), dict(q=Fraction(-3, 2), w=1), dict(q=-1, w=-1), dict(q=1, w=0),
    dict(q=1, w=1, orders=1), dict(q=1, w=1, orders=Fraction(5, 2)), dict(q="sqrt(2)/2", w=1),
])
def test_spec_domain(kwargs):
    with pytest.raises(DomainError):
        IntegralSpec(f=ZN_F, **kwargs)


def test_spec_needs_enough_derivatives():
    with pytest.raises(InsufficientDerivatives):
        IntegralSpec(1, 1, DerivativeForm([1, 2, 3]), orders=6)
    assert IntegralSpec(1, 1, DerivativeForm([1, 2, 3]), orders=4).orders == 4


def test_negative_w_allowed_away_from_minus_one():
    r = expansion_coefficients(IntegralSpec(Fraction(1, 2), -3, ZN_F, orders=4))
    beta = [x * r.beta.scale for x in r.beta.core]
    assert close(r.a(4).value, coefficient_by_laplace(beta, -3, Fraction(1, 2), 4))


def test_threads_give_identical_results():
    specs = [IntegralSpec(q, 1, ZN_F, orders=6) for q in (Fraction(-1), Fraction(1, 3), Fraction(1))] * 3
    serial = [[c.value.value for c in expansion_coefficients(s).coefficients] for s in specs]
    with ThreadPoolExecutor(4) as pool:
        parallel = list(pool.map(lambda s: [c.value.value for c in expansion_coefficients(s).coefficients], specs))
    assert serial == parallel
