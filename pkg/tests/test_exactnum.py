import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from intasym.exactnum import (RationalPolynomial, bernoulli_number, binomial, stirling_first_unsigned,
                              stirling_second, truncated_mzv_ones)
from oracles import (bell_numbers, bernoulli_akiyama_tanigawa, elementary_symmetric,
                     rising_factorial_coeffs, set_partitions_count)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=50)
polys = st.lists(rationals, max_size=7).map(RationalPolynomial)


@pytest.mark.parametrize("m,k,expected", [(0, 0, 1), (3, 2, 3), (4, 2, 11), (5, 0, 0), (2, 3, 0)])
def test_stirling_first_examples(m, k, expected):
    assert stirling_first_unsigned(m, k) == expected


@pytest.mark.parametrize("n,k,expected", [(4, 4, 1), (3, 2, 3), (4, 2, 7), (0, 0, 1), (3, 0, 0)])
def test_stirling_second_examples(n, k, expected):
    assert stirling_second(n, k) == expected


@pytest.mark.parametrize("n", range(0, 13))
def test_stirling_first_matches_rising_factorial(n):
    assert [stirling_first_unsigned(n, k) for k in range(n + 1)] == rising_factorial_coeffs(n)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(0, 8) for k in range(0, n + 1)])
def test_stirling_second_matches_enumeration(n, k):
    assert stirling_second(n, k) == set_partitions_count(n, k)


def test_row_sums():
    bells = bell_numbers(12)
    for n in range(13):
        assert sum(stirling_first_unsigned(n, k) for k in range(n + 1)) == math.factorial(n)
        assert sum(stirling_second(n, k) for k in range(n + 1)) == bells[n]


@given(st.integers(0, 40), st.integers(0, 41))
def test_stirling_recurrences(n, k):
    if k == 0:
        return
    assert stirling_first_unsigned(n + 1, k) == n * stirling_first_unsigned(n, k) + stirling_first_unsigned(n, k - 1)
    assert stirling_second(n + 1, k) == k * stirling_second(n, k) + stirling_second(n, k - 1)


def test_stirling_rejects_negative():
    with pytest.raises(ValueError):
        stirling_first_unsigned(-1, 0)


@pytest.mark.parametrize("n,k,expected", [(5, 2, 10), (4, -1, 0), (4, 5, 0), (0, 0, 1)])
def test_binomial_examples(n, k, expected):
    assert binomial(n, k) == expected


def test_binomial_rejects_negative_n():
    with pytest.raises(ValueError):
        binomial(-1, 0)


@pytest.mark.parametrize("N,p,expected", [(7, 1, 1), (2, 2, Fraction(3, 2)), (3, 3, 1), (0, 2, 0)])
def test_truncated_mzv_examples(N, p, expected):
    assert truncated_mzv_ones(N, p) == expected


@given(st.integers(0, 9), st.integers(1, 5))
def test_truncated_mzv_is_elementary_symmetric(N, p):
    values = [Fraction(1, j) for j in range(1, N + 1)]
    assert truncated_mzv_ones(N, p) == elementary_symmetric(values, p - 1)


def test_stirling_truncated_mzv_cross_identity():
    for j in range(1, 13):
        for p in range(1, j + 1):
            assert stirling_first_unsigned(j, p) == math.factorial(j - 1) * truncated_mzv_ones(j - 1, p)


@pytest.mark.parametrize("n", range(0, 25))
def test_bernoulli_against_akiyama_tanigawa(n):
    expected = bernoulli_akiyama_tanigawa(n)
    if n == 1:
        expected = -expected
    assert bernoulli_number(n) == expected


def test_polynomial_basics():
    x = RationalPolynomial.x()
    p = (x - Fraction(1, 2)) * (x + 2)
    assert p.coeffs == (-1, Fraction(3, 2), 1)
    assert p.degree == 2
    assert p(Fraction(1, 2)) == 0
    assert RationalPolynomial([0, 0]).coeffs == ()
    assert RationalPolynomial([0, 0]).degree == -1
    assert p.derivative() == 2 * x + Fraction(3, 2)
    assert RationalPolynomial([1, 2, 0, 0]).coeffs == (1, 2)


@given(polys, polys, polys)
def test_polynomial_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == RationalPolynomial()


@given(polys, polys, rationals)
def test_polynomial_evaluation_is_homomorphic(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)


@given(polys, polys)
def test_product_rule(a, b):
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


@given(polys, rationals, rationals, rationals)
def test_compose_affine(a, s, t, x):
    assert a.compose_affine(s, t)(x) == a(s * x + t)


def test_tables_are_thread_safe():
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(8) as pool:
        rows = list(pool.map(lambda n: [stirling_second(n, k) for k in range(n + 1)], range(60, 0, -1)))
    for n, row in zip(range(60, 0, -1), rows):
        assert row == [stirling_second(n, k) for k in range(n + 1)]
