from fractions import Fraction

import mpmath
from hypothesis import given
from hypothesis import strategies as st

from intasym.bigfloat import BigFloat, bigsum, context

ctx = context(64)
vals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10 ** 6).filter(lambda x: x != 0)


def exact(x):
    return BigFloat.exact(x, ctx)


def as_mpf(x, bits=400):
    c = context(bits)
    return c.mpf(x.numerator) / x.denominator


@given(vals, vals)
def test_error_bounds_contain_exact_results(x, y):
    # 64-bit arithmetic must stay within the tracked bound of the exact rational result
    for got, true in [(exact(x) + exact(y), x + y), (exact(x) - exact(y), x - y),
                      (exact(x) * exact(y), x * y), (exact(x) / exact(y), x / y)]:
        assert abs(as_mpf(true) - got.value) <= got.error


def test_dyadic_values_are_exact():
    assert exact(Fraction(3, 8)).error == 0
    assert exact(Fraction(1, 3)).error > 0


def test_division_by_uncertain_zero_raises():
    z = BigFloat(ctx.zero, ctx.mpf(1e-10), ctx)
    try:
        exact(1) / z
    except ZeroDivisionError:
        return
    raise AssertionError("expected ZeroDivisionError")


def test_bigsum_and_comparisons():
    s = bigsum([exact(Fraction(1, 3))] * 3, ctx)
    assert s.contains(1)
    assert s.close_to(exact(1))
    assert not s.contains(Fraction(101, 100))
    assert s.digits(5).startswith("1.0000")
