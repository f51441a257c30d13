from fractions import Fraction

import mpmath
import pytest

from intasym.bigfloat import context
from intasym.scalars import Constant, ScalarSyntaxError, parse_scalar


@pytest.mark.parametrize("text,expected", [
    ("3/4", Fraction(3, 4)), ("-1/2", Fraction(-1, 2)), (3, Fraction(3)), ("2**-3", Fraction(1, 8)),
    ("0.125", Fraction(1, 8)), (0.1, Fraction(0.1)), ("(1/2 + 1/3)*6", Fraction(5)),
])
def test_rational_inputs_stay_exact(text, expected):
    assert parse_scalar(text) == expected


def test_bare_float_is_exact_binary_value():
    assert parse_scalar(0.1) != Fraction(1, 10)
    assert parse_scalar(0.1) == Fraction(3602879701896397, 36028797018963968)


@pytest.mark.parametrize("text,value", [
    ("sqrt(2/pi)", lambda: mpmath.sqrt(2 / mpmath.pi)),
    ("1/sqrt(2)", lambda: 1 / mpmath.sqrt(2)),
    ("sqrt(e)*erfc(1/sqrt(2))", lambda: mpmath.sqrt(mpmath.e) * mpmath.erfc(1 / mpmath.sqrt(2))),
    ("1/(pi*2**(3/2-1))", lambda: 1 / (mpmath.pi * mpmath.sqrt(2))),
])
def test_constants_evaluate_at_requested_precision(text, value):
    c = parse_scalar(text)
    assert isinstance(c, Constant)
    ctx = context(300)
    with mpmath.workprec(300):
        assert abs(c.evaluate(ctx) - value()) < mpmath.mpf(2) ** -290


@pytest.mark.parametrize("text", [
    "__import__('os')", "open('x')", "x + 1", "2**100000", "lambda: 1", "[1]", "sqrt", "",
])
def test_rejects_unsafe_or_unknown(text):
    with pytest.raises((ScalarSyntaxError, ValueError, SyntaxError)):
        parse_scalar(text)


def test_rejects_booleans():
    with pytest.raises(ScalarSyntaxError):
        parse_scalar(True)
