from fractions import Fraction

import pytest
from hypothesis import given

from lgr.errors import DivisionByZero, InputError, ZeroDenominator
from lgr.exact import DualRational, dual_lift, format_rational, parse_rational, rat_ops, to_rational

from conftest import rationals


def test_rat_ops_examples():
    assert rat_ops(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)
    assert rat_ops(Fraction(7, 3), 0, "add") == Fraction(7, 3)
    assert rat_ops(Fraction(2, 4), Fraction(3, 6), "mul") == Fraction(1, 4)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        rat_ops(1, 0, "div")


def test_canonical_form():
    x = Fraction(6, -4)
    assert (x.numerator, x.denominator) == (-3, 2)
    assert format_rational(Fraction(0)) == "0"
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-3, 6)) == "-1/2"


@pytest.mark.parametrize("text,value", [("3", 3), ("-7/21", Fraction(-1, 3)), (" +4 / 6 ", Fraction(2, 3))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


def test_parse_rational_errors():
    with pytest.raises(ZeroDenominator):
        parse_rational("1/0")
    for bad in ("1.5", "a", "1/-2", ""):
        with pytest.raises(InputError):
            parse_rational(bad)


def test_floats_refused():
    with pytest.raises(InputError):
        to_rational(0.5)
    with pytest.raises(InputError):
        to_rational(True)


@given(rationals(), rationals(), rationals())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert rat_ops(1, a, "div") * a == 1


@given(rationals())
def test_text_round_trip(a):
    assert parse_rational(format_rational(a)) == a


def test_dual_examples():
    assert dual_lift(3, 1) ** 2 == DualRational(9, 6)
    x = dual_lift(Fraction(5, 2), 0)
    assert ((x * x - 3 * x) / (x + 1)).slope == 0
    # oracle: d(1/x)/dx at 2 is -1/4
    assert 1 / dual_lift(2, 1) == DualRational(Fraction(1, 2), Fraction(-1, 4))


def test_dual_division_requires_unit():
    with pytest.raises(DivisionByZero):
        DualRational(1, 2) / DualRational(0, 1)


@given(rationals(), rationals(), rationals(), rationals())
def test_dual_slope_matches_derivative(x, a, b, c):
    # f = a x^3 + b x^2 + c, f' = 3a x^2 + 2b x
    d = dual_lift(x)
    f = a * d**3 + b * d * d + c
    assert f.value == a * x**3 + b * x**2 + c
    assert f.slope == 3 * a * x**2 + 2 * b * x


def test_dual_equals_plain_rational():
    assert DualRational(3, 0) == 3
    assert hash(DualRational(Fraction(1, 2), 0)) == hash(Fraction(1, 2))
    assert DualRational(3, 1) != 3
