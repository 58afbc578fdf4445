from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chl.coeff import ONE, S, T, ZERO, PoleError, RatCoeff, series_coefficients

small = st.integers(-4, 4)
polys = st.lists(small, min_size=1, max_size=4)


@st.composite
def coeffs(draw):
    num = draw(polys)
    den = draw(polys.filter(lambda c: any(c)))
    return RatCoeff.from_polys(num, den)


@given(coeffs(), coeffs(), coeffs())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    if a:
        assert a * a.inverse() == ONE


@given(coeffs(), st.fractions(min_value=-3, max_value=3, max_denominator=5))
def test_evaluate_is_a_homomorphism(a, x):
    b = a * a + ONE
    try:
        lhs = (a * b).evaluate(x)
        rhs = a.evaluate(x) * b.evaluate(x)
    except PoleError:
        return
    assert lhs == rhs


def test_normal_form_is_canonical():
    a = (ONE - T) / (ONE - S)
    assert a == ONE + S
    assert hash(a) == hash(ONE + S)
    assert T == S * S


def test_pole_is_reported():
    with pytest.raises(PoleError):
        (ONE / (ONE - S)).evaluate(1)
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_parse_roundtrip():
    a = (ONE - T) ** 2 / (ONE + S * 3)
    assert RatCoeff.parse(a.short()) == a


def test_t_zero_and_constant():
    a = (ONE - T) ** 3 + S
    assert a.substitute_t_zero() == ONE
    assert a.evaluate(0) == Fraction(1)
    assert (ONE * 7 / 2).constant() == Fraction(7, 2)


def test_series_geometric():
    # 1/(1-s) = 1 + s + s^2 + ...
    assert series_coefficients([1], [1, -1], 5) == [1] * 6
