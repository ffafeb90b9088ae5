from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import PROPERTY_SETTINGS
from core.exceptions import InvalidParameterError
from core.polynomial import X, IntPolynomial, from_rational, from_sympy, to_sympy

coefficients = st.lists(st.integers(min_value=-50, max_value=50), max_size=6)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=20)
polynomials = coefficients.map(IntPolynomial)


def _eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@pytest.mark.parametrize("coeffs, text", [
    ([1, 2, 1], "1 + 2*x + x^2"),
    ([0, 1, 1], "x + x^2"),
    ([], "0"),
    ([0, 0, 0], "0"),
    ([-1, 0, -3], "-1 - 3*x^2"),
    ([1, -1], "1 - x"),
    ([0, 0, 7], "7*x^2"),
])
def test_to_text(coeffs, text):
    assert IntPolynomial(coeffs).to_text() == text


def test_zero_polynomial_has_degree_minus_one():
    zero = IntPolynomial([0, 0])
    assert zero.is_zero() and zero.degree == -1 and zero.leading == 0


def test_ring_operations():
    one_plus_x = IntPolynomial([1, 1])
    assert one_plus_x * one_plus_x == IntPolynomial([1, 2, 1])
    assert one_plus_x ** 3 == IntPolynomial([1, 3, 3, 1])
    assert one_plus_x - one_plus_x == IntPolynomial()
    assert one_plus_x.multiply_by_x_power(2) == IntPolynomial([0, 0, 1, 1])
    assert IntPolynomial([1, 2]).add_constant(-1).to_text() == "2*x"
    assert IntPolynomial([1, 3, 3, 1]).derivative() == IntPolynomial([3, 6, 3])


def test_exact_evaluation():
    p = IntPolynomial([1, 5, 5])
    assert p.eval_rational(Fraction(-1, 5)) == Fraction(1, 5)
    assert p.sign_at(Fraction(-1, 2)) == -1
    assert IntPolynomial([1, 1]).sign_at(-1) == 0


def test_big_coefficients_stay_exact():
    p = IntPolynomial([1, 1]) ** 80
    assert p.coefficient(40) == 107507208733336176461620
    assert p.eval_rational(-1) == 0


def test_json_round_trip_uses_strings():
    p = IntPolynomial([1, 10, 15])
    assert p.to_json() == ["1", "10", "15"]
    assert IntPolynomial.from_json(p.to_json()) == p


def test_non_integer_coefficient_is_rejected():
    with pytest.raises(InvalidParameterError):
        IntPolynomial([1, 0.5])


@PROPERTY_SETTINGS
@given(coefficients, rationals)
def test_sign_at_agrees_with_rational_evaluation(coeffs, x):
    value = _eval(coeffs, x)
    assert IntPolynomial(coeffs).sign_at(x) == (value > 0) - (value < 0)


@PROPERTY_SETTINGS
@given(polynomials, polynomials, polynomials)
def test_ring_axioms(p, q, r):
    zero, one = IntPolynomial(), IntPolynomial.one()
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + zero == p and p * one == p and p * zero == zero
    assert p - p == zero


@PROPERTY_SETTINGS
@given(polynomials, polynomials, rationals)
def test_evaluation_is_a_ring_homomorphism(p, q, x):
    assert (p * q).eval_rational(x) == p.eval_rational(x) * q.eval_rational(x)
    assert (p + q).eval_rational(x) == p.eval_rational(x) + q.eval_rational(x)


@PROPERTY_SETTINGS
@given(polynomials, st.integers(min_value=0, max_value=5), rationals)
def test_shift_multiplies_by_a_power_of_x(p, k, x):
    assert p.multiply_by_x_power(k).eval_rational(x) == p.eval_rational(x) * x ** k


@PROPERTY_SETTINGS
@given(polynomials)
def test_sympy_bridge_keeps_signs(p):
    back = from_sympy(to_sympy(p))
    assert back == p.primitive()
    for x in (Fraction(0), Fraction(2), Fraction(-1, 3), Fraction(5, 2)):
        assert back.sign_at(x) == p.sign_at(x)


def test_from_sympy_clears_denominators():
    poly = sympy.Poly([sympy.Rational(-3, 4), sympy.Rational(1, 2)], X, domain=sympy.QQ)
    assert from_sympy(poly) == IntPolynomial([2, -3])
    assert from_sympy(to_sympy(IntPolynomial())).is_zero()


def test_from_rational_clears_denominators():
    assert from_rational([Fraction(1, 2), Fraction(-3, 4)]) == IntPolynomial([2, -3])
