from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given

from formalcr import DivisionByZero, GaussianRational, I, ONE, ZERO, constant_value
from helpers import gaussians, nonzero_gaussians


def G(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


def test_examples():
    assert (1 + I) * (1 - I) == 2
    assert G("3/2", -5).conjugate() == G("3/2", 5)
    assert G("1/2", 1) / G("1/2", 1) == ONE


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_canonical_form():
    x = GaussianRational(Fraction(2, 4), Fraction(-6, -8))
    assert x.re == mpq(1, 2) and x.im == mpq(3, 4)
    assert x.re.denominator > 0 and x.im.denominator > 0


def test_mixes_with_python_numbers():
    assert G(1, 1) + 1 == G(2, 1)
    assert 3 - I == G(3, -1)
    assert Fraction(1, 2) * I == G(0, "1/2")
    assert 1 / I == -I
    assert I ** 4 == ONE and I ** -1 == -I
    assert hash(G(5)) == hash(5)


@pytest.mark.parametrize("value", ["3/2 - 5*i", "-i", "2*i", "0", "-7/3", "1/2 + 1/3*i"])
def test_str_round_trip(value):
    x = constant_value(value)
    assert str(x) == value
    assert constant_value(str(x)) == x


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(gaussians, gaussians)
def test_conjugation(a, b):
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a * a.conjugate()).is_real()


@given(nonzero_gaussians)
def test_inverse(a):
    assert a * a.inverse() == ONE


@given(gaussians, gaussians)
def test_matches_complex_oracle(a, b):
    # Python complex arithmetic on the exact rationals, compared in floating point
    za = complex(float(a.re), float(a.im))
    zb = complex(float(b.re), float(b.im))
    prod = a * b
    assert abs(complex(float(prod.re), float(prod.im)) - za * zb) < 1e-9
