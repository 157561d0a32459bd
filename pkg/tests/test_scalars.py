from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conicbundle.algebra.scalars import (
    QuadField,
    adjoin_sqrt,
    complex_conj,
    scalar_str,
    sign,
    sqrt_in,
    squarefree_part,
)
from conicbundle.errors import NeedsExtension
from conicbundle.parser import parse_poly

from conftest import small_fractions

SQ2 = QuadField(None, 2)


def test_fractions_reduce_with_positive_denominator():
    x = Fraction(4, -6)
    assert (x.numerator, x.denominator) == (-2, 3)


def test_squarefree_part():
    assert squarefree_part(Fraction(12)) == 3
    assert squarefree_part(Fraction(-8, 9)) == -2
    with pytest.raises(ValueError):
        QuadField(None, 4)


def test_sqrt_two_arithmetic():
    s = SQ2.gen()
    assert s * s == 2
    assert (1 + s) * (1 - s) == -1
    assert (1 + s).inverse() * (1 + s) == 1
    text = scalar_str(3 + s / 2)
    assert text == "3+1/2*sqrt(2)"
    assert parse_poly(text, ("w",)).constant_value() == 3 + s / 2


def test_sign_of_real_quadratic_numbers():
    s = SQ2.gen()
    assert sign(s - Fraction(7, 5)) == 1  # 1.414... > 1.4
    assert sign(s - Fraction(3, 2)) == -1
    assert sign(3 - 2 * s) == 1  # 3 > 2.828...


def test_sqrt_in_and_adjoin():
    assert sqrt_in(Fraction(9, 4), None) == Fraction(3, 2)
    assert sqrt_in(Fraction(2), None) is None
    F, y = adjoin_sqrt(Fraction(8))
    assert y * y == 8 and F.r == 2
    s = SQ2.gen()
    assert sqrt_in(3 + 2 * s, SQ2) * sqrt_in(3 + 2 * s, SQ2) == 3 + 2 * s  # (1 + sqrt 2)^2


def test_nested_real_towers_are_bounded():
    F = QuadField(QuadField(None, 2), 3)
    with pytest.raises(NeedsExtension):
        QuadField(F, 5)


def test_conjugation_on_gaussian_numbers():
    i = QuadField(None, -1).gen()
    z = 2 + 3 * i
    assert z * complex_conj(z) == 13


@given(small_fractions, small_fractions, small_fractions, small_fractions)
def test_field_axioms_in_q_sqrt2(a, b, c, d):
    s = SQ2.gen()
    x, y = a + b * s, c + d * s
    assert x * y == y * x
    assert (x + y) * x == x * x + y * x
    if x != 0:
        assert (y / x) * x == y


@given(st.integers(min_value=1, max_value=400))
def test_sign_agrees_with_floats(n):
    s = SQ2.gen()
    x = Fraction(n, 100) - s
    assert sign(x) == (1 if n / 100 > 2 ** 0.5 else -1)
