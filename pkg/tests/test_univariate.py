from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conicbundle.algebra.univariate import (
    factor_univariate,
    negative_witness,
    sturm_real_roots,
    sum_of_two_squares,
    to_dense,
)
from conicbundle.errors import DegreeTooLarge, NeedsExtension, NotNonnegative, UnsupportedField
from conicbundle.parser import parse_poly

from conftest import to_sympy, univariate


def W(text):
    return parse_poly(text, ("w",))


def _rebuild(content, facs):
    out = W("1").scale(content)
    for g, m in facs:
        out = out * g ** m
    return out


def test_cyclotomic_split():
    c, facs = factor_univariate(W("w^4 - 1"))
    assert sorted(g.to_str() for g, _ in facs) == ["w + 1", "w - 1", "w^2 + 1"]
    assert _rebuild(c, facs) == W("w^4 - 1")


def test_gaussian_split():
    _, facs = factor_univariate(W("w^2 + 1"), "gaussian_rationals")
    assert len(facs) == 2 and all(g.degree() == 1 for g, _ in facs)


def test_square_detection():
    _, facs = factor_univariate(W("(w^2 + 1)^2"))
    assert [(g.to_str(), m) for g, m in facs] == [("w^2 + 1", 2)]


def test_factor_errors():
    with pytest.raises(UnsupportedField):
        factor_univariate(W("w"), "reals")
    with pytest.raises(DegreeTooLarge):
        factor_univariate(W("w^9 + 1"), "gaussian_rationals")


@pytest.mark.parametrize("text,expected", [
    ("w^4 + 1", ("w^2", "1")),
    ("2*w^2 + 2", ("w + 1", "w - 1")),
    ("w^2 + 1", ("w", "1")),
])
def test_sum_of_two_squares_examples(text, expected):
    A, B, field = sum_of_two_squares(W(text))
    assert field is None
    assert (A.to_str(), B.to_str()) == expected


def test_sum_of_two_squares_rejects_negative_values():
    with pytest.raises(NotNonnegative):
        sum_of_two_squares(W("w^2 - 1"))
    with pytest.raises(NotNonnegative):
        sum_of_two_squares(W("-w^2 - 1"))


def test_sum_of_two_squares_with_one_extension():
    A, B, field = sum_of_two_squares(W("w^2 + 3"))  # 3 is not a sum of two rational squares
    assert field is not None
    assert A * A + B * B == W("w^2 + 3")


def test_sum_of_two_squares_reports_needed_extension():
    # 3*(w^2 + 2)*(w^2 + 5)... a product whose pieces need different radicands
    p = W("(w^2 + 3)*(w^2 + 7)*(w^2 + 11)*3")
    try:
        A, B, _ = sum_of_two_squares(p)
    except NeedsExtension:
        return
    assert A * A + B * B == p


@pytest.mark.parametrize("text,interval,count", [
    ("w^2 + 1", None, 0),
    ("w^2 - 2", None, 2),
    ("w^3 - w", (-2, 2), 3),
])
def test_sturm_examples(text, interval, count):
    assert sturm_real_roots(W(text), interval) == count


def test_sturm_on_constants():
    assert sturm_real_roots(W("5")) == 0


def _sympy_real_root_count(p):
    expr = to_sympy(p)
    if expr.is_number:
        return 0
    return len(set(sympy.Poly(expr).real_roots()))


@given(univariate(max_deg=6))
def test_sturm_matches_sympy(p):
    assert sturm_real_roots(p) == _sympy_real_root_count(p)


linear_or_quadratic = st.one_of(
    st.builds(lambda a: f"(w - {a})", st.integers(-5, 5)),
    st.builds(lambda a, b: f"(w^2 + {a}*w + {b})", st.integers(-3, 3), st.integers(5, 9)),
)


@given(st.lists(linear_or_quadratic, min_size=1, max_size=4))
def test_sturm_agrees_with_factor_counts(parts):
    p = W("*".join(parts))
    _, facs = factor_univariate(p)
    from_factors = sum(1 for g, _ in facs if g.degree() == 1)
    assert sturm_real_roots(p) == from_factors


@st.composite
def nonnegative(draw):
    """Products of squares and positive-definite quadratics, times a positive constant."""
    parts = []
    for _ in range(draw(st.integers(1, 3))):
        if draw(st.booleans()):
            a = draw(st.integers(-4, 4))
            parts.append(f"(w - {a})^2")
        else:
            a, b = draw(st.integers(-3, 3)), draw(st.integers(1, 4))
            parts.append(f"((w - {a})^2 + {b * b})")
    c = draw(st.sampled_from([1, 2, 5, 10, 13]))
    return W(f"{c}*" + "*".join(parts))


@given(nonnegative())
def test_sum_of_two_squares_identity(p):
    A, B, _ = sum_of_two_squares(p)
    assert (A * A + B * B - p).is_zero()


@given(univariate(max_deg=5))
def test_negative_witness_is_really_negative(p):
    d = to_dense(p)
    x = negative_witness(d)
    if x is not None:
        assert p.eval({"w": x}).constant_value() < 0
    else:
        for t in range(-20, 21):
            assert p.eval({"w": Fraction(t, 4)}).constant_value() >= 0
