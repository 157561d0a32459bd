import pytest
from hypothesis import given

from conicbundle.algebra.mpoly import MPoly
from conicbundle.algebra.ratfunc import RatFunc, substitute
from conicbundle.errors import DivisionByZero
from conicbundle.parser import parse_poly

from conftest import mpolys


def test_substitute_identity_case():
    V = ("v", "w")
    assert substitute(parse_poly("v^2 - w^2", V), {"v": MPoly.var("w", V)}).is_zero()


def test_substitute_reciprocal():
    V = ("u", "t")
    t = MPoly.var("t", V)
    out = substitute(parse_poly("u^2 + 1", V), {"u": RatFunc(MPoly.one(V), t)})
    assert out == RatFunc(parse_poly("1 + t^2", V), parse_poly("t^2", V))


def test_substitute_scaling():
    V = ("s", "x", "y", "z", "x'", "y'", "z'")
    s = MPoly.var("s", V)
    binds = {n: s * s * MPoly.var(n + "'", V) for n in "xyz"}
    out = substitute(parse_poly("x^2 + y^2 + z^2", V), binds).as_poly()
    assert out == parse_poly("s^4*(x'^2 + y'^2 + z'^2)", V)


def test_normal_form_is_reduced():
    V = ("v", "w")
    r = RatFunc(parse_poly("v^2 - w^2", V), parse_poly("2*v - 2*w", V))
    assert r.num == parse_poly("1/2*v + 1/2*w", V) or r.num * 2 == parse_poly("v + w", V) * r.den.lc() * 2
    assert r.den.is_constant()


def test_zero_denominator_rejected():
    V = ("v",)
    with pytest.raises(DivisionByZero):
        RatFunc(MPoly.one(V), MPoly.zero(V))
    with pytest.raises(DivisionByZero):
        substitute(RatFunc(MPoly.one(V), MPoly.var("v", V)), {"v": MPoly.zero(V)})


@given(mpolys(max_terms=3), mpolys(max_terms=3), mpolys(max_terms=3))
def test_field_operations(a, b, c):
    if b.is_zero() or c.is_zero():
        return
    x = RatFunc(a, b)
    y = RatFunc(c, b)
    assert (x + y) * RatFunc(b, c) == RatFunc(a + c, c)
    assert (x / y) * y == x
