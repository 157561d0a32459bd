import pytest
from hypothesis import given

from conicbundle.errors import PolySyntaxError, UnknownCharacter
from conicbundle.parser import parse_poly, print_poly

from conftest import mpolys


def test_expansion_example():
    p = parse_poly("(v^2+w^2)^2 - v^2 + w^2", ("v", "w"))
    assert len(p.terms) == 5
    assert print_poly(p) == "v^4 + 2*v^2*w^2 + w^4 - v^2 + w^2"


@pytest.mark.parametrize("text,exc,position", [
    ("v^", PolySyntaxError, 2),
    ("v+#w", UnknownCharacter, 2),
    ("2v", PolySyntaxError, 1),
])
def test_error_positions(text, exc, position):
    with pytest.raises(exc) as info:
        parse_poly(text)
    assert info.value.position == position


def test_primed_names_and_rationals():
    p = parse_poly("3/4*x'^2 - y'", ("x'", "y'"))
    assert p.to_str() == "3/4*x'^2 - y'"


def test_empty_input_rejected():
    with pytest.raises(PolySyntaxError):
        parse_poly("   ")


@given(mpolys())
def test_round_trip(p):
    text = print_poly(p)
    q = parse_poly(text, p.vars)
    assert q == p
    assert print_poly(q) == text
