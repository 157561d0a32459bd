from fractions import Fraction

import pytest
import sympy
from hypothesis import settings
from hypothesis import strategies as st

from conicbundle.algebra.mpoly import MPoly

# one summary line per acceptance criterion, filled in by tests/test_acceptance.py
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])


settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

VARS3 = ("v", "w", "z")

small_fractions = st.builds(
    Fraction, st.integers(min_value=-9, max_value=9), st.integers(min_value=1, max_value=4)
)


@st.composite
def mpolys(draw, vars=VARS3, max_terms=5, max_exp=3):
    n = draw(st.integers(min_value=0, max_value=max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(min_value=0, max_value=max_exp)) for _ in vars)
        c = draw(small_fractions)
        if c:
            terms[e] = terms.get(e, Fraction(0)) + c
    return MPoly(vars, {e: c for e, c in terms.items() if c})


@st.composite
def univariate(draw, var="w", max_deg=5, nonzero=True):
    coeffs = draw(st.lists(small_fractions, min_size=1, max_size=max_deg + 1))
    if nonzero and all(c == 0 for c in coeffs):
        coeffs[-1] = Fraction(1)
    return MPoly.from_univariate(coeffs, var, (var,))


def to_sympy(p: MPoly):
    """Independent oracle: the same polynomial as a sympy expression."""
    syms = sympy.symbols(" ".join(v.replace("'", "_p") for v in p.vars)) if p.vars else ()
    if len(p.vars) == 1:
        syms = (syms,)
    out = sympy.Integer(0)
    for e, c in p.terms.items():
        m = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            m *= s ** k
        out += m
    return sympy.expand(out)


@pytest.fixture
def lemniscate():
    from conicbundle.corpus import curve_by_name

    return curve_by_name("lemniscate").curve()
