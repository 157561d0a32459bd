import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conicbundle.algebra.mpoly import MPoly
from conicbundle.corpus import RESIDUE_PARAMETERS
from conicbundle.errors import IndeterminateValuation, UnsupportedSymbolShape
from conicbundle.residues import (
    MINUS_ONE_MINUS_ONE,
    NOT_STABLY_RATIONAL_OVER_PUISEUX,
    REQUIRED_TRUSTED,
    SCALED_VARS,
    TRIVIAL,
    UNDETERMINED,
    SymbolTriple,
    build_certificate,
    check_scaling_identity,
    component_spec,
    default_scaling,
    rewritten_entry,
    systems,
    tame_residue,
    valuation_along,
)

from conftest import mpolys, to_sympy

W = SCALED_VARS
s, u, v, w, x, y, z = MPoly.gens(W)
MINUS = MPoly.const(-1, W)
SPEC = component_spec(1, 0)


def sympy_scaling_oracle(m, e):
    """Substitute and compare in sympy, independently of the in-house engine."""
    before, after = systems(m, e)
    S = sympy.Symbol("s")
    subs = {sympy.Symbol(k): S ** n * sympy.Symbol(k + "_p") for k, n in default_scaling(m).items()}
    for old, new, k in zip(before, after, (4 * m, 4 * m - 2)):
        lhs = to_sympy(old).subs(subs, simultaneous=True)
        assert sympy.expand(lhs - S ** k * to_sympy(new)) == 0


@pytest.mark.parametrize("m,e", [(1, 0), (2, 2), (3, 1)])
def test_scaling_identity_against_sympy(m, e):
    assert check_scaling_identity(m, e).passed
    sympy_scaling_oracle(m, e)


def test_wrong_scaling_fails_with_witness():
    bad = dict(default_scaling(1), w=2)
    out = check_scaling_identity(1, 0, bad)
    assert not out.passed and out.witness and out.relation == 2


def test_valuation_examples():
    assert valuation_along(s ** 1 * (s * u + v), SPEC) == 1
    assert valuation_along(s ** 3, SPEC) == 3
    assert valuation_along(s * u + v, SPEC) == 0


def test_valuation_indeterminate_on_the_component():
    with pytest.raises(IndeterminateValuation):
        valuation_along(w - v, SPEC)
    with pytest.raises(IndeterminateValuation):
        valuation_along(x * x + y * y + z * z + u * u + 1, SPEC)


def test_component_at_s_zero():
    for m, e in ((1, 0), (2, 1)):
        assert component_spec(m, e).check()


def test_residue_examples():
    h = rewritten_entry(1)
    assert tame_residue(SymbolTriple((h, MINUS, MINUS)), SPEC) == MINUS_ONE_MINUS_ONE
    assert tame_residue(SymbolTriple((s * s * (v + 2), MINUS, MINUS)), SPEC) == TRIVIAL
    assert tame_residue(SymbolTriple((s ** 3 * (v + 2), MINUS, MINUS)), SPEC) == MINUS_ONE_MINUS_ONE
    with pytest.raises(UnsupportedSymbolShape):
        tame_residue(SymbolTriple((h, v, MINUS)), SPEC)


def test_symbol_entries_are_square_classes():
    sym = SymbolTriple((s ** 3 * (v + 1) ** 2 * u, MINUS, MINUS))
    assert sym.entries[0].as_poly() == s * u


@pytest.mark.parametrize("m,e", RESIDUE_PARAMETERS)
def test_certificate_grid(m, e):
    cert = build_certificate(m, e)
    assert cert.scaling_check.passed
    assert cert.valuation == 2 * m - 1
    assert cert.residue == MINUS_ONE_MINUS_ONE
    assert cert.conclusion == NOT_STABLY_RATIONAL_OVER_PUISEUX
    assert set(REQUIRED_TRUSTED) <= set(cert.trusted_facts)


@pytest.mark.parametrize("missing", REQUIRED_TRUSTED)
def test_missing_trusted_fact_blocks_conclusion(missing):
    cert = build_certificate(1, 0, trusted=[t for t in REQUIRED_TRUSTED if t != missing])
    assert cert.valuation == 1 and cert.residue == MINUS_ONE_MINUS_ONE
    assert cert.conclusion == UNDETERMINED


def test_certificate_document():
    doc = build_certificate(2, 1).to_dict()
    assert doc["substitution"]["w"] == "s^3*w'"
    assert doc["valuation"] == 3 and doc["residue"] == ["-1", "-1"]
    assert len(doc["equ1_system"]) == 2


UNIT_VARS = ("u'", "v'", "y'")


def unit(p):
    """A polynomial in u', v', y' with constant term 1: nonzero on the component."""
    return p.with_vars(W) + MPoly.one(W) if p.eval({n: 0 for n in UNIT_VARS}).is_zero() else p.with_vars(W)


@given(st.integers(0, 6), st.integers(0, 6), mpolys(UNIT_VARS, max_terms=3, max_exp=2),
       mpolys(UNIT_VARS, max_terms=3, max_exp=2))
def test_valuation_is_additive(a, b, p1, p2):
    h1, h2 = s ** a * unit(p1), s ** b * unit(p2)
    assert valuation_along(h1 * h2, SPEC) == valuation_along(h1, SPEC) + valuation_along(h2, SPEC) == a + b


@given(st.integers(0, 9), mpolys(UNIT_VARS, max_terms=3, max_exp=2))
def test_residue_depends_only_on_parity(k, p):
    out = tame_residue(SymbolTriple((s ** k * unit(p), MINUS, MINUS)), SPEC)
    assert out == (MINUS_ONE_MINUS_ONE if k % 2 else TRIVIAL)
