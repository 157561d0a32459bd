import random
from fractions import Fraction

import pytest

from conicbundle.corpus import CURVES, acceptance_curves, curve_by_name
from conicbundle.curves import UNKNOWN, curve_profile
from conicbundle.errors import HypothesisUnverified, NotNonnegative, PrecondViolated
from conicbundle.rationality.pipeline import (
    EQ2A,
    EQ2B,
    construct_conic_case,
    construct_for_curve,
    family_of,
    source_space,
)

CASE_OF_KIND = {"F1": "b", "F2": "c", "a": "a"}


class _Pole(Exception):
    pass


def value(r, point):
    d = r.den.eval(point).constant_value()
    if d == 0:
        raise _Pole
    return r.num.eval(point).constant_value() / d


def sample_check(m, seed, tries=30):
    """Push random target points through the inverse and back, exactly."""
    rng = random.Random(seed)
    src_eq = m.source.eq
    hits = 0
    for _ in range(tries):
        t = {v: Fraction(rng.randint(-7, 7), rng.randint(1, 3)) for v in m.target.vars}
        try:
            s = {v: value(m.inverse[v], t) for v in m.source.vars}
            back = {v: value(m.forward[v], s) for v in m.target.vars}
        except _Pole:
            continue
        assert src_eq.eval(s).is_zero()
        assert all(back[v] == t[v] for v in t)
        hits += 1
    assert hits >= tries // 2


@pytest.mark.parametrize("entry", acceptance_curves(), ids=lambda e: e.name)
def test_corpus_curve_construction(entry):
    C = entry.curve()
    out = construct_for_curve(C)
    assert out.family == entry.family
    assert out.case == CASE_OF_KIND[entry.kind]
    assert out.map.verified.passed
    assert out.map.source.same_as(source_space(C))
    sample_check(out.map, seed=len(entry.name))


@pytest.mark.parametrize("entry", [e for e in CURVES if e.kind == "conic"], ids=lambda e: e.name)
def test_conic_construction(entry):
    out = construct_conic_case(entry.curve(), family=entry.family)
    assert out.case == "conic" and out.map.verified.passed
    sample_check(out.map, seed=3)


def test_family_of_flags(lemniscate):
    prof = curve_profile(lemniscate)
    assert family_of(prof) == EQ2A
    assert family_of(curve_profile(curve_by_name("isolated-node").curve())) == EQ2B
    prof.real_branch = UNKNOWN
    with pytest.raises(HypothesisUnverified):
        family_of(prof)


def test_forcing_the_wrong_family_is_rejected(lemniscate):
    with pytest.raises(NotNonnegative):
        construct_for_curve(lemniscate, family=EQ2B)


def test_quartic_pipeline_rejects_conics():
    with pytest.raises(PrecondViolated):
        construct_for_curve(curve_by_name("circle").curve())
    with pytest.raises(PrecondViolated):
        construct_conic_case(curve_by_name("lemniscate").curve())
