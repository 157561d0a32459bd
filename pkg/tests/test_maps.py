"""Birational maps: the three identities, composition laws and the quadric projection."""

from fractions import Fraction

import pytest
import sympy

from conicbundle.algebra.mpoly import MPoly
from conicbundle.algebra.ratfunc import RatFunc, substitute
from conicbundle.errors import ChartMismatch, NotOnQuadric, NotSmoothPoint
from conicbundle.parser import parse_poly
from conicbundle.rationality.constructions import construct_case_a, elem2_parametrize
from conicbundle.rationality.maps import (
    FAIL,
    PASS,
    BirationalMap,
    Hypersurface,
    compose,
    identity_map,
    step_map,
    verify_parametrization,
)
from conicbundle.rationality.quadrics import parametrize_quadric_with_point

from conftest import to_sympy

Q4 = ("x", "y", "z", "t")


def rf_to_sympy(r: RatFunc):
    return to_sympy(r.num) / to_sympy(r.den)


def sympy_check(m: BirationalMap):
    """The same identities, recomputed in sympy in the opposite order of substitution."""
    tsyms = {v: sympy.Symbol(v) for v in m.target.vars}
    ssyms = {v: sympy.Symbol(v) for v in m.source.vars}
    inv = {ssyms[v]: rf_to_sympy(m.inverse[v]) for v in m.source.vars}
    fwd = {tsyms[v]: rf_to_sympy(m.forward[v]) for v in m.target.vars}
    if m.source.eq is not None:
        on = sympy.cancel(to_sympy(m.source.eq).subs(inv, simultaneous=True))
        assert on == 0
    if m.target.eq is None:
        for v in m.target.vars:
            back = sympy.cancel(fwd[tsyms[v]].subs(inv, simultaneous=True))
            assert back == tsyms[v]


def test_identity_on_affine_space_passes():
    assert verify_parametrization(identity_map(Hypersurface(("a", "b", "c")))).status == PASS


def test_stereographic_sphere():
    Q = parse_poly("x^2 + y^2 + z^2 - t^2", Q4)
    m = parametrize_quadric_with_point(Q, Q4, (1, 0, 0, 1))
    assert m.verified.passed
    sympy_check(m)


def test_point_off_quadric_and_vertex():
    Q = parse_poly("x^2 + y^2 + z^2 - t^2", Q4)
    with pytest.raises(NotOnQuadric):
        parametrize_quadric_with_point(Q, Q4, (1, 1, 0, 1))
    cone = parse_poly("x^2 + y^2 - z^2", Q4)
    with pytest.raises(NotSmoothPoint):
        parametrize_quadric_with_point(cone, Q4, (0, 0, 0, 1))


def test_quadric_over_function_field():
    vars = Q4 + ("w",)
    Q = parse_poly("x^2 + y^2 - w^2*z^2 - t^2", vars)
    w = MPoly.var("w", ("w",))
    m = parametrize_quadric_with_point(Q, Q4, (w, 1, 1, 1), chart=3, source_vars=("x", "y", "z", "w"))
    assert m.verified.passed
    sympy_check(m)


@pytest.mark.parametrize("delta", [1, Fraction(1, 3)])
def test_perturbed_map_fails(delta):
    m = construct_case_a(parse_poly("w^2", ("w",)), parse_poly("0", ("w",)), parse_poly("1", ("w",)))
    bad = verify_parametrization(m.perturbed(delta=delta))
    assert bad.status == FAIL and bad.witness not in (None, "0")


def test_compose_with_identity():
    m = elem2_parametrize(parse_poly("v", ("v",)), a=0, l3=parse_poly("1", ("v",)))
    left = compose(identity_map(m.source), m)
    right = compose(m, identity_map(m.target))
    for c in (left, right):
        assert verify_parametrization(c).passed
        assert c.forward == m.forward


def test_compose_with_inverse_is_identity_on_source():
    m = construct_case_a(parse_poly("1", ("w",)), parse_poly("0", ("w",)), parse_poly("1", ("w",)))
    back = BirationalMap(m.target, m.source, dict(m.inverse), dict(m.forward))
    loop = compose(m, back)
    for v in m.source.vars:
        diff = loop.forward[v] - RatFunc.lift(MPoly.var(v, m.source.vars))
        assert m.source.contains_zero(diff.num)


def test_chain_of_shift_and_scale_equals_single_substitution():
    vars = ("x", "y", "w")
    A = Hypersurface(vars)
    x, y, w = MPoly.gens(vars)
    q = w * w + 1
    shift = step_map("shift", A, A, {"w": w + 1}, {"w": w - 1})
    scale = step_map("scale", A, A, {"x": RatFunc(x * q)}, {"x": RatFunc(x, q)})
    both = compose(shift, scale)
    direct = substitute(x * q, {"w": w + 1}, vars)
    assert both.forward["x"] == direct
    assert both.forward["w"] == RatFunc.lift(w + 1)
    assert both.inverse["x"] == RatFunc(x, q)
    assert both.inverse["w"] == RatFunc.lift(w - 1)
    assert verify_parametrization(both).passed


def test_compose_rejects_mismatched_charts():
    a = identity_map(Hypersurface(("x", "y")))
    b = identity_map(Hypersurface(("u", "v")))
    with pytest.raises(ChartMismatch):
        compose(a, b)


def test_coordinate_permutation_of_target_keeps_pass():
    m = construct_case_a(parse_poly("w^2", ("w",)), parse_poly("0", ("w",)), parse_poly("1", ("w",)))
    tv = m.target.vars
    perm = tv[1:] + tv[:1]
    T = m.target
    gens = {v: MPoly.var(v, tv) for v in tv}
    p = step_map("permute", T, T, {a: gens[b] for a, b in zip(tv, perm)},
                 {b: gens[a] for a, b in zip(tv, perm)})
    assert verify_parametrization(p).passed
    assert verify_parametrization(compose(m, p)).passed


def test_denominator_on_source_is_a_hard_fail():
    vars = ("x", "y")
    S = Hypersurface(vars, parse_poly("x^2 - y", vars))
    x, y = MPoly.gens(vars)
    m = BirationalMap(S, S, {"x": RatFunc(x, x * x - y), "y": y}, {"x": x, "y": y})
    out = verify_parametrization(m)
    assert out.status == FAIL and "denominator" in out.check
