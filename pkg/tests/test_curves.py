import random
from fractions import Fraction

import pytest

from conicbundle.algebra.scalars import QuadField
from conicbundle.curves import (
    NO,
    NODE,
    NOT_NODE,
    YES,
    PlaneCurve,
    classify_singularity,
    curve_profile,
    singular_points,
)
from conicbundle.errors import NotReduced, NotSingular
from conicbundle.normal_forms import ProjChange
from conicbundle.parser import parse_poly

V = ("v", "w", "z")
I = QuadField(None, -1).gen()


def curve(text):
    return PlaneCurve(parse_poly(text, V))


def same_point(p, q):
    cross = [p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]]
    return all(c == 0 for c in cross)


def test_lemniscate_singular_points(lemniscate):
    pts = singular_points(lemniscate)
    expected = [(0, 0, 1), (1, I, 0), (1, -I, 0)]
    assert len(pts) == 3
    for e in expected:
        assert any(same_point(p.coordinates, e) for p in pts)
    assert sorted(p.conjugate_pair for p in pts) == [False, True, True]


def test_singular_points_annihilate_gradient(lemniscate):
    for p in singular_points(lemniscate):
        point = dict(zip(V, p.coordinates))
        assert lemniscate.F.eval(point).is_zero()
        for g in lemniscate.gradient():
            assert g.eval(point).is_zero()


def test_smooth_conic_has_no_singular_points():
    assert singular_points(curve("v^2 + w^2 - z^2")) == []


def test_double_conic_is_not_reduced():
    with pytest.raises(NotReduced):
        singular_points(curve("(v^2 + w^2 - z^2)^2"))


def test_classify_singularity_examples(lemniscate):
    assert classify_singularity(lemniscate, (0, 0, 1)) == NODE
    assert classify_singularity(curve("w^2*z - v^3"), (0, 0, 1)) == NOT_NODE
    with pytest.raises(NotSingular):
        classify_singularity(curve("v^2 + w^2 - z^2"), (1, 0, 1))


def test_lemniscate_tangent_cone(lemniscate):
    node = [p for p in singular_points(lemniscate) if p.is_real][0]
    assert node.tangent_cone.to_str() == "-v^2 + w^2"


def test_profiles():
    prof = curve_profile(curve("(v^2+w^2)^2 - (v^2-w^2)*z^2"))
    assert (prof.degree, prof.node_count, prof.real_node_count, prof.genus) == (4, 3, 1, 0)
    assert prof.collinear_nodes is False
    assert prof.is_trinodal()
    assert prof.real_branch == YES

    smooth = curve_profile(curve("v^4 + w^4 + z^4"))
    assert (smooth.node_count, smooth.genus) == (0, 3)
    conic = curve_profile(curve("v^2 + w^2 - z^2"))
    assert (conic.node_count, conic.genus) == (0, 0)


def test_nonnegativity_flags():
    nonneg = curve_profile(curve("(v^2+w^2)^2 + v^2*z^2 + 2*w^2*z^2"))
    assert nonneg.nonnegative_f == YES and nonneg.real_branch == NO
    neg = curve_profile(curve("(v^2+w^2)^2 - (v^2-w^2)*z^2"))
    assert neg.nonnegative_f == NO
    wit = {k: Fraction(v) for k, v in neg.witnesses["negative_value_at"].items()}
    assert neg_value(neg_curve_F(), wit) < 0


def neg_curve_F():
    return parse_poly("(v^2+w^2)^2 - (v^2-w^2)*z^2", V)


def neg_value(F, point):
    return F.eval(point).constant_value()


def test_trinodal_f1_nodes_at_coordinate_points():
    prof = curve_profile(curve("v^2*w^2 - v^2*z^2 - w^2*z^2 + v*w*z^2"))
    pts = {tuple(p.coordinates) for p in prof.nodes}
    assert pts == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert prof.genus == 0 and prof.collinear_nodes is False


@pytest.mark.parametrize("seed", range(6))
def test_node_classification_is_projectively_invariant(seed, lemniscate):
    rng = random.Random(seed)
    while True:
        T = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        try:
            change = ProjChange(T)
        except ValueError:
            continue
        break
    moved = PlaneCurve(change.transform_poly(lemniscate.F))
    for p in singular_points(lemniscate):
        assert classify_singularity(moved, change.apply_point(list(p.coordinates))) == p.kind
    cusp = curve("w^2*z - v^3")
    moved_cusp = PlaneCurve(change.transform_poly(cusp.F))
    assert classify_singularity(moved_cusp, change.apply_point([0, 0, 1])) == NOT_NODE
