"""From a plane quartic to a verified rational map of ``x^2 + y^2 = f``.

The original threefold lives in the chart ``z = 1`` of the curve.  A
projective change ``p' = T p`` with ``F(M p') = kappa * N(p')`` moves it to
the normal-form threefold; with ``kappa = alpha^2 + beta^2`` and
``l = (T p)_k`` the chart form, the map is

    x' + i y' = (x + i y) / ((alpha + i beta) * l^2)

on the fibre coordinates and ``p -> T p / l`` on the base.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra.mpoly import MPoly
from ..algebra.ratfunc import RatFunc, substitute
from ..algebra.scalars import scalar_str
from ..algebra.univariate import constant_sos
from ..curves import NO, YES, PlaneCurve, curve_profile
from ..errors import HypothesisUnverified, NotNonnegative, PrecondViolated
from ..normal_forms import F1, ProjChange, extract_normal_form, mat_inv, standardize
from .constructions import (
    case_a_space,
    case_b_space,
    case_c_space,
    construct_case_a,
    construct_case_b,
    construct_case_c,
)
from .maps import BirationalMap, Hypersurface, MapStep, compose, verified

EQ2A, EQ2B = "Eq2a", "Eq2b"
_ZERO, _ONE = Fraction(0), Fraction(1)


@dataclass
class CurveConstruction:
    family: str
    case: str
    map: BirationalMap
    change: ProjChange
    normal_form: object = None
    section: tuple = None  # (q, c, g) for case a
    notes: list = field(default_factory=list)

    def to_dict(self):
        out = {
            "family": self.family,
            "case": self.case,
            "change": self.change.to_dict(),
            "map": self.map.to_dict(),
        }
        if self.normal_form is not None:
            out["normal_form"] = self.normal_form.to_dict()
        if self.section is not None:
            out["section"] = {k: p.to_str() for k, p in zip("qcg", self.section)}
        return out


def source_space(C: PlaneCurve) -> Hypersurface:
    """``x^2 + y^2 = F(a, b, 1)`` on the chart where the last curve variable is 1."""
    a, b, c = C.F.vars
    vars = ("x", "y", a, b)
    f = C.F.eval({c: 1}).with_vars(vars)
    x, y = MPoly.var("x", vars), MPoly.var("y", vars)
    return Hypersurface(vars, x * x + y * y - f)


def chart_change_map(C: PlaneCurve, change: ProjChange, kappa, chart: int, target: Hypersurface,
                     citation="projective change of the base"):
    """The birational map from ``source_space(C)`` to ``target`` induced by ``change``."""
    names = C.F.vars
    src = source_space(C)
    S = src.vars
    T = change.matrix
    M = change.inverse
    alpha, beta, _ = constant_sos(kappa, None) if kappa != 1 else (_ONE, _ZERO, None)
    # forward
    p = [MPoly.var(names[0], S), MPoly.var(names[1], S), MPoly.one(S)]
    Lp = [sum((p[j].scale(T[i][j]) for j in range(3)), MPoly.zero(S)) for i in range(3)]
    ell = Lp[chart]
    xs, ys = MPoly.var("x", S), MPoly.var("y", S)
    den = (ell * ell).scale(kappa)
    fwd = {
        "x": RatFunc(xs.scale(alpha) + ys.scale(beta), den),
        "y": RatFunc(ys.scale(alpha) - xs.scale(beta), den),
    }
    others = [i for i in range(3) if i != chart]
    for i in others:
        fwd[names[i]] = RatFunc(Lp[i], ell)
    # inverse
    TV = target.vars
    pp = []
    for i in range(3):
        pp.append(MPoly.one(TV) if i == chart else MPoly.var(names[i], TV))
    P = [sum((pp[j].scale(M[i][j]) for j in range(3)), MPoly.zero(TV)) for i in range(3)]
    xt, yt = MPoly.var("x", TV), MPoly.var("y", TV)
    inv = {
        names[0]: RatFunc(P[0], P[2]),
        names[1]: RatFunc(P[1], P[2]),
        "x": RatFunc(xt.scale(alpha) - yt.scale(beta), P[2] * P[2]),
        "y": RatFunc(xt.scale(beta) + yt.scale(alpha), P[2] * P[2]),
    }
    m = BirationalMap(src, target, fwd, inv)
    m.steps = [MapStep("projective-change", dict(m.forward), dict(m.inverse), citation)]
    return m


def node_to_origin(P0) -> ProjChange:
    """A change sending the point ``P0`` to ``[0:0:1]``."""
    k = max(i for i in range(3) if P0[i] != 0)
    cols = [i for i in range(3) if i != k]
    Mcols = []
    for i in cols:
        e = [_ZERO] * 3
        e[i] = _ONE
        Mcols.append(e)
    Mcols.append(list(P0))
    M = [[Mcols[j][i] for j in range(3)] for i in range(3)]
    return ProjChange(mat_inv(M), M)


def family_of(profile, family=None):
    """Pick the equation family from the profile flags (or check the caller's choice)."""
    if family is not None:
        return family
    if profile.real_branch == YES:
        return EQ2A
    if profile.real_branch == NO and profile.nonnegative_f == YES:
        return EQ2B
    raise HypothesisUnverified(
        "cannot decide between the families from the curve flags",
        real_branch=profile.real_branch,
        nonnegative_f=profile.nonnegative_f,
    )


def construct_for_curve(C: PlaneCurve, family=None, profile=None, assert_nonneg=False,
                        verify=True) -> CurveConstruction:
    """Profile, standardize, extract and construct; the composite map is verified."""
    if C.degree != 4:
        raise PrecondViolated("explicit constructions are for quartic curves", degree=C.degree)
    profile = profile or curve_profile(C)
    if assert_nonneg and profile.nonnegative_f != YES:
        profile.nonnegative_f = YES
    family = family_of(profile, family)
    if family == EQ2B:
        out = _case_a_for_curve(C, profile)
    else:
        out = _case_bc_for_curve(C, profile)
    out.family = family
    if verify:
        verified(out.map)
    return out


def _case_bc_for_curve(C, profile):
    change, Cs = standardize(C, profile)
    nf = extract_normal_form(Cs, change)
    if nf.variant == F1:
        tail, chart, target, case = construct_case_b(nf, verify=False), 2, case_b_space(nf), "b"
    else:
        tail, chart, target, case = construct_case_c(nf, verify=False), 1, case_c_space(nf), "c"
    head = chart_change_map(C, change, nf.scale, chart, target)
    return CurveConstruction("", case, compose(head, tail), change, normal_form=nf)


def _case_a_for_curve(C, profile):
    real = [n for n in profile.nodes if n.is_real]
    if not real:
        raise PrecondViolated("case a needs a real node")
    if profile.nonnegative_f == NO:
        raise NotNonnegative("f is not nonnegative", witness=profile.witnesses.get("negative_value_at"))
    change = node_to_origin(real[0].coordinates)
    F2 = change.transform_poly(C.F)
    a, b, c = F2.vars
    # chart a = 1: f(b, c) = q(b) c^2 + cc(b) c + g(b)
    fa = F2.eval({a: 1})
    coeffs = fa.coeffs_in(c)
    if max(coeffs) > 2:
        raise PrecondViolated("the chosen node is not a double point", point=[scalar_str(t) for t in real[0].coordinates])
    base = (b,)
    q, cc, g = (coeffs.get(k, MPoly.zero(fa.vars)).with_vars(base) for k in (2, 1, 0))
    tail = construct_case_a(q, cc, g, var=b, verify=False)
    target = case_a_space(q, cc, g, var=b)
    if target.vars != ("x", "y", b, c):  # pragma: no cover - guarded by construction
        raise PrecondViolated("unexpected chart variables")
    head = chart_change_map(C, change, _ONE, 0, target)
    return CurveConstruction("", "a", compose(head, tail), change, section=(q, cc, g))


def construct_conic_case(C: PlaneCurve, family=EQ2A, bound=6, verify=True) -> CurveConstruction:
    """``x^2 + y^2 = f(v, w)`` with ``f`` of degree 2: project from a rational point."""
    from itertools import product

    from ..algebra.univariate import constant_sos
    from ..errors import NeedsExtension, NoSmoothPointFound, NotSmoothPoint
    from .quadrics import parametrize_quadric_with_point

    if C.degree != 2:
        raise PrecondViolated("expected a conic", degree=C.degree)
    a, b, c = C.F.vars
    coords = ("x", "y", a, b, "t")
    X, Y, A, B, T = MPoly.gens(coords)
    fh = substitute(C.F, {a: A, b: B, c: T}, coords).as_poly()
    Q = X * X + Y * Y - fh
    f = C.F.eval({c: 1})
    vals = sorted({Fraction(p, q) for p in range(-bound, bound + 1) for q in range(1, 3)}, key=lambda t: (abs(t), t))
    for v0, w0 in product(vals, vals):
        val = f.eval({a: v0, b: w0}).constant_value()
        if val <= 0:
            continue
        try:
            al, be, fld = constant_sos(val, None)
        except NeedsExtension:
            continue
        if fld is not None:
            continue
        try:
            m = parametrize_quadric_with_point(
                Q, coords, (al, be, v0, w0, _ONE), chart=4, source_vars=("x", "y", a, b),
                citation="projection from a rational point", verify=verify,
            )
        except NotSmoothPoint:
            continue
        m.source = source_space(C)
        return CurveConstruction(family, "conic", m, ProjChange([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    raise NoSmoothPointFound("no rational point of bounded height with f a sum of two squares", bound=bound)
