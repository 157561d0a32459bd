"""Projection of a quadric from a smooth point."""

from __future__ import annotations

from ..algebra.mpoly import MPoly
from ..algebra.ratfunc import RatFunc, substitute
from ..errors import NotOnQuadric, NotSmoothPoint
from .maps import BirationalMap, Hypersurface, MapStep, verified


def _lift(x, vars):
    if isinstance(x, RatFunc):
        return x.with_vars(vars)
    if isinstance(x, MPoly):
        return RatFunc.lift(x.with_vars(vars))
    return RatFunc.lift(x, vars)


def parametrize_quadric_with_point(
    Q: MPoly,
    coords,
    point,
    chart=None,
    params=None,
    source_vars=None,
    target_vars=None,
    citation="quadric-with-point",
    verify=True,
):
    """Birational map from the chart ``coords[chart] = 1`` of ``Q = 0`` to affine space.

    ``Q`` is a quadratic form in the ``coords`` whose coefficients may
    involve the remaining variables of ``Q.vars`` (the base).  ``point`` is a
    projective point over the base function field.  Lines through the point
    are parametrized by directions ``d`` with ``d[k] = 0`` and ``d[m] = 1``.
    """
    coords = tuple(coords)
    n = len(coords)
    if params is None:
        params = tuple(f"s{i + 1}" for i in range(n - 2))
    base = tuple(v for v in Q.vars if v not in coords)
    if chart is None:
        chart = len(coords) - 1
    cj = coords[chart]
    if source_vars is None:
        source_vars = tuple(c for c in coords if c != cj) + base
    if target_vars is None:
        target_vars = base + tuple(params)
    source_vars, target_vars = tuple(source_vars), tuple(target_vars)
    # the point, over the base field
    pb = [_lift(c, base) for c in point]
    val = substitute(Q, dict(zip(coords, pb)), base)
    if not val.is_zero():
        raise NotOnQuadric("point is not on the quadric", value=val.to_str())
    grad = [substitute(Q.diff(c), dict(zip(coords, pb)), base) for c in coords]
    if all(g.is_zero() for g in grad):
        raise NotSmoothPoint("the gradient of the quadric vanishes at the point")
    nz = [i for i, c in enumerate(pb) if not c.is_zero()]
    k = chart if chart in nz else nz[0]
    m = next(i for i in range(n) if i != k)
    free = [i for i in range(n) if i not in (k, m)]

    # inverse: parameters -> source chart
    T = target_vars
    p_t = [c.with_vars(T) for c in pb]
    g_t = [g.with_vars(T) for g in grad]
    d = [None] * n
    d[k] = RatFunc.lift(MPoly.zero(T))
    d[m] = RatFunc.lift(MPoly.one(T))
    for name, i in zip(params, free):
        d[i] = RatFunc.lift(MPoly.var(name, T))
    Qd = substitute(Q, dict(zip(coords, d)), T)
    Bd = sum((g * di for g, di in zip(g_t, d)), RatFunc.lift(MPoly.zero(T)))
    R = [Qd * pi - Bd * di for pi, di in zip(p_t, d)]
    if R[chart].is_zero():
        raise NotSmoothPoint("projection misses the requested chart")
    inverse = {}
    for i, c in enumerate(coords):
        if i != chart:
            inverse[c] = R[i] / R[chart]
    for b in base:
        inverse[b] = RatFunc.lift(MPoly.var(b, T))

    # forward: source chart -> parameters
    S = source_vars
    X = []
    for i, c in enumerate(coords):
        X.append(RatFunc.lift(MPoly.one(S)) if i == chart else RatFunc.lift(MPoly.var(c, S)))
    p_s = [c.with_vars(S) for c in pb]
    ratio = X[k] / p_s[k]
    dd = [X[i] - ratio * p_s[i] for i in range(n)]
    forward = {}
    for name, i in zip(params, free):
        forward[name] = dd[i] / dd[m]
    for b in base:
        forward[b] = RatFunc.lift(MPoly.var(b, S))

    eq = substitute(Q, {cj: MPoly.one(S), **{c: MPoly.var(c, S) for c in coords if c != cj}}, S).num
    source = Hypersurface(S, eq)
    target = Hypersurface(T, None)
    mp = BirationalMap(source, target, forward, inverse)
    mp.steps = [MapStep("stereographic", dict(mp.forward), dict(mp.inverse), citation)]
    return verified(mp) if verify else mp
