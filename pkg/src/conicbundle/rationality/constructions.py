"""Explicit rationality constructions for quartic conic bundles ``x^2 + y^2 = f``.

Every construction is a chain of named substitutions (``MapStep``) ending in
a stereographic projection or a linear solve; the composite is verified
exactly before it is returned.
"""

from __future__ import annotations

from fractions import Fraction

from ..algebra.mpoly import MPoly
from ..algebra.ratfunc import RatFunc
from ..algebra.scalars import (
    adjoin_sqrt,
    field_of,
    is_rational,
    join_fields,
    scalar_str,
    sign,
    to_scalar,
)
from ..algebra.univariate import constant_sos, negative_witness, sum_of_two_squares, to_dense
from ..errors import (
    HypothesisViolated,
    NeedsExtension,
    NoSmoothPointFound,
    NotNonnegative,
    PrecondViolated,
)
from .maps import Hypersurface, compose_all, step_map, verified
from .quadrics import parametrize_quadric_with_point

SEARCH_HEIGHT = 20
_ZERO, _ONE = Fraction(0), Fraction(1)


# ---------------------------------------------------------------------------
# small helpers


def _univ(p, var, name):
    """Coerce scalar / MPoly input into an MPoly in the single variable ``var``."""
    if isinstance(p, MPoly):
        extra = set(p.free_vars()) - {var}
        if extra:
            raise PrecondViolated(f"{name} must be univariate in {var}", extra=sorted(extra))
        return p.with_vars((var,))
    return MPoly.const(to_scalar(p), (var,))


def _poly_var(*polys, default="v"):
    names = set()
    for p in polys:
        if isinstance(p, MPoly):
            names |= set(p.free_vars())
    if len(names) > 1:
        raise PrecondViolated("inputs must share one variable", vars=sorted(names))
    return names.pop() if names else default


def _coeffs(p, n):
    d = to_dense(p)
    return [d[i] if i < len(d) else _ZERO for i in range(n)]


def _rationals_by_height(bound=SEARCH_HEIGHT):
    """Nonzero rationals ordered by height, small first: 1, -1, 2, -2, 1/2, ..."""
    seen = set()
    for h in range(1, bound + 1):
        for num, den in sorted(
            {(n, d) for n in range(1, h + 1) for d in range(1, h + 1) if max(n, d) == h},
            key=lambda t: (t[1], t[0]),
        ):
            q = Fraction(num, den)
            if q in seen:
                continue
            seen.add(q)
            yield q
            yield -q


def _two_squares(p: MPoly, extensions=True):
    """``(l1, l2)`` with ``l1^2 + l2^2 == p`` for a univariate ``p`` of degree at most 2."""
    var = p.vars[0]
    if p.is_constant():
        al, be, _ = constant_sos(p.constant_value(), field_of_poly(p))
        return MPoly.const(al, p.vars), MPoly.const(be, p.vars)
    if all(is_rational(c) for c in p.terms.values()):
        A, B, _ = sum_of_two_squares(p, extensions)
        return A, B
    if p.degree() != 2:
        raise NotNonnegative("odd degree polynomial changes sign")
    c0, c1, c2 = _coeffs(p, 3)
    if sign(c2) <= 0:
        raise NotNonnegative("leading coefficient is negative", witness=scalar_str(c2))
    delta = c0 - c1 * c1 / (4 * c2)
    if sign(delta) < 0:
        raise NotNonnegative("quadratic has real roots", witness=scalar_str(-c1 / (2 * c2)))
    F, s = adjoin_sqrt(c2, field_of_poly(p))
    F, t = adjoin_sqrt(delta, F)
    v = MPoly.var(var, p.vars)
    l1 = (v + c1 / (2 * c2)).scale(s)
    l2 = MPoly.const(t, p.vars)
    assert l1 * l1 + l2 * l2 == p
    return l1, l2


def _is_rational_poly(p: MPoly):
    return all(is_rational(c) for c in p.terms.values())


def field_of_poly(p: MPoly):
    f = None
    for c in p.terms.values():
        f = join_fields(f, field_of(c))
    return f


def _sqrt_linear(p: MPoly):
    """A linear ``l`` with ``l^2 == p`` (``p`` of degree at most 2), or None."""
    c0, c1, c2 = _coeffs(p, 3)
    var, vars = p.vars[0], p.vars
    v = MPoly.var(var, vars)
    if c2 == 0:
        if c1 != 0 or sign(c0) < 0:
            return None
        _, s = adjoin_sqrt(c0, field_of_poly(p))
        return MPoly.const(s, vars)
    if sign(c2) < 0 or c1 * c1 != 4 * c2 * c0:
        return None
    _, s = adjoin_sqrt(c2, field_of_poly(p))
    l = (v + c1 / (2 * c2)).scale(s)
    return l if l * l == p else None


def shape_from_q2(q1: MPoly, q2: MPoly):
    """Find ``(a, l3)`` with ``q2 == a*q1 - l3^2``; HypothesisViolated if none exists."""
    p0, p1, p2 = _coeffs(q1, 3)
    r0, r1, r2 = _coeffs(q2, 3)
    if q2.degree() > 2:
        raise HypothesisViolated("q2 must have degree at most 2", q2=q2.to_str())
    A = p1 * p1 - 4 * p2 * p0
    B = -2 * p1 * r1 + 4 * (p2 * r0 + r2 * p0)
    C = r1 * r1 - 4 * r2 * r0
    cands = []
    if A == 0 and B == 0:
        if C == 0:
            cands = [_ZERO] + list(_rationals_by_height(4))
    elif A == 0:
        cands = [-C / B]
    else:
        disc = B * B - 4 * A * C
        if sign(disc) >= 0:
            try:
                _, s = adjoin_sqrt(disc, join_fields(field_of_poly(q1), field_of_poly(q2)))
                cands = [(-B + s) / (2 * A), (-B - s) / (2 * A)]
            except NeedsExtension:
                cands = []
    for a in cands:
        if sign(a * p2 - r2) < 0 or sign(a * p0 - r0) < 0:
            continue
        l3 = _sqrt_linear(q1.scale(a) - q2)
        if l3 is not None and q1.scale(a) - l3 * l3 == q2:
            return a, l3
    raise HypothesisViolated(
        "q2 is not of the form a*q1 - l3^2 with l3 linear",
        q1=q1.to_str(),
        q2=q2.to_str(),
    )


def _positive_definite(p: MPoly) -> bool:
    """True when ``p > 0`` at every real point (degree at most 2)."""
    c0, c1, c2 = _coeffs(p, 3)
    if p.degree() == 0:
        return sign(c0) > 0
    return p.degree() == 2 and sign(c2) > 0 and sign(c1 * c1 - 4 * c2 * c0) < 0


def _sign_change(q1: MPoly) -> bool:
    d = q1.degree()
    if d == 1:
        return True
    if d == 2:
        c0, c1, c2 = _coeffs(q1, 3)
        return sign(c1 * c1 - 4 * c2 * c0) > 0
    return False


def _elem_space(q1, q2, var, wname="w"):
    vars = ("x", "y", var, wname)
    x, y, v, w = MPoly.gens(vars)
    Q1, Q2 = q1.with_vars(vars), q2.with_vars(vars)
    return Hypersurface(vars, w * w + Q1 * x * x + Q1 * y * y + Q2)


# ---------------------------------------------------------------------------
# elem2: w^2 + q1 x^2 + q1 y^2 + q2 = 0 with q2 = a q1 - l3^2


def elem2_parametrize(q1, a=None, l3=None, q2=None, point_hint=None, var=None, verify=True):
    """Rational parametrization of ``w^2 + q1*(x^2+y^2) + q2 = 0`` over ``var``.

    Either ``(a, l3)`` or a raw ``q2`` must be given; a raw ``q2`` is checked
    against the shape ``a*q1 - l3^2`` first.
    """
    var = var or _poly_var(q1, l3, q2)
    q1 = _univ(q1, var, "q1")
    if q1.is_zero():
        raise PrecondViolated("q1 must be nonzero")
    if q1.degree() > 2:
        raise PrecondViolated("q1 must have degree at most 2", degree=q1.degree())
    if q2 is not None:
        q2 = _univ(q2, var, "q2")
        a, l3 = shape_from_q2(q1, q2)
    else:
        if a is None:
            raise PrecondViolated("give either q2 or both a and l3")
        a = to_scalar(a)
        l3 = _univ(l3 if l3 is not None else 0, var, "l3")
        if l3.degree() > 1:
            raise PrecondViolated("l3 must have degree at most 1")
        q2 = q1.scale(a) - l3 * l3
    source = _elem_space(q1, q2, var)
    if _sign_change(q1):
        parts = _elem2_sign_change(source, q1, a, l3, var)
    else:
        parts = _elem2_constant_sign(source, q1, q2, a, l3, var, point_hint)
    m = compose_all(parts)
    return verified(m) if verify else m


def _elem2_constant_sign(source, q1, q2, a, l3, var, hint):
    vars = source.vars
    eps = sign(q1.lc())
    l1, l2 = _two_squares(q1.scale(eps))
    x, y, v, w = MPoly.gens(vars)
    L1, L2 = l1.with_vars(vars), l2.with_vars(vars)
    D = L1 * L1 + L2 * L2
    normed = Hypersurface(vars, w * w + (x * x + y * y).scale(eps) + q2.with_vars(vars))
    s1 = step_map(
        "norm-form",
        source,
        normed,
        {"x": x * L1 + y * L2, "y": x * L2 - y * L1},
        {"x": RatFunc(x * L1 + y * L2, D), "y": RatFunc(x * L2 - y * L1, D)},
        citation="norm-form substitution",
    )
    # w^2 + eps*(x^2 + y^2) + q2(v) has total degree 2: a quadric threefold
    coords = ("x", "y", "w", var, "t")
    X, Y, W, V, T = MPoly.gens(coords)
    c0, c1, c2 = _coeffs(q2, 3)
    Q = W * W + (X * X + Y * Y).scale(eps) + (V * V).scale(c2) + (V * T).scale(c1) + (T * T).scale(c0)
    point = _quadric_point(eps, q2, hint)
    proj = parametrize_quadric_with_point(
        Q, coords, point, chart=4, source_vars=vars, target_vars=("s1", "s2", "s3"),
        citation="projection from a smooth point", verify=False,
    )
    return [s1, proj]


def _quadric_point(eps, q2, hint):
    """A smooth point ``[x:y:w:v:t]`` of ``w^2 + eps*(x^2+y^2) + q2(v, t)``."""
    one, zero = _ONE, _ZERO
    if hint is not None:
        pt = tuple(to_scalar(c) for c in hint)
        return pt + (one,) if len(pt) == 4 else pt
    if eps < 0:
        return (one, zero, one, zero, zero)
    c0, c1, c2 = _coeffs(q2, 3)
    if _positive_definite(q2) or (q2.degree() == 0 and sign(c0) >= 0 and c0 != 0):
        raise NoSmoothPointFound(
            "w^2 + x^2 + y^2 + q2 is positive definite, so there are no real points",
            reason="no-real-points",
        )
    # at infinity: w^2 + x^2 + y^2 = -c2 * v^2
    if sign(c2) < 0:
        abc = _three_squares(-c2)
        if abc is not None:
            return (abc[0], abc[1], abc[2], one, zero)
    for v0 in [_ZERO] + list(_rationals_by_height(SEARCH_HEIGHT)):
        P = -(c2 * v0 * v0 + c1 * v0 + c0)
        if sign(P) < 0 or (P == 0 and 2 * c2 * v0 + c1 == 0):
            continue
        abc = _three_squares(P)
        if abc is not None:
            return (abc[0], abc[1], abc[2], v0, one)
    raise NoSmoothPointFound("no smooth point of bounded height on the quadric", bound=SEARCH_HEIGHT)


def _three_squares(c):
    """Rationals ``(a, b, d)`` with ``a^2 + b^2 + d^2 == c``, or None."""
    if not is_rational(c) or c < 0:
        return None
    if c == 0:
        return (_ZERO, _ZERO, _ZERO)
    c = Fraction(c)
    den = c.denominator
    sol = _int_three_squares(c.numerator * den)
    if sol is None:  # c*den^2 has the form 4^a*(8b+7)
        return None
    return tuple(Fraction(t, den) for t in sol)


def _int_three_squares(m):
    from sympy.solvers.diophantine.diophantine import sum_of_three_squares

    try:
        return sum_of_three_squares(int(m))
    except ValueError:
        return None


def _elem2_sign_change(source, q1, a, l3, var):
    vars = source.vars
    c0, c1, c2 = _coeffs(q1, 3)
    K = field_of_poly(q1)
    if q1.degree() == 1:
        lam, rho1 = c1, -c0 / c1
        ur = ((lam, -lam * rho1), (_ZERO, _ONE))  # u = lam*(v - rho1), r = 1
    else:
        K, s = adjoin_sqrt(c1 * c1 - 4 * c2 * c0, K)
        rho1, rho2 = (-c1 + s) / (2 * c2), (-c1 - s) / (2 * c2)
        ur = ((c2, -c2 * rho1), (_ONE, -rho2))
    (u1, u0), (r1, r0) = ur
    l0, l1c = _coeffs(l3, 2)
    # l3 = alpha*u + beta*r
    det = u1 * r0 - u0 * r1
    alpha = (l1c * r0 - l0 * r1) / det
    beta = (u1 * l0 - u0 * l1c) / det
    if alpha == 0 and beta != 0:
        (u1, u0), (r1, r0) = (r1, r0), (u1, u0)
        alpha, beta = beta, alpha
    uname = "u" if var != "u" else "U"
    tvars = ("x", "y", uname, "w")
    x, y, U, w = MPoly.gens(tvars)
    l4 = U.scale(alpha) + beta
    mid = Hypersurface(tvars, w * w + U * x * x + U * y * y + U.scale(a) - l4 * l4)
    sv = vars
    v_s = MPoly.var(var, sv)
    u_of_v = v_s.scale(u1) + u0
    r_of_v = v_s.scale(r1) + r0
    w_s = MPoly.var("w", sv)
    # inverse Mobius: U*(r1 v + r0) = u1 v + u0
    v_of_U = RatFunc(MPoly.const(u0, tvars) - U.scale(r0), U.scale(r1) - u1)
    r_of_U = v_of_U * r1 + r0
    s1 = step_map(
        "root-to-zero-infinity",
        source,
        mid,
        {uname: RatFunc(u_of_v, r_of_v), "w": RatFunc(w_s, r_of_v)},
        {var: v_of_U, "w": r_of_U * w},
        citation="roots of q1 sent to zero and infinity",
    )
    avars = ("x", "y", "w")
    X, Y, W = MPoly.gens(avars)
    St = X * X + Y * Y
    mx, my, mU, mw = MPoly.gens(tvars)
    Sm = mx * mx + my * my
    if alpha == 0:
        s2 = step_map(
            "linear-solve",
            mid,
            Hypersurface(avars, None),
            {},
            {uname: RatFunc(-(W * W), St + a)},
            citation="solve linearly in u",
        )
        return [s1, s2]
    e = alpha
    c = (a - 2 * alpha * beta) / (2 * alpha * alpha)
    f = alpha * alpha * c * c - beta * beta
    P = (mU - c).scale(e) - Sm.scale(1 / (2 * e))
    h = St.scale(c) + f + (St * St).scale(1 / (4 * e * e))
    W2 = RatFunc.lift(W)
    u2 = RatFunc(-h) / W2
    Pt = (u2 - W2) / 2
    s2 = step_map(
        "complete-square",
        mid,
        Hypersurface(avars, None),
        {"w": mw - P},
        {"w": (W2 + u2) / 2, uname: (Pt + RatFunc.lift(St.scale(1 / (2 * e)))) / e + c},
        citation="complete the square in u and split the product",
    )
    return [s1, s2]


# ---------------------------------------------------------------------------
# case a: x^2 + y^2 = q(w) z^2 + c(w) z + g(w)


def construct_case_a(q, c, g, var="w", verify=True):
    """Rational map for ``x^2 + y^2 = q(w) z^2 + c(w) z + g(w)``."""
    base = (var,)
    q, c, g = (_univ(p, var, n) for p, n in ((q, "q"), (c, "c"), (g, "g")))
    if q.is_zero() and c.is_zero() and g.is_zero():
        raise PrecondViolated("f must be nonzero")
    for p, bound, name in ((q, 2, "q"), (c, 3, "c"), (g, 4, "g")):
        if p.degree() > bound:
            raise PrecondViolated(f"{name} has degree above {bound}", degree=p.degree())
    A = B = z0 = None
    last = None
    candidates = [_ZERO] + list(_rationals_by_height(SEARCH_HEIGHT))
    # rational sections first, then sections over a quadratic extension
    for extensions in (False, True):
        for z0 in candidates:
            p = q.scale(z0 * z0) + c.scale(z0) + g
            if p.is_zero():
                continue
            rational = all(is_rational(k) for k in p.terms.values())
            wit = negative_witness(to_dense(p)) if rational else None
            if wit is not None:
                raise NotNonnegative("f takes a negative value", witness={var: scalar_str(wit), "z": scalar_str(z0)})
            if not extensions and not rational:
                continue
            try:
                A, B = _two_squares(p, extensions)
            except NotNonnegative as e:
                raise NotNonnegative("f takes a negative value", **e.payload) from e
            except NeedsExtension as e:
                last = e
                continue
            if not extensions and not (_is_rational_poly(A) and _is_rational_poly(B)):
                A = B = None
                continue
            break
        if A is not None:
            break
    if A is None:
        if last is not None:
            raise last
        raise NoSmoothPointFound("no z0 of bounded height gives a usable section", bound=SEARCH_HEIGHT)
    coords = ("x", "y", "z", "t")
    qv = coords + base
    X, Y, Z, T = (MPoly.var(n, qv) for n in coords)
    Q = X * X + Y * Y - q.with_vars(qv) * Z * Z - c.with_vars(qv) * Z * T - g.with_vars(qv) * T * T
    one = MPoly.one(base)
    point = (A, B, MPoly.const(z0, base), one)
    m = parametrize_quadric_with_point(
        Q, coords, point, chart=3, source_vars=("x", "y", var, "z"),
        target_vars=(var, "s1", "s2"), citation="projection from a section point", verify=False,
    )
    m.steps[0].name = "stereographic"
    return verified(m) if verify else m


def case_a_space(q, c, g, var="w"):
    vars = ("x", "y", var, "z")
    x, y, w, z = MPoly.gens(vars)
    q, c, g = (_univ(p, var, "coefficient").with_vars(vars) for p in (q, c, g))
    return Hypersurface(vars, x * x + y * y - q * z * z - c * z - g)


# ---------------------------------------------------------------------------
# case b (F1) and case c (F2)


def case_b_space(nf):
    vars = ("x", "y", "v", "w")
    x, y, v, w = MPoly.gens(vars)
    f = nf.polynomial(("v", "w", "z"))
    fa = f.eval({"z": 1})
    return Hypersurface(vars, x * x + y * y - fa.with_vars(vars))


def case_c_space(nf):
    vars = ("x", "y", "v", "z")
    x, y, v, z = MPoly.gens(vars)
    f = nf.polynomial(("v", "w", "z"))
    fa = f.eval({"w": 1})
    return Hypersurface(vars, x * x + y * y - fa.with_vars(vars))


def construct_case_b(nf, verify=True):
    """F1 normal form: w1-shift, multiply by q, rescale, then elem2."""
    eps, a1, a2, b, c, d = nf.coefficients()
    if a1 == 0 or a2 == 0:
        raise PrecondViolated("a1 and a2 must be nonzero", a1=scalar_str(a1), a2=scalar_str(a2))
    X0 = case_b_space(nf)
    vars = X0.vars
    x, y, v, w = MPoly.gens(vars)
    q = v * v + v.scale(eps * c) - eps * a2
    b1, d1 = b / 2, d / 2
    l3 = v.scale(b1) + d1
    shift = RatFunc((v * v).scale(b) + v.scale(d), q) * Fraction(eps, 2)
    e1 = q * (x * x + y * y) + q * v * v * a1 + (v * v * l3 * l3).scale(eps) - (q * q * w * w).scale(eps)
    E1 = Hypersurface(vars, e1)
    s1 = step_map("w1-shift", X0, E1, {"w": RatFunc.lift(w) + shift}, {"w": RatFunc.lift(w) - shift},
                  citation="shift w to remove the vw-terms")
    q1 = q.scale(-eps)
    q2 = q1.scale(a1) - l3 * l3
    E2 = _elem_space(q1.with_vars(("v",)), q2.with_vars(("v",)), "v")
    s2 = step_map(
        "multiply-by-q",
        E1,
        E2,
        {"x": RatFunc(x, v), "y": RatFunc(y, v), "w": RatFunc(q * w, v)},
        {"x": x * v, "y": y * v, "w": RatFunc(w * v, q)},
        citation="w2 = q*w1 and t1 = v*t",
    )
    tail = elem2_parametrize(q1.with_vars(("v",)), a=a1, l3=l3.with_vars(("v",)), verify=False)
    m = compose_all([s1, s2, tail])
    return verified(m) if verify else m


def construct_case_c(nf, verify=True):
    """F2 normal form: z1 = z*q, complete the square, then elem2."""
    eps, a1, a2, b, c, d = nf.coefficients()
    X0 = case_c_space(nf)
    vars = X0.vars
    x, y, v, z = MPoly.gens(vars)
    q = (v * v).scale(b) + v.scale(d) + c
    if q.is_zero():
        raise PrecondViolated("q(v) = b*v^2 + d*v + c vanishes identically")
    l = v.scale(a1) + a2
    s = v * v + 1
    E1 = Hypersurface(vars, q * x * x + q * y * y - z * z - z * l * s - (q * s * s).scale(eps))
    s1 = step_map("multiply-by-q", X0, E1, {"z": z * q}, {"z": RatFunc(z, q)},
                  citation="z1 = z*q")
    q1 = -q
    l3 = l.scale(Fraction(1, 2))
    q2 = q1.scale(-eps) - l3 * l3
    V1 = ("v",)
    E2 = _elem_space(q1.with_vars(V1), q2.with_vars(V1), "v")
    ev = E2.vars
    ex, ey, evv, ew = MPoly.gens(ev)
    se = evv * evv + 1
    le = evv.scale(a1) + a2
    s2 = step_map(
        "complete-square",
        E1,
        E2,
        {"x": RatFunc(x, s), "y": RatFunc(y, s), "w": RatFunc(z + (l * s).scale(Fraction(1, 2)), s)},
        {"x": ex * se, "y": ey * se, "z": ew * se - (le * se).scale(Fraction(1, 2))},
        citation="t1 = (v^2+1)*t and complete the square in z",
    )
    tail = elem2_parametrize(q1.with_vars(V1), a=-eps, l3=l3.with_vars(V1), verify=False)
    m = compose_all([s1, s2, tail])
    return verified(m) if verify else m


def construct_normal_form(nf, verify=True):
    from ..normal_forms import F1

    return construct_case_b(nf, verify) if nf.variant == F1 else construct_case_c(nf, verify)
