"""Plane projective curves: singular points, node test, genus and hypothesis flags."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .algebra.mpoly import MPoly, gcd, gcd_many, resultant
from .algebra.ratfunc import substitute
from .algebra.scalars import (
    QuadNumber,
    adjoin_sqrt,
    complex_conj,
    field_of,
    is_real,
    join_fields,
    scalar_str,
    sign,
    sqrt_in,
)
from .algebra.univariate import (
    count_roots_dense,
    dup_gcd,
    dup_rem,
    dup_strip,
    factor_dense,
    negative_witness,
)
from .errors import NotReduced, NotSingular, UnsupportedNodeField

YES, NO, UNKNOWN = "Yes", "No", "Unknown"
NODE, NOT_NODE = "Node", "NotNode"
MAX_DEGREE = 6
DEFAULT_VARS = ("v", "w", "z")


class PlaneCurve:
    """``F = 0`` for a nonzero homogeneous ``F`` in three variables."""

    def __init__(self, F: MPoly):
        if len(F.vars) != 3:
            raise ValueError(f"a plane curve needs three variables, got {F.vars}")
        if F.is_zero():
            raise ValueError("the zero polynomial does not define a curve")
        if not F.is_homogeneous():
            raise ValueError("curve equation must be homogeneous")
        self.F = F
        self.vars = F.vars
        self.degree = F.degree()

    @classmethod
    def from_affine(cls, f: MPoly, proj_var="z"):
        """Homogenize an affine polynomial in two variables."""
        names = [v for v in f.vars if v != proj_var]
        if len(names) != 2:
            raise ValueError("affine curve needs exactly two variables")
        vars = (names[0], names[1], proj_var)
        return cls(f.with_vars(vars).homogenize(proj_var))

    def gradient(self):
        return [self.F.diff(v) for v in self.vars]

    def __repr__(self):
        return f"PlaneCurve({self.F.to_str()!r})"


@dataclass
class SingularPointRecord:
    coordinates: tuple
    conjugate_pair: bool
    kind: str
    tangent_cone: MPoly
    chart: int

    @property
    def is_real(self):
        return all(is_real(c) for c in self.coordinates)

    def coord_strings(self):
        return [scalar_str(c) for c in self.coordinates]

    def to_dict(self):
        return {
            "coordinates": self.coord_strings(),
            "conjugate_pair": self.conjugate_pair,
            "kind": self.kind,
            "tangent_cone": self.tangent_cone.to_str(),
        }


@dataclass
class CurveProfile:
    degree: int
    nodes: list
    genus: int | None
    real_node_count: int
    all_nodes_rational_or_conjugate: bool
    collinear_nodes: bool | None
    real_branch: str = UNKNOWN
    nonnegative_f: str = UNKNOWN
    irreducible: str = UNKNOWN
    witnesses: dict = field(default_factory=dict)

    @property
    def node_count(self):
        return len(self.nodes)

    def is_trinodal(self):
        return (
            self.degree == 4
            and len(self.nodes) == 3
            and all(p.kind == NODE for p in self.nodes)
            and self.collinear_nodes is False
            and self.genus == 0
        )

    def to_dict(self):
        return {
            "degree": self.degree,
            "nodes": [p.to_dict() for p in self.nodes],
            "genus": self.genus,
            "real_node_count": self.real_node_count,
            "flags": {
                "all_nodes_rational_or_conjugate": self.all_nodes_rational_or_conjugate,
                "collinear_nodes": self.collinear_nodes,
                "real_branch": self.real_branch,
                "nonnegative_f": self.nonnegative_f,
                "irreducible": self.irreducible,
            },
            "witnesses": self.witnesses,
        }


# ---------------------------------------------------------------------------
# arithmetic in Q[t]/(phi) for existence tests over high-degree fields


class _Mod:
    __slots__ = ("c", "phi")

    def __init__(self, c, phi):
        self.phi = phi
        self.c = dup_rem(dup_strip(c), phi) if len(c) >= len(phi) else dup_strip(c)

    def _o(self, o):
        if isinstance(o, _Mod):
            return o
        return _Mod([Fraction(o)], self.phi)

    def __add__(self, o):
        o = self._o(o)
        n = max(len(self.c), len(o.c))
        a = self.c + [Fraction(0)] * (n - len(self.c))
        b = o.c + [Fraction(0)] * (n - len(o.c))
        return _Mod([x + y for x, y in zip(a, b)], self.phi)

    __radd__ = __add__

    def __neg__(self):
        return _Mod([-x for x in self.c], self.phi)

    def __sub__(self, o):
        return self + (-self._o(o))

    def __rsub__(self, o):
        return self._o(o) - self

    def __mul__(self, o):
        o = self._o(o)
        if not self.c or not o.c:
            return _Mod([], self.phi)
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            for j, y in enumerate(o.c):
                out[i + j] += x * y
        return _Mod(out, self.phi)

    __rmul__ = __mul__

    def inverse(self):
        # extended Euclid on (c, phi)
        r0, r1 = list(self.phi), list(self.c)
        s0, s1 = [], [Fraction(1)]
        from .algebra.univariate import dup_divmod, dup_mul, dup_sub

        while r1:
            q, r = dup_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, dup_sub(s0, dup_mul(q, s1))
        if len(r0) != 1:
            raise ZeroDivisionError("not invertible modulo phi")
        return _Mod([x / r0[0] for x in s0], self.phi)

    def __truediv__(self, o):
        return self * self._o(o).inverse()

    def __rtruediv__(self, o):
        return self._o(o) * self.inverse()

    def __eq__(self, o):
        o = self._o(o)
        return self.c == o.c

    def __hash__(self):
        return hash(tuple(self.c))


# ---------------------------------------------------------------------------
# solving


def _dense_at(p: MPoly, var, point):
    q = p.eval(point)
    return q.to_univariate(var) if not q.is_zero() else []


def _roots_over(h, K):
    """All roots of a dense polynomial ``h`` over ``K`` or one quadratic extension of it."""
    h = dup_strip(h)
    if len(h) <= 1:
        return []
    if K is None and all(field_of(c) is None for c in h):
        _, facs = factor_dense(h)
        out = []
        for f, _m in facs:
            if len(f) == 2:
                out.append(-f[0] / f[1])
            elif len(f) == 3:
                out.extend(_quadratic_roots(f, None))
            else:
                raise UnsupportedNodeField(
                    "singular point needs a field of degree above 2", degree=len(f) - 1
                )
        return out
    if len(h) == 2:
        return [-h[0] / h[1]]
    if len(h) == 3:
        return _quadratic_roots(h, K)
    raise UnsupportedNodeField("singular point needs more than one quadratic extension")


def _quadratic_roots(f, K):
    a, b, c = f[2], f[1], f[0]
    disc = b * b - 4 * a * c
    s = sqrt_in(disc, K)
    if s is None:
        if K is not None:
            raise UnsupportedNodeField("singular point needs more than one quadratic extension")
        _, s = adjoin_sqrt(disc)
    return [(-b + s) / (2 * a), (-b - s) / (2 * a)]


def _combos(polys, attempt):
    coeffs = [(1, 2, 3), (1, -3, 5), (2, 1, -1), (3, -2, 7), (1, 5, -4)]
    a = coeffs[attempt % len(coeffs)]
    b = coeffs[(attempt + 1) % len(coeffs)]
    q1 = sum((p * k for p, k in zip(polys, a)), MPoly.zero(polys[0].vars))
    q2 = sum((p * k for p, k in zip(polys, b)), MPoly.zero(polys[0].vars))
    return q1, q2


def _affine_common_zeros(polys, x, y):
    """Common zeros (x0, y0) of polynomials in ``x, y`` over small fields."""
    polys = [p for p in polys if not p.is_zero()]
    if any(p.is_constant() for p in polys):
        return []
    R = None
    for attempt in range(5):
        q1, q2 = _combos(polys, attempt)
        if q1.degree(x) <= 0 and q2.degree(x) <= 0:
            r = gcd(q1, q2)
        else:
            r = resultant(q1, q2, x) if q1.degree(x) > 0 or q2.degree(x) > 0 else gcd(q1, q2)
        if not r.is_zero():
            R = r if R is None else gcd(R, r)
            if attempt >= 1:
                break
    if R is None:
        raise NotReduced("singular locus is positive dimensional")
    if R.is_constant():
        return []
    Rd = R.to_univariate(y)
    _, facs = factor_dense(Rd)
    out = []
    for phi, _m in facs:
        deg = len(phi) - 1
        if deg <= 2:
            ys = [-phi[0] / phi[1]] if deg == 1 else _quadratic_roots(phi, None)
            for y0 in ys:
                K = field_of(y0)
                g = []
                for p in polys:
                    g = dup_gcd(g, _dense_at(p, x, {y: y0})) if g != [] else dup_strip(_dense_at(p, x, {y: y0}))
                    if len(g) == 1:
                        break
                if not g:
                    raise NotReduced("singular locus contains a line")
                if len(g) == 1:
                    continue
                for x0 in _roots_over(g, K):
                    out.append((x0, y0))
        else:
            # existence test over Q[y]/(phi)
            g = []
            for p in polys:
                cs = p.coeffs_in(x)
                top = max(cs)
                dense = [
                    _Mod(cs[k].to_univariate(y) if k in cs and not cs[k].is_zero() else [], phi)
                    for k in range(top + 1)
                ]
                dense = dup_strip(dense)
                g = dense if not g else dup_gcd(g, dense)
                if len(g) == 1:
                    break
            if len(g) > 1:
                raise UnsupportedNodeField(
                    "singular point needs a field of degree above 2", degree=deg
                )
    return out


def _normalize_point(p):
    for c in reversed(p):
        if c != 0:
            return tuple(x / c for x in p)
    raise ValueError("zero vector is not a projective point")


def _check_singular(C, p):
    point = dict(zip(C.vars, p))
    vals = [g.eval(point).constant_value() for g in C.gradient()]
    return all(v == 0 for v in vals)


def singular_points(C: PlaneCurve):
    """All singular points of ``C`` with coordinates in one quadratic extension."""
    if C.degree > MAX_DEGREE:
        raise ValueError(f"degree {C.degree} exceeds {MAX_DEGREE}")
    F = C.F
    grad = C.gradient()
    if C.degree <= 1:
        return []
    g = gcd_many([F] + [p for p in grad if not p.is_zero()])
    if not g.is_constant():
        raise NotReduced("curve is not reduced: F shares a factor with its gradient", factor=g.to_str())
    v, w, z = C.vars
    pts = []
    # chart z = 1
    aff = [p.eval({z: 1}) for p in grad]
    for x0, y0 in _affine_common_zeros(aff, v, w):
        pts.append((x0, y0, Fraction(1)))
    # line z = 0, chart w = 1
    g = []
    for p in grad:
        d = dup_strip(_dense_at(p, v, {w: 1, z: 0}))
        g = d if not g else dup_gcd(g, d)
    if not g:
        raise NotReduced("singular locus contains the line at infinity")
    if len(g) > 1:
        for x0 in _roots_over(g, None):
            pts.append((x0, Fraction(1), Fraction(0)))
    if _check_singular(C, (Fraction(1), Fraction(0), Fraction(0))):
        pts.append((Fraction(1), Fraction(0), Fraction(0)))
    pts = [_normalize_point(p) for p in pts]
    seen = []
    for p in pts:
        if p not in seen:
            seen.append(p)
    records = []
    for p in seen:
        assert F.eval(dict(zip(C.vars, p))).is_zero() and _check_singular(C, p)
        kind, cone, chart = _classify(C, p)
        records.append(SingularPointRecord(p, not all(is_real(c) for c in p), kind, cone, chart))
    records.sort(key=lambda r: (r.conjugate_pair, r.coord_strings()))
    return records


def _hessian_at(C, p):
    point = dict(zip(C.vars, p))
    return [[C.F.diff(a).diff(b).eval(point).constant_value() for b in C.vars] for a in C.vars]


def _classify(C, p):
    k = max(i for i, c in enumerate(p) if c != 0)
    H = _hessian_at(C, p)
    idx = [i for i in range(3) if i != k]
    pk = p[k]
    # second-order part of the dehomogenized equation at p (local coordinates)
    local = [C.vars[i] for i in idx]
    lv = tuple(local)
    X, Y = MPoly.gens(lv)
    a, b, c = H[idx[0]][idx[0]], H[idx[0]][idx[1]], H[idx[1]][idx[1]]
    scale = pk ** (C.degree - 2) / 2
    cone = (X * X * a + X * Y * (2 * b) + Y * Y * c).scale(scale)
    det = a * c - b * b
    return (NODE if det != 0 else NOT_NODE), cone, k


def classify_singularity(C: PlaneCurve, point):
    """Node iff the quadratic part at the singular point has rank 2."""
    p = tuple(Fraction(c) if isinstance(c, int) else c for c in point)
    if not C.F.eval(dict(zip(C.vars, p))).is_zero() or not _check_singular(C, p):
        raise NotSingular(f"point {[scalar_str(c) for c in p]} is not singular")
    return _classify(C, _normalize_point(p))[0]


def det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


# ---------------------------------------------------------------------------
# flags


def _line_restriction(C, P, D, t="t", lam="lam"):
    """``F(P + t*D(lam))`` as an MPoly in (t, lam)."""
    vars = (t, lam)
    T, L = MPoly.gens(vars)
    binds = {}
    for name, pc, dc in zip(C.vars, P, D):
        binds[name] = MPoly.const(pc, vars) + T * dc(L)
    return substitute(C.F, binds, vars).as_poly()


def _real_branch_at_node(C, node):
    """Exact test through a real node of a quartic: Yes / No."""
    P = node.coordinates
    k = node.chart
    # lines through P meet the line {x_j = 0} (j != k) in D(lam)
    others = [i for i in range(3) if i != k]
    i0, i1 = others

    def comp(i):
        if i == i0:
            return lambda L: MPoly.one(L.vars)
        if i == i1:
            return lambda L: L
        return lambda L: MPoly.zero(L.vars)

    D = [comp(i) for i in range(3)]
    G = _line_restriction(C, P, D)
    cs = G.coeffs_in("t")
    zero = MPoly.zero(G.vars)
    c2, c3, c4 = (cs.get(j, zero) for j in (2, 3, 4))
    disc = c3 * c3 - c2 * c4 * 4
    if disc.is_zero():
        return UNKNOWN
    d = disc.to_univariate("lam")
    if all(field_of(c) is None or is_real(c) for c in d):
        if negative_witness([-c for c in d]) is not None:
            return YES
        return NO
    return UNKNOWN


def real_branch_flag(C: PlaneCurve, nodes):
    for n in nodes:
        if n.is_real and n.kind == NODE:
            a = n.tangent_cone
            coeffs = list(a.terms.values())
            if all(field_of(c) is None or field_of(c).is_real for c in coeffs):
                X, Y = a.vars
                A = a.monomial_coeff(**{X: 2})
                B = a.monomial_coeff(**{X: 1, Y: 1})
                Cc = a.monomial_coeff(**{Y: 2})
                if sign(B * B - 4 * A * Cc) > 0:
                    return YES
    if C.degree == 4 and all(n.kind == NODE for n in nodes) and len(nodes) == 3:
        for n in nodes:
            if n.is_real:
                return _real_branch_at_node(C, n)
    # sample vertical lines in the z-chart for smooth real points
    v, w, z = C.vars
    for c in range(-4, 5):
        d = _dense_at(C.F, w, {v: c, z: 1})
        if len(dup_strip(d)) > 1 and all(field_of(x) is None for x in d) and count_roots_dense(d) > 0:
            sq = dup_gcd(d, [x * i for i, x in enumerate(d)][1:])
            if len(sq) == 1:
                return YES
    return UNKNOWN


def nonnegative_flag(C: PlaneCurve):
    """``No`` with an exact witness, or best-effort ``Yes``."""
    v, w, z = C.vars
    if any(field_of(c) is not None for c in C.F.terms.values()):
        return UNKNOWN, None
    if C.degree % 2:
        return NO, _odd_witness(C)
    vals = [Fraction(k, 2) for k in range(-6, 7)]
    slopes = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(1, 3), Fraction(-1, 3)]
    vars = ("t",)
    T = MPoly.var("t", vars)
    for m, c in product(slopes, vals[::3]):
        # line w = m v + c in the chart z = 1
        q = substitute(C.F, {v: T, w: T * m + c, z: MPoly.one(vars)}, vars).as_poly()
        if q.is_zero():
            continue
        x = negative_witness(q.to_univariate("t"))
        if x is not None:
            return NO, {v: scalar_str(x), w: scalar_str(m * x + c), z: "1"}
    for c in vals[::2]:
        q = substitute(C.F, {v: MPoly.const(c, vars), w: T, z: MPoly.one(vars)}, vars).as_poly()
        if q.is_zero():
            continue
        x = negative_witness(q.to_univariate("t"))
        if x is not None:
            return NO, {v: scalar_str(c), w: scalar_str(x), z: "1"}
    # the line at infinity
    q = substitute(C.F, {v: T, w: MPoly.one(vars), z: MPoly.zero(vars)}, vars).as_poly()
    if not q.is_zero():
        x = negative_witness(q.to_univariate("t"))
        if x is not None:
            return NO, {v: scalar_str(x), w: "1", z: "0"}
    return YES, None


def _odd_witness(C):
    v, w, z = C.vars
    for p in product(range(-2, 3), repeat=3):
        val = C.F.eval(dict(zip(C.vars, map(Fraction, p)))).constant_value()
        if val != 0:
            if val > 0:
                p = tuple(-x for x in p)
            return {name: str(x) for name, x in zip(C.vars, p)}
    return None


def irreducible_flag(C: PlaneCurve, nodes, collinear):
    if (
        C.degree == 4
        and len(nodes) == 3
        and collinear is False
        and all(n.kind == NODE for n in nodes)
    ):
        return YES
    if C.degree <= 1:
        return YES
    if C.degree == 2:
        # a conic is irreducible iff its symmetric matrix is nonsingular
        H = [[C.F.diff(a).diff(b).constant_value() for b in C.vars] for a in C.vars]
        return YES if det3(H) != 0 else NO
    try:
        import sympy

        syms = sympy.symbols(" ".join(C.vars))
        from .algebra.univariate import _to_sympy

        expr = sum(
            _to_sympy(c) * sympy.Mul(*[s ** k for s, k in zip(syms, e)]) for e, c in C.F.terms.items()
        )
        for ext in (None, sympy.I):
            _, facs = sympy.factor_list(expr, *syms, **({"extension": ext} if ext is not None else {}))
            if len(facs) > 1 or any(m > 1 for _, m in facs):
                return NO
    except Exception:  # pragma: no cover - sympy failures mean "not decided"
        return UNKNOWN
    return UNKNOWN


def curve_profile(C: PlaneCurve) -> CurveProfile:
    nodes = singular_points(C)
    d = C.degree
    all_nodes = all(n.kind == NODE for n in nodes)
    genus = (d - 1) * (d - 2) // 2 - len(nodes) if all_nodes else None
    collinear = None
    if len(nodes) == 3:
        collinear = det3([list(n.coordinates) for n in nodes]) == 0
    real_count = sum(1 for n in nodes if n.is_real)
    fields_ok = True
    for n in nodes:
        f = None
        for c in n.coordinates:
            g = field_of(c)
            if g is not None:
                f = join_fields(f, g)
        if f is not None and f.depth > 1:
            fields_ok = False
    prof = CurveProfile(
        degree=d,
        nodes=nodes,
        genus=genus,
        real_node_count=real_count,
        all_nodes_rational_or_conjugate=all_nodes and fields_ok,
        collinear_nodes=collinear,
    )
    prof.real_branch = real_branch_flag(C, nodes)
    nn, wit = nonnegative_flag(C)
    prof.nonnegative_f = nn
    if wit:
        prof.witnesses["negative_value_at"] = wit
    prof.irreducible = irreducible_flag(C, nodes, collinear)
    return prof


def conjugate(p):
    return tuple(complex_conj(c) for c in p)


__all__ = [
    "CurveProfile",
    "PlaneCurve",
    "SingularPointRecord",
    "classify_singularity",
    "curve_profile",
    "singular_points",
]
