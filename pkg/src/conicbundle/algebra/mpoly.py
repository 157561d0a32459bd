"""Sparse multivariate polynomials over exact scalars.

Terms are a dict from exponent tuples to nonzero scalars.  The monomial
order is graded lexicographic everywhere (printing, leading terms, division).
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd as _gcd
from operator import add as _add

from ..errors import DivisionByZero, NotExact, VariableMismatch
from .scalars import (
    QuadNumber,
    field_of,
    is_simple_scalar_str,
    join_fields,
    scalar_str,
    to_scalar,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


def grlex_key(exps):
    return (sum(exps), exps)


def _integer_form(terms):
    """``({exp: int}, den)`` when every coefficient is rational, else None."""
    den = 1
    for c in terms.values():
        if type(c) is not Fraction:
            return None
        d = c.denominator
        if den % d:
            den = den * d // _gcd(den, d)
    return {e: c.numerator * (den // c.denominator) for e, c in terms.items()}, den


def _rational_product(t1, t2):
    """Product of two rational term dicts using integer arithmetic, or None."""
    a = _integer_form(t1)
    if a is None:
        return None
    b = _integer_form(t2)
    if b is None:
        return None
    (ia, da), (ib, db) = a, b
    n = len(next(iter(ia)))
    bits = 16
    pa = {_pack(e, bits): c for e, c in ia.items()}
    pb = {_pack(e, bits): c for e, c in ib.items()}
    out = {}
    get = out.get
    for e1, c1 in pa.items():
        for e2, c2 in pb.items():
            e = e1 + e2
            out[e] = get(e, 0) + c1 * c2
    D = da * db
    mask = (1 << bits) - 1
    res = {}
    for e, c in out.items():
        if c:
            res[tuple((e >> (bits * i)) & mask for i in range(n))] = Fraction(c, D) if D != 1 else Fraction(c)
    return res


def _pack(e, bits):
    k = 0
    for i, x in enumerate(e):
        if x >> bits:
            raise OverflowError("exponent too large for packed product")
        k |= x << (bits * i)
    return k

class MPoly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars, terms=None, _clean=False):
        self.vars = tuple(vars)
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            n = len(self.vars)
            clean = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise VariableMismatch(f"exponent {e} does not match vars {self.vars}")
                if c != 0:
                    clean[e] = to_scalar(c)
            self.terms = clean
        self._hash = None

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, vars):
        return cls(vars, {}, _clean=True)

    @classmethod
    def const(cls, c, vars):
        c = to_scalar(c)
        if c == 0:
            return cls.zero(vars)
        return cls(vars, {(0,) * len(vars): c}, _clean=True)

    @classmethod
    def one(cls, vars):
        return cls.const(1, vars)

    @classmethod
    def var(cls, name, vars):
        vars = tuple(vars)
        if name not in vars:
            raise VariableMismatch(f"{name!r} not in {vars}")
        e = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {e: _ONE}, _clean=True)

    @classmethod
    def gens(cls, vars):
        return [cls.var(v, vars) for v in vars]

    # -- basic queries ---------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.terms:
            return _ZERO
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), _ZERO)

    def index(self, var):
        try:
            return self.vars.index(var)
        except ValueError:
            raise VariableMismatch(f"{var!r} not in {self.vars}") from None

    def degree(self, var=None):
        """Degree in ``var``, or total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.index(var)
        return max(e[i] for e in self.terms)

    total_degree = degree

    def degrees(self):
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(max(e[i] for e in self.terms) for i in range(len(self.vars)))

    def free_vars(self):
        """Variables that actually occur."""
        d = self.degrees()
        return tuple(v for v, k in zip(self.vars, d) if k > 0)

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = {sum(e) for e in self.terms}
        return len(degs) == 1

    def leading_exp(self):
        return max(self.terms, key=grlex_key)

    def lc(self):
        """Leading coefficient in grlex order."""
        if not self.terms:
            return _ZERO
        return self.terms[self.leading_exp()]

    def field(self):
        f = None
        for c in self.terms.values():
            g = field_of(c)
            if g is not None:
                f = join_fields(f, g)
        return f

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def coeff(self, exps):
        return self.terms.get(tuple(exps), _ZERO)

    def monomial_coeff(self, **powers):
        e = tuple(powers.get(v, 0) for v in self.vars)
        return self.coeff(e)

    # -- context changes ---------------------------------------------------
    def with_vars(self, new_vars):
        new_vars = tuple(new_vars)
        if new_vars == self.vars:
            return self
        pos = []
        for i, v in enumerate(self.vars):
            if v in new_vars:
                pos.append(new_vars.index(v))
            else:
                pos.append(None)
        n = len(new_vars)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise VariableMismatch(f"{self.vars[i]!r} occurs but is not in {new_vars}")
                    ne[pos[i]] = k
            out[tuple(ne)] = c
        return MPoly(new_vars, out, _clean=True)

    def rename(self, mapping):
        return MPoly(tuple(mapping.get(v, v) for v in self.vars), self.terms, _clean=True)

    def _check(self, other):
        if self.vars != other.vars:
            raise VariableMismatch(f"variable contexts differ: {self.vars} vs {other.vars}")

    def _lift(self, other):
        if isinstance(other, MPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, QuadNumber)):
            return MPoly.const(other, self.vars)
        return None

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, _ZERO) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return MPoly(self.vars, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, c):
        c = to_scalar(c)
        if c == 0:
            return MPoly.zero(self.vars)
        if c == 1:
            return self
        return MPoly(self.vars, {e: c * v for e, v in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadNumber)):
            return self.scale(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        self._check(other)
        if not self.terms or not other.terms:
            return MPoly.zero(self.vars)
        if len(other.terms) == 1:
            (f, d), = other.terms.items()
            return MPoly(
                self.vars,
                {tuple(a + b for a, b in zip(e, f)): c * d for e, c in self.terms.items()},
                _clean=True,
            )
        if len(self.terms) == 1:
            return other * self
        fast = _rational_product(self.terms, other.terms)
        if fast is not None:
            return MPoly(self.vars, fast, _clean=True)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, _ZERO) + c1 * c2
        return MPoly(self.vars, {e: c for e, c in out.items() if c != 0}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = MPoly.one(self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, QuadNumber)):
            if other == 0:
                raise DivisionByZero("division by zero scalar")
            return self.scale(1 / to_scalar(other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction, QuadNumber)):
            if other == 0:
                return not self.terms
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def monic(self):
        if not self.terms:
            return self
        return self.scale(1 / self.lc())

    def map_coeffs(self, fn):
        return MPoly(self.vars, {e: fn(c) for e, c in self.terms.items()})

    # -- calculus and evaluation -------------------------------------------
    def diff(self, var):
        i = self.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1 :]
                out[ne] = c * e[i]
        return MPoly(self.vars, out, _clean=True)

    def coeffs_in(self, var):
        """``{k: coefficient of var**k}``; coefficients keep the same vars."""
        i = self.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1 :]
            out.setdefault(k, {})[ne] = c
        return {k: MPoly(self.vars, t, _clean=True) for k, t in out.items()}

    @classmethod
    def from_coeffs(cls, var, coeffs, vars):
        x = cls.var(var, vars)
        out = cls.zero(vars)
        for k, c in coeffs.items():
            out = out + c * x ** k
        return out

    def lc_in(self, var):
        cs = self.coeffs_in(var)
        return cs[max(cs)] if cs else MPoly.zero(self.vars)

    def eval(self, point):
        """Substitute scalars for some variables; result keeps the same vars."""
        idx = {self.index(v): to_scalar(val) for v, val in point.items()}
        cache = {}
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            for i, val in idx.items():
                k = e[i]
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = val ** k
                    c = c * cache[key]
                    ne[i] = 0
            ne = tuple(ne)
            out[ne] = out.get(ne, _ZERO) + c
        return MPoly(self.vars, {e: c for e, c in out.items() if c != 0}, _clean=True)

    def __call__(self, *values, **point):
        if values:
            point.update(zip(self.vars, values))
        return self.eval(point).constant_value() if set(point) >= set(self.free_vars()) else self.eval(point)

    def homogenize(self, var):
        """Homogenize with respect to ``var`` (which must be in vars and absent)."""
        i = self.index(var)
        d = self.degree()
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] += d - sum(e)
            out[tuple(ne)] = c
        return MPoly(self.vars, out, _clean=True)

    def to_univariate(self, var):
        """Dense coefficient list (low to high) of a polynomial in ``var`` only."""
        i = self.index(var)
        if not self.terms:
            return []
        out = [_ZERO] * (self.degree(var) + 1)
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise VariableMismatch(f"polynomial is not univariate in {var!r}")
            out[e[i]] = c
        return out

    @classmethod
    def from_univariate(cls, coeffs, var, vars=None):
        vars = tuple(vars) if vars is not None else (var,)
        i = vars.index(var)
        n = len(vars)
        out = {}
        for k, c in enumerate(coeffs):
            if c != 0:
                e = [0] * n
                e[i] = k
                out[tuple(e)] = to_scalar(c)
        return cls(vars, out, _clean=True)

    # -- printing ------------------------------------------------------------
    def to_str(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            neg = False
            if isinstance(c, QuadNumber):
                cs = scalar_str(c)
                if not is_simple_scalar_str(c):
                    cs = f"({cs})"
                elif cs.startswith("-"):
                    neg, cs = True, cs[1:]
            else:
                neg = c < 0
                cs = scalar_str(abs(c))
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            parts.append(("-" if neg else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for s, body in parts[1:]:
            out += f" {s} {body}"
        return out

    __str__ = to_str

    def __repr__(self):
        return f"MPoly({self.to_str()!r}, vars={self.vars})"


# ---------------------------------------------------------------------------
# division


def divexact(a: MPoly, b: MPoly) -> MPoly:
    """Exact quotient ``a / b``; raises NotExact if ``b`` does not divide ``a``."""
    a._check(b)
    if not b.terms:
        raise DivisionByZero("division by the zero polynomial")
    if not a.terms:
        return a
    if b.is_constant():
        return a.scale(1 / b.constant_value())
    lb = b.leading_exp()
    lcb = b.terms[lb]
    rest = [(e, c) for e, c in b.terms.items() if e != lb]
    rem = dict(a.terms)
    heap = [(-sum(e), tuple(-k for k in e)) for e in rem]
    heapq.heapify(heap)
    q = {}
    while heap:
        _, neg = heapq.heappop(heap)
        m = tuple(-k for k in neg)
        c = rem.pop(m, None)
        if c is None:
            continue
        # drop duplicate heap entries for m
        if any(x < y for x, y in zip(m, lb)):
            raise NotExact("polynomial division is not exact")
        mono = tuple(x - y for x, y in zip(m, lb))
        coef = c / lcb
        q[mono] = coef
        for e, d in rest:
            t = tuple(x + y for x, y in zip(e, mono))
            old = rem.get(t)
            nv = (old if old is not None else _ZERO) - coef * d
            if nv == 0:
                rem.pop(t, None)
            else:
                if old is None:
                    heapq.heappush(heap, (-sum(t), tuple(-k for k in t)))
                rem[t] = nv
    return MPoly(a.vars, q, _clean=True)


def divides(b: MPoly, a: MPoly) -> bool:
    try:
        divexact(a, b)
        return True
    except NotExact:
        return False


def pseudo_divmod(a: MPoly, b: MPoly, var: str):
    """``(q, r)`` with ``lc_var(b)**k * a == q*b + r`` and ``deg_var r < deg_var b``.

    ``k = max(deg_var a - deg_var b + 1, 0)``.
    """
    a._check(b)
    if not b.terms:
        raise DivisionByZero("pseudo-division by zero")
    n = b.degree(var)
    lcb = b.lc_in(var)
    x = MPoly.var(var, a.vars)
    k = max(a.degree(var) - n + 1, 0)
    q = MPoly.zero(a.vars)
    r = a
    steps = 0
    while r.terms and r.degree(var) >= n:
        dr = r.degree(var)
        t = r.lc_in(var) * x ** (dr - n)
        q = q * lcb + t
        r = r * lcb - t * b
        steps += 1
    if steps < k:
        f = lcb ** (k - steps)
        q, r = q * f, r * f
    return q, r


def prem(a, b, var):
    return pseudo_divmod(a, b, var)[1]


# ---------------------------------------------------------------------------
# gcd


def _eval_point_values(attempt, nvars):
    base = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)
    return [Fraction(base[(i + attempt) % len(base)] * (attempt + 1) + i - 3 * attempt) for i in range(nvars)]


def _univariate_image(p: MPoly, i, values):
    """Dense list in variable i after evaluating all other vars at values."""
    powcache = {}
    deg = max(e[i] for e in p.terms)
    out = [_ZERO] * (deg + 1)
    for e, c in p.terms.items():
        for j, k in enumerate(e):
            if j != i and k:
                key = (j, k)
                if key not in powcache:
                    powcache[key] = values[j] ** k
                c = c * powcache[key]
        out[e[i]] += c
    return out


def _coprime_by_evaluation(a: MPoly, b: MPoly) -> bool:
    """Sound coprimality certificate (False means inconclusive)."""
    from .univariate import dup_degree, dup_gcd

    da, db = a.degrees(), b.degrees()
    n = len(a.vars)
    for i in range(n):
        if da[i] == 0 or db[i] == 0:
            continue
        ok = False
        for attempt in range(4):
            vals = _eval_point_values(attempt, n)
            ua = _univariate_image(a, i, vals)
            ub = _univariate_image(b, i, vals)
            if len(ua) - 1 != da[i] or ua[-1] == 0 or len(ub) - 1 != db[i] or ub[-1] == 0:
                continue
            if dup_degree(dup_gcd(ua, ub)) == 0:
                ok = True
            break
        if not ok:
            return False
    return True


def _only_var(p: MPoly):
    fv = p.free_vars()
    return fv[0] if len(fv) == 1 else None


def content_in(p: MPoly, var: str) -> MPoly:
    g = None
    for c in sorted(p.coeffs_in(var).values(), key=lambda m: len(m.terms)):
        g = c if g is None else gcd(g, c)
        if g.is_constant():
            return MPoly.one(p.vars)
    return g.monic() if g is not None else MPoly.zero(p.vars)


def _subresultant_prs_gcd(a, b, var):
    """gcd of primitive (in var) polynomials via the subresultant PRS."""
    if a.degree(var) < b.degree(var):
        a, b = b, a
    g = MPoly.one(a.vars)
    h = MPoly.one(a.vars)
    while True:
        d = a.degree(var) - b.degree(var)
        r = prem(a, b, var)
        if not r.terms:
            break
        if r.degree(var) == 0:
            return MPoly.one(a.vars)
        a, b = b, divexact(r, g * h ** d)
        g = a.lc_in(var)
        if d == 0:
            pass
        elif d == 1:
            h = g
        else:
            h = divexact(g ** d, h ** (d - 1))
    return divexact(b, content_in(b, var))


def _gcd_rec(a: MPoly, b: MPoly) -> MPoly:
    if not a.terms:
        return b
    if not b.terms:
        return a
    if a.is_constant() or b.is_constant():
        return MPoly.one(a.vars)
    va, vb = a.free_vars(), b.free_vars()
    xa, xb = _only_var(a), _only_var(b)
    if xa is not None and xa == xb:
        from .univariate import dup_gcd

        return MPoly.from_univariate(dup_gcd(a.to_univariate(xa), b.to_univariate(xa)), xa, a.vars)
    common = [v for v in va if v in vb]
    if not common:
        # a common divisor can only involve variables shared by both
        return MPoly.one(a.vars)
    if _coprime_by_evaluation(a, b):
        return MPoly.one(a.vars)
    # main variable: the common one of least combined degree
    var = min(common, key=lambda v: a.degree(v) + b.degree(v))
    ca, cb = content_in(a, var), content_in(b, var)
    c = gcd(ca, cb)
    pa = divexact(a, ca) if not ca.is_constant() else a
    pb = divexact(b, cb) if not cb.is_constant() else b
    return c * _subresultant_prs_gcd(pa, pb, var)


def _is_rational_poly(p: MPoly) -> bool:
    return all(type(c) is Fraction or type(c) is int for c in p.terms.values())


_RINGS = {}


def _sympy_ring(vars):
    """A cached sympy sparse polynomial ring over QQ on ``vars`` (used for gcds only)."""
    R = _RINGS.get(vars)
    if R is None:
        from sympy import QQ
        from sympy.polys.rings import PolyRing

        R = PolyRing([f"_g{i}" for i in range(len(vars))] or ["_g0"], QQ)
        _RINGS[vars] = R
    return R


def _to_ring(p: MPoly, R):
    dom = R.domain
    return R.from_dict({e: dom(c.numerator, c.denominator) for e, c in p.terms.items()})


def _from_ring(q, vars):
    return MPoly(
        vars, {e: Fraction(int(c.numerator), int(c.denominator)) for e, c in q.items()}, _clean=True
    )


def rational_cofactors(a: MPoly, b: MPoly):
    """``(g, a/g, b/g)`` for rational polynomials via sympy; None if not applicable."""
    if not a.vars or not (_is_rational_poly(a) and _is_rational_poly(b)):
        return None
    R = _sympy_ring(a.vars)
    g, ca, cb = _to_ring(a, R).cofactors(_to_ring(b, R))
    return _from_ring(g, a.vars), _from_ring(ca, a.vars), _from_ring(cb, a.vars)


def _single_quad_field(*polys):
    """The common field ``Q(sqrt(r))`` of the coefficients, or None if there is none."""
    from .scalars import QuadNumber

    field = None
    for p in polys:
        for c in p.terms.values():
            if isinstance(c, QuadNumber):
                if c.field.base is not None or (field is not None and c.field != field):
                    return None
                field = c.field
            elif type(c) is not Fraction and type(c) is not int:
                return None
    return field


_ALG_RINGS = {}


def _alg_ring(vars, r):
    R = _ALG_RINGS.get((vars, r))
    if R is None:
        from sympy import QQ, sqrt
        from sympy.polys.rings import PolyRing

        K = QQ.algebraic_field(sqrt(r))
        if [int(c) for c in K.mod.to_list()] != [1, 0, -r]:
            return None
        R = PolyRing([f"_g{i}" for i in range(len(vars))] or ["_g0"], K)
        _ALG_RINGS[(vars, r)] = R
    return R


def _field_conj(p: MPoly) -> MPoly:
    """Apply ``sqrt(r) -> -sqrt(r)`` to every coefficient."""
    from .scalars import QuadNumber, make

    return MPoly(p.vars, {e: make(c.a, -c.b, c.field) if isinstance(c, QuadNumber) else c
                          for e, c in p.terms.items()}, _clean=True)


def _multiplicity(p: MPoly, h: MPoly) -> int:
    k = 0
    while True:
        try:
            p = divexact(p, h)
        except NotExact:
            return k
        k += 1


def _split_over(P: MPoly, field):
    """Irreducible factors of the rational polynomial ``P`` over ``Q(sqrt(r))`` (monic)."""
    from .scalars import QuadNumber

    R = _alg_ring(P.vars, field.r)
    if R is None:
        return [P]
    K = R.domain
    _, facs = R.from_dict({e: K.convert(K.dom(c.numerator, c.denominator)) for e, c in P.terms.items()}).factor_list()
    out = []
    for h, _ in facs:
        terms = {}
        for e, c in h.items():
            parts = [Fraction(int(t.numerator), int(t.denominator)) for t in c.to_list()]
            y, x = ([Fraction(0)] * (2 - len(parts)) + parts)[-2:]
            terms[e] = QuadNumber(x, y, field) if y else x
        out.append(MPoly(P.vars, terms, _clean=True).monic())
    return out


def quad_gcd(a: MPoly, b: MPoly):
    """Monic gcd over one quadratic field ``Q(sqrt(r))``; None if not applicable.

    Every irreducible factor of ``gcd(a, b)`` divides the rational polynomial
    ``G = gcd(a*conj(a), b*conj(b))``, which sympy computes quickly over Q.
    ``G`` is usually constant; otherwise it is factored over Q, each factor is
    split over the field, and multiplicities are found by exact division.
    """
    from .scalars import QuadNumber

    field = _single_quad_field(a, b)
    if field is None or not a.vars:
        return None
    na, nb = a * _field_conj(a), b * _field_conj(b)
    if not (_is_rational_poly(na) and _is_rational_poly(nb)):
        return None
    G = rational_cofactors(na, nb)[0]
    if G.is_constant():
        return MPoly.one(a.vars)
    RQ = _sympy_ring(a.vars)
    _, rational_facs = _to_ring(G, RQ).factor_list()
    g = MPoly.one(a.vars)
    for P, _ in rational_facs:
        P = _from_ring(P, a.vars).monic()
        # over the field P is irreducible or splits as h * conj(h)
        for h in _split_over(P, field):
            k = min(_multiplicity(a, h), _multiplicity(b, h))
            if k:
                g = g * h ** k
    return g.monic()


def squarefree_decomposition(p: MPoly):
    """``(c, [(g, k), ...])`` with ``p = c * prod g^k`` and the ``g`` squarefree, coprime."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no squarefree decomposition")
    if not _is_rational_poly(p):
        raise NotImplementedError("squarefree decomposition needs rational coefficients")
    if p.is_constant() or not p.vars:
        return p.constant_value(), []
    R = _sympy_ring(p.vars)
    _, facs = _to_ring(p, R).sqf_list()
    out = [(_from_ring(g, p.vars).monic(), k) for g, k in facs]
    # the constant is recomputed exactly so that p == c * prod g^k
    prod = MPoly.one(p.vars)
    for g, k in out:
        prod = prod * g ** k
    return p.lc() / prod.lc(), out


def gcd(a: MPoly, b: MPoly) -> MPoly:
    """Monic (grlex leading coefficient 1) greatest common divisor."""
    a._check(b)
    if not a.terms or not b.terms:
        return (a if a.terms else b).monic()
    fast = rational_cofactors(a, b)
    if fast is not None:
        return fast[0].monic()
    g = quad_gcd(a, b)
    if g is not None:
        return g
    g = _gcd_rec(a, b)
    return g.monic()


def gcd_prs(a: MPoly, b: MPoly) -> MPoly:
    """The same gcd computed by the in-house subresultant recursion (no delegation)."""
    a._check(b)
    return _gcd_rec(a, b).monic()


def gcd_many(polys) -> MPoly:
    polys = [p for p in polys if p.terms]
    if not polys:
        raise ValueError("gcd of nothing")
    polys.sort(key=lambda p: len(p.terms))
    g = polys[0]
    for p in polys[1:]:
        if g.is_constant():
            break
        g = gcd(g, p)
    return g.monic()


def lcm(a, b):
    return divexact(a * b, gcd(a, b)).monic()


# ---------------------------------------------------------------------------
# resultants


def _bareiss_det(m):
    n = len(m)
    if n == 0:
        return None
    m = [row[:] for row in m]
    vars_ = next(c.vars for row in m for c in row)
    sign = 1
    prev = MPoly.one(vars_)
    for k in range(n - 1):
        if not m[k][k].terms:
            for i in range(k + 1, n):
                if m[i][k].terms:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MPoly.zero(vars_)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = divexact(num, prev) if not prev.is_constant() else num.scale(1 / prev.constant_value())
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(a: MPoly, b: MPoly, var: str):
    da, db = a.degree(var), b.degree(var)
    ca, cb = a.coeffs_in(var), b.coeffs_in(var)
    zero = MPoly.zero(a.vars)
    n = da + db
    rows = []
    for i in range(db):
        row = [zero] * n
        for k in range(da + 1):
            row[i + da - k] = ca.get(k, zero)
        rows.append(row)
    for i in range(da):
        row = [zero] * n
        for k in range(db + 1):
            row[i + db - k] = cb.get(k, zero)
        rows.append(row)
    return rows


def resultant(a: MPoly, b: MPoly, var: str) -> MPoly:
    """Sylvester resultant eliminating ``var``."""
    a._check(b)
    i = a.index(var)
    if not a.terms or not b.terms:
        return MPoly.zero(a.vars)
    da, db = a.degree(var), b.degree(var)
    if da == 0 and db == 0:
        raise VariableMismatch(f"{var!r} occurs in neither operand")
    if da == 0:
        return a ** db
    if db == 0:
        return b ** da
    del i
    return _bareiss_det(sylvester_matrix(a, b, var))


def discriminant(a: MPoly, var: str) -> MPoly:
    """``(-1)^(n(n-1)/2) res(a, a') / lc``."""
    n = a.degree(var)
    r = resultant(a, a.diff(var), var)
    r = divexact(r, a.lc_in(var))
    return r if (n * (n - 1) // 2) % 2 == 0 else -r
