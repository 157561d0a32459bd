"""Hypersurfaces, birational maps between them, verification and composition.

A map stores ``forward`` (target coordinates as rational functions of the
source coordinates) and ``inverse`` (source coordinates as functions of the
target coordinates).  Verification checks three exact identities:

1. the inverse lands on the source hypersurface;
2. ``forward(inverse(t)) == t`` in the function field of the target;
3. ``inverse(forward(s)) == s`` modulo the source equation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from fractions import Fraction

from ..algebra.mpoly import MPoly, prem
from ..algebra.scalars import QuadNumber, field_of, join_fields
from ..algebra.ratfunc import RatFunc, substitute, substitute_raw
from ..errors import ChartMismatch

UNVERIFIED, PASS, FAIL = "Unverified", "Pass", "Fail"
MAX_COMPONENT_DEGREE = 64


@dataclass(frozen=True)
class Hypersurface:
    """``eq = 0`` in affine space on ``vars``; ``eq`` None means all of affine space."""

    vars: tuple
    eq: MPoly | None = None

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if self.eq is not None:
            if self.eq.is_zero():
                raise ValueError("hypersurface equation must be nonzero")
            if self.eq.vars != self.vars:
                object.__setattr__(self, "eq", self.eq.with_vars(self.vars))

    def is_affine_space(self):
        return self.eq is None

    def distinguished_var(self):
        """The variable used for reduction: ``x`` when present, else the first one."""
        if self.eq is None:
            return None
        if "x" in self.vars and self.eq.degree("x") > 0:
            return "x"
        for v in self.vars:
            if self.eq.degree(v) > 0:
                return v
        raise ValueError("constant hypersurface equation")

    def reduce(self, p: MPoly) -> MPoly:
        """Pseudo-remainder of ``p`` by the equation (zero iff ``eq`` divides ``p``)."""
        if self.eq is None:
            return p
        return prem(p.with_vars(self.vars), self.eq, self.distinguished_var())

    def contains_zero(self, p: MPoly) -> bool:
        return self.reduce(p).is_zero()

    def same_as(self, other):
        if self.vars != other.vars:
            return False
        if (self.eq is None) != (other.eq is None):
            return False
        if self.eq is None:
            return True
        # equal up to a nonzero constant factor
        a, b = self.eq, other.eq
        return a.scale(1 / a.lc()) == b.scale(1 / b.lc())

    def to_dict(self):
        return {"vars": list(self.vars), "eq": self.eq.to_str() if self.eq is not None else None}


@dataclass
class MapStep:
    name: str
    bindings: dict
    inverse_bindings: dict
    citation: str = ""

    def to_dict(self):
        return {
            "name": self.name,
            "bindings": {k: str(v) for k, v in self.bindings.items()},
            "inverse_bindings": {k: str(v) for k, v in self.inverse_bindings.items()},
            "citation": self.citation,
        }


@dataclass
class Verification:
    status: str = UNVERIFIED
    witness: str | None = None
    check: str | None = None

    @property
    def passed(self):
        return self.status == PASS

    def to_dict(self):
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
            out["check"] = self.check
        return out


def _as_rf(x, vars):
    if isinstance(x, RatFunc):
        return x.with_vars(vars) if x.vars != vars else x
    if isinstance(x, MPoly):
        return RatFunc.lift(x.with_vars(vars))
    return RatFunc.lift(x, vars)


@dataclass
class BirationalMap:
    source: Hypersurface
    target: Hypersurface
    forward: dict
    inverse: dict
    steps: list = field(default_factory=list)
    verified: Verification = field(default_factory=Verification)

    def __post_init__(self):
        sv, tv = self.source.vars, self.target.vars
        if set(self.forward) != set(tv):
            raise ChartMismatch(f"forward components {sorted(self.forward)} do not match {tv}")
        if set(self.inverse) != set(sv):
            raise ChartMismatch(f"inverse components {sorted(self.inverse)} do not match {sv}")
        self.forward = {v: _as_rf(self.forward[v], sv) for v in tv}
        self.inverse = {v: _as_rf(self.inverse[v], tv) for v in sv}

    def max_degree(self):
        return max(r.degree() for r in list(self.forward.values()) + list(self.inverse.values()))

    def perturbed(self, var=None, delta=1):
        """A copy with one forward component shifted by ``delta`` (for negative tests)."""
        var = var or self.target.vars[0]
        fwd = dict(self.forward)
        fwd[var] = fwd[var] + delta
        return BirationalMap(self.source, self.target, fwd, dict(self.inverse), list(self.steps))

    def to_dict(self):
        return {
            "source": self.source.to_dict(),
            "target": self.target.to_dict(),
            "forward": {v: self.forward[v].to_str() for v in self.target.vars},
            "inverse": {v: self.inverse[v].to_str() for v in self.source.vars},
            "steps": [s.to_dict() for s in self.steps],
            "verified": self.verified.to_dict(),
        }


def identity_map(space: Hypersurface) -> BirationalMap:
    gens = {v: MPoly.var(v, space.vars) for v in space.vars}
    return BirationalMap(space, space, dict(gens), dict(gens), [], Verification())


def _fail(msg, poly):
    return Verification(FAIL, poly.to_str() if hasattr(poly, "to_str") else str(poly), msg)


class _RadicalRing:
    """Arithmetic over ``Q(sqrt r1, sqrt r2, ...)`` as ``Q[.., s1, s2, ..]`` modulo ``s_i^2 - r_i``.

    Every coefficient becomes rational, which keeps the verification
    products on the integer fast path.
    """

    def __init__(self, radicands):
        self.rads = list(radicands)
        self.svars = tuple(f"_s{i}" for i in range(len(self.rads)))
        self.pos = {r: i for i, r in enumerate(self.rads)}

    def _coeff(self, c):
        n = len(self.rads)
        if not isinstance(c, QuadNumber):
            return {(0,) * n: c}
        j = self.pos[c.field.r]
        out = dict(self._coeff(c.a))
        for e, q in self._coeff(c.b).items():
            e = list(e)
            e[j] += 1
            e = tuple(e)
            out[e] = out.get(e, 0) + q
        return out

    def lift(self, p: MPoly, vars):
        if not self.rads:
            return p.with_vars(vars)
        base = p.with_vars(vars[: len(vars) - len(self.svars)])
        out = {}
        for e, c in base.terms.items():
            for se, q in self._coeff(c).items():
                k = e + se
                out[k] = out.get(k, 0) + q
        return MPoly(vars, out)

    def lift_rf(self, r: RatFunc, vars):
        return RatFunc(self.lift(r.num, vars), self.lift(r.den, vars), _normalized=True)

    def reduce_radicals(self, p: MPoly):
        if not self.rads:
            return p
        n = len(self.rads)
        off = len(p.vars) - n
        out = {}
        for e, c in p.terms.items():
            e = list(e)
            for i, r in enumerate(self.rads):
                k = e[off + i]
                if k >= 2:
                    c = c * Fraction(r) ** (k // 2)
                    e[off + i] = k % 2
            e = tuple(e)
            out[e] = out.get(e, 0) + c
        return MPoly(p.vars, out)

    def in_ideal(self, p: MPoly, eq: MPoly | None, x: str | None):
        p = self.reduce_radicals(p)
        if eq is None or p.is_zero():
            return p.is_zero()
        return self.reduce_radicals(_remainder(p, eq, x)).is_zero()


def _remainder(p: MPoly, eq: MPoly, x: str) -> MPoly:
    """Remainder of ``p`` by ``eq`` in ``x``; ordinary division when the leading coefficient is constant."""
    lc = eq.lc_in(x)
    if not lc.is_constant():
        return prem(p, eq, x)
    n = eq.degree(x)
    inv = 1 / lc.constant_value()
    xv = MPoly.var(x, p.vars)
    r = p
    while r.terms and r.degree(x) >= n:
        t = r.lc_in(x) * xv ** (r.degree(x) - n)
        r = r - (t * eq).scale(inv)
    return r


def _monic_var(eq: MPoly):
    """A variable of degree 2 in which ``eq`` has a constant leading coefficient."""
    for v in eq.vars:
        if eq.degree(v) == 2 and eq.lc_in(v).is_constant():
            return v
    return None


def _radicands(m: BirationalMap):
    field = None
    polys = []
    for r in list(m.forward.values()) + list(m.inverse.values()):
        polys += [r.num, r.den]
    for h in (m.source, m.target):
        if h.eq is not None:
            polys.append(h.eq)
    for p in polys:
        for c in p.terms.values():
            field = join_fields(field, field_of(c))
    return field.radicands() if field is not None else []


def verify_parametrization(m: BirationalMap) -> Verification:
    """Check the three map identities exactly; returns Pass or Fail with a witness."""
    src, tgt = m.source, m.target
    ring = _RadicalRing(_radicands(m))
    SV, TV = src.vars + ring.svars, tgt.vars + ring.svars
    seq = ring.lift(src.eq, SV) if src.eq is not None else None
    teq = ring.lift(tgt.eq, TV) if tgt.eq is not None else None
    sx, tx = src.distinguished_var(), tgt.distinguished_var()
    fwd = {v: ring.lift_rf(m.forward[v], SV) for v in tgt.vars}
    inv = {v: ring.lift_rf(m.inverse[v], TV) for v in src.vars}

    red = ring.reduce_radicals if ring.rads else None
    src_red = red
    mv = _monic_var(seq) if seq is not None else None
    if mv is not None:
        def src_red(p, _eq=seq, _v=mv):
            return ring.reduce_radicals(_remainder(ring.reduce_radicals(p), _eq, _v))

    def on_src(p):
        return ring.in_ideal(p, seq, sx)

    def on_tgt(p):
        return ring.in_ideal(p, teq, tx)

    # forward denominators must not vanish on the source
    for v in tgt.vars:
        if on_src(fwd[v].den):
            return _fail(f"forward denominator of {v} vanishes on the source", m.forward[v].den)
    for v in src.vars:
        if on_tgt(inv[v].den):
            return _fail(f"inverse denominator of {v} vanishes on the target", m.inverse[v].den)
    # 1. the inverse lands on the source
    if seq is not None:
        n, _ = substitute_raw(seq, inv, TV, red)
        if not on_tgt(n):
            return _fail("source equation does not vanish on the image", ring.reduce_radicals(n))
    # 2. forward(inverse(t)) == t modulo the target equation
    for v in tgt.vars:
        n, d = substitute_raw(fwd[v], inv, TV, red)
        diff = n - MPoly.var(v, TV) * d
        if not on_tgt(diff):
            return _fail(f"forward(inverse) differs from {v}", ring.reduce_radicals(diff))
        if on_tgt(d):
            return _fail(f"forward(inverse) denominator vanishes for {v}", d)
    # 3. inverse(forward(s)) == s modulo the source equation
    for v in src.vars:
        n, d = substitute_raw(inv[v], fwd, SV, src_red)
        diff = n - MPoly.var(v, SV) * d
        if not on_src(diff):
            return _fail(f"inverse(forward) differs from {v}", ring.reduce_radicals(diff))
        if on_src(d):
            return _fail(f"inverse(forward) denominator vanishes for {v}", d)
    return Verification(PASS)


def verified(m: BirationalMap) -> BirationalMap:
    m.verified = verify_parametrization(m)
    return m


def _reduce_rf(r: RatFunc, space: Hypersurface) -> RatFunc:
    """Cheap canonical shrink: reduce numerator and denominator modulo the equation
    when that keeps the value (only valid when the equation is monic in its
    distinguished variable)."""
    if space.eq is None:
        return r
    x = space.distinguished_var()
    lc = space.eq.lc_in(x)
    if not lc.is_constant():
        return r
    n, d = prem(r.num, space.eq, x), prem(r.den, space.eq, x)
    if d.is_zero():
        return r
    return RatFunc(n, d)


def compose(m1: BirationalMap, m2: BirationalMap) -> BirationalMap:
    """``m2 after m1``: source of m1 to target of m2."""
    if not m1.target.same_as(m2.source):
        raise ChartMismatch("target of the first map differs from the source of the second")
    sv, tv = m1.source.vars, m2.target.vars
    fwd = {v: _reduce_rf(substitute(m2.forward[v], m1.forward, sv), m1.source) for v in tv}
    inv = {v: _reduce_rf(substitute(m1.inverse[v], m2.inverse, tv), m2.target) for v in sv}
    return BirationalMap(m1.source, m2.target, fwd, inv, list(m1.steps) + list(m2.steps), Verification())


def compose_all(maps):
    out = maps[0]
    for m in maps[1:]:
        out = compose(out, m)
    return out


def step_map(name, source, target, bindings, inverse_bindings, citation=""):
    """A single displayed substitution as a map; unbound variables pass through."""
    fwd = {}
    for v in target.vars:
        fwd[v] = bindings[v] if v in bindings else MPoly.var(v, source.vars)
    inv = {}
    for v in source.vars:
        inv[v] = inverse_bindings[v] if v in inverse_bindings else MPoly.var(v, target.vars)
    m = BirationalMap(source, target, fwd, inv, [])
    m.steps = [MapStep(name, dict(m.forward), dict(m.inverse), citation)]
    return m
