"""Rational functions as normalized fractions of MPolys, and substitution."""

from __future__ import annotations

from fractions import Fraction

from ..errors import DivisionByZero, VariableMismatch
from .mpoly import MPoly, divexact, gcd, rational_cofactors
from .scalars import QuadNumber, to_scalar

_SCALARS = (int, Fraction, QuadNumber)


class RatFunc:
    """``num / den`` with ``gcd(num, den) == 1`` and ``den`` monic in grlex."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _normalized=False):
        if den is None:
            den = MPoly.one(num.vars)
        num._check(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if not _normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def lift(cls, x, vars=None):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, MPoly):
            return cls(x, MPoly.one(x.vars), _normalized=True)
        if isinstance(x, _SCALARS):
            if vars is None:
                raise VariableMismatch("a scalar needs a variable context")
            return cls(MPoly.const(x, vars), MPoly.one(vars), _normalized=True)
        raise TypeError(f"cannot make a rational function from {x!r}")

    @property
    def vars(self):
        return self.num.vars

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_constant()

    def as_poly(self):
        if not self.den.is_constant():
            raise ValueError("rational function has a nonconstant denominator")
        return self.num

    def degree(self):
        return max(self.num.degree(), self.den.degree())

    def with_vars(self, vars):
        return RatFunc(self.num.with_vars(vars), self.den.with_vars(vars), _normalized=True)

    def _other(self, other):
        if isinstance(other, RatFunc):
            self.num._check(other.num)
            return other
        if isinstance(other, MPoly):
            self.num._check(other)
            return RatFunc.lift(other)
        if isinstance(other, _SCALARS):
            return RatFunc.lift(other, self.vars)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        if o.den.is_constant():
            # gcd(n + m*d, d) == gcd(n, d) == 1
            return RatFunc(self.num + o.num * self.den, self.den, _normalized=True)
        if self.den.is_constant():
            return o + self
        g = gcd(self.den, o.den)
        if g.is_constant():
            return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)
        a, b = divexact(self.den, g), divexact(o.den, g)
        return RatFunc(self.num * b + o.num * a, a * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            if other == 0:
                return RatFunc.lift(MPoly.zero(self.vars))
            return RatFunc(self.num.scale(other), self.den, _normalized=True)
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return RatFunc.lift(MPoly.zero(self.vars))
        # cross-cancel before multiplying
        g1 = gcd(self.num, o.den) if not o.den.is_constant() else None
        g2 = gcd(o.num, self.den) if not self.den.is_constant() else None
        n1, d2 = (divexact(self.num, g1), divexact(o.den, g1)) if g1 is not None and not g1.is_constant() else (self.num, o.den)
        n2, d1 = (divexact(o.num, g2), divexact(self.den, g2)) if g2 is not None and not g2.is_constant() else (o.num, self.den)
        num, den = n1 * n2, d1 * d2
        lc = den.lc()
        return RatFunc(num.scale(1 / lc), den.scale(1 / lc), _normalized=True)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        lc = self.num.lc()
        return RatFunc(self.den.scale(1 / lc), self.num.scale(1 / lc), _normalized=True)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _normalized=True)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, MPoly):
            return self.den == 1 and self.num == other
        if isinstance(other, _SCALARS):
            return self.den == 1 and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def diff(self, var):
        n, d = self.num, self.den
        return RatFunc(n.diff(var) * d - n * d.diff(var), d * d)

    def eval(self, point):
        return RatFunc(self.num.eval(point), self.den.eval(point))

    def to_str(self):
        if self.den == 1:
            return self.num.to_str()
        n = self.num.to_str()
        if len(self.num.terms) > 1:
            n = f"({n})"
        d = self.den.to_str()
        if len(self.den.terms) > 1 or not self.den.is_constant() and self.den.lc() != 1:
            d = f"({d})"
        return f"{n}/{d}"

    __str__ = to_str

    def __repr__(self):
        return f"RatFunc({self.to_str()!r}, vars={self.vars})"


def _normalize(num: MPoly, den: MPoly):
    if num.is_zero():
        return num, MPoly.one(num.vars)
    if not den.is_constant() and not num.is_constant():
        fast = rational_cofactors(num, den)
        if fast is not None:
            _, num, den = fast
        else:
            g = gcd(num, den)
            if not g.is_constant():
                num, den = divexact(num, g), divexact(den, g)
    lc = den.lc()
    if lc != 1:
        inv = 1 / lc
        num, den = num.scale(inv), den.scale(inv)
    return num, den


def as_ratfunc(x, vars):
    r = RatFunc.lift(x, vars)
    if r.vars != tuple(vars):
        raise VariableMismatch(f"context {r.vars} differs from {tuple(vars)}")
    return r


def substitute(target, bindings, vars=None) -> RatFunc:
    """Simultaneous substitution ``target(var -> bindings[var])``.

    ``vars`` is the output context; it defaults to the context of the
    bindings.  Unbound variables of ``target`` pass through unchanged and
    must belong to the output context.
    """
    num, den = substitute_raw(target, bindings, vars)
    return RatFunc(num, den)


def substitute_raw(target, bindings, vars=None, reduce=None):
    """Like :func:`substitute` but returns an unreduced ``(num, den)`` pair.

    ``reduce`` (optional) is applied to every intermediate product; it must
    be a ring map that fixes the result up to an ideal the caller works in.
    """
    red = reduce or (lambda p: p)
    if vars is None:
        for b in bindings.values():
            if isinstance(b, (MPoly, RatFunc)):
                vars = b.vars
                break
        else:
            vars = target.vars
    vars = tuple(vars)
    for v in bindings:
        if v not in target.vars:
            raise VariableMismatch(f"bound variable {v!r} not in {target.vars}")
    if isinstance(target, RatFunc):
        nn, nd = substitute_raw(target.num, bindings, vars, reduce)
        dn, dd = substitute_raw(target.den, bindings, vars, reduce)
        if dn.is_zero():
            raise DivisionByZero("denominator vanishes identically after substitution")
        if nd == dd:
            return nn, dn
        return red(nn * dd), red(nd * dn)
    if not isinstance(target, MPoly):
        r = RatFunc.lift(target, vars)
        return r.num, r.den
    images = []
    for v in target.vars:
        if v in bindings:
            images.append(as_ratfunc(bindings[v], vars))
        elif target.degree(v) > 0:
            images.append(RatFunc.lift(MPoly.var(v, vars)))
        else:
            images.append(None)
    # group variables by their image denominator
    groups = {}
    for i, im in enumerate(images):
        if im is not None and not im.den.is_constant():
            groups.setdefault(im.den, []).append(i)
    group_deg = {
        d: max(sum(e[i] for i in idx) for e in target.terms) if target.terms else 0
        for d, idx in groups.items()
    }
    pow_cache = {}

    def power(key, poly, k):
        if (key, k) not in pow_cache:
            if k == 1:
                pow_cache[(key, k)] = poly
            elif (key, k - 1) in pow_cache:
                pow_cache[(key, k)] = red(pow_cache[(key, k - 1)] * poly)
            else:
                pow_cache[(key, k)] = red(poly ** k)
        return pow_cache[(key, k)]

    dens = list(groups)
    acc = {}
    for e, c in target.terms.items():
        t = MPoly.const(c, vars)
        for i, k in enumerate(e):
            if k:
                t = red(t * power(("v", i), images[i].num, k))
        for j, d in enumerate(dens):
            missing = group_deg[d] - sum(e[i] for i in groups[d])
            if missing:
                t = red(t * power(("d", j), d, missing))
        for m, cm in t.terms.items():
            acc[m] = acc.get(m, 0) + cm
    num = MPoly(vars, acc)
    den = MPoly.one(vars)
    for d, k in group_deg.items():
        den = red(den * d ** k)
    return num, den
