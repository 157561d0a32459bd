"""Exact scalars: rationals and towers of quadratic extensions.

Rationals are plain :class:`fractions.Fraction`.  An element ``a + b*sqrt(r)``
of a quadratic extension ``F = B(sqrt(r))`` is a :class:`QuadNumber` whose
components live in ``B``.  Elements are always stored in their smallest
representing field, so ``b != 0`` for every ``QuadNumber``.

Real towers (all radicands positive) are ordered; an imaginary radicand is
only ever placed at the top of a tower.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from sympy import factorint

from ..errors import FieldMismatch, NeedsExtension

MAX_REAL_DEPTH = 2
MAX_DEPTH = 3


def squarefree_part(q) -> int:
    """Signed square-free integer ``r`` with ``q = r * (rational)^2``."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("zero has no square-free part")
    n = abs(q.numerator) * q.denominator
    r = 1
    for p, e in factorint(n).items():
        if e % 2:
            r *= p
    return r if q > 0 else -r


class QuadField:
    """The field ``base(sqrt(r))``; ``base`` is None for the rationals."""

    __slots__ = ("base", "r", "depth", "_hash")

    def __init__(self, base, r: int):
        r = int(r)
        if r in (0, 1) or squarefree_part(r) != r:
            raise ValueError(f"radicand must be square-free and not 0 or 1, got {r}")
        if base is not None and base.r < 0:
            raise ValueError("imaginary radicands only at the top of a tower")
        self.base = base
        self.r = r
        self.depth = 1 + (base.depth if base is not None else 0)
        if self.depth > MAX_DEPTH:
            raise NeedsExtension("quadratic tower too deep", depth=self.depth)
        if r > 0 and self.depth > MAX_REAL_DEPTH:
            raise NeedsExtension("real quadratic tower too deep", depth=self.depth)
        self._hash = hash((base, r))

    @property
    def is_real(self) -> bool:
        return self.r > 0 and (self.base is None or self.base.is_real)

    def radicands(self) -> list[int]:
        out = [] if self.base is None else self.base.radicands()
        return out + [self.r]

    def real_part(self):
        """Largest real subfield in the tower (None for the rationals)."""
        return self if self.is_real else self.base

    def gen(self) -> "QuadNumber":
        return QuadNumber(Fraction(0), Fraction(1), self)

    def __eq__(self, other):
        return isinstance(other, QuadField) and self.r == other.r and self.base == other.base

    def __hash__(self):
        return self._hash

    def __repr__(self):
        inner = "Q" if self.base is None else repr(self.base)
        return f"{inner}(sqrt({self.r}))"


GAUSSIAN = QuadField(None, -1)


def is_subfield(g, f) -> bool:
    """True if field ``g`` embeds in ``f`` compatibly with the representation."""
    if g is None:
        return True
    if f is None:
        return False
    if g == f:
        return True
    if is_subfield(g, f.base):
        return True
    return g.r == f.r and is_subfield(g.base, f.base)


def _independent(radicands, r) -> bool:
    from itertools import combinations

    for k in range(len(radicands) + 1):
        for combo in combinations(radicands, k):
            prod = r
            for s in combo:
                prod *= s
            if prod > 0 and isqrt(prod) ** 2 == prod:
                return False
    return True


def join_fields(f, g):
    """Smallest tower (in this representation) containing both fields."""
    if is_subfield(g, f):
        return f
    if is_subfield(f, g):
        return g
    gens = []
    for r in (f.radicands() if f else []) + (g.radicands() if g else []):
        if r not in gens:
            gens.append(r)
    real = [r for r in gens if r > 0]
    imag = [r for r in gens if r < 0]
    if len(imag) > 1:
        # two imaginary radicands: the second is real times the first
        first = imag[0]
        for other in imag[1:]:
            real.append(squarefree_part(Fraction(other, first)))
        imag = [first]
    basis = []
    for r in real:
        if r != 1 and _independent(basis, r):
            basis.append(r)
    field = None
    # keep f's own tower order where possible
    for r in (f.radicands() if f else []):
        if r > 0 and r in basis:
            field = QuadField(field, r)
    for r in basis:
        if field is None or r not in field.radicands():
            field = QuadField(field, r)
    for r in imag:
        field = QuadField(field, r)
    if not (is_subfield(f, field) and is_subfield(g, field)):
        raise FieldMismatch(f"cannot represent the compositum of {f!r} and {g!r}")
    return field


def field_of(x):
    return x.field if isinstance(x, QuadNumber) else None


def to_scalar(x):
    if isinstance(x, (Fraction, QuadNumber)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a scalar: {x!r}")


def _components(y, f):
    """Components of ``y`` over ``f.base`` as a pair."""
    if not isinstance(y, QuadNumber):
        return y, Fraction(0)
    g = y.field
    if g == f:
        return y.a, y.b
    if is_subfield(g, f.base):
        return y, Fraction(0)
    if g.r == f.r and is_subfield(g.base, f.base):
        return y.a, y.b
    raise FieldMismatch(f"{y!r} is not an element of {f!r}")


def make(a, b, f):
    """Build ``a + b*sqrt(f.r)`` in its smallest representation."""
    if b == 0:
        return a
    ga, gb = field_of(a), field_of(b)
    if is_subfield(ga, gb):
        g = gb
    elif is_subfield(gb, ga):
        g = ga
    else:
        g = f.base
    if g != f.base:
        f = QuadField(g, f.r)
    return QuadNumber(a, b, f)


class QuadNumber:
    __slots__ = ("a", "b", "field")

    def __init__(self, a, b, field: QuadField):
        self.a = a
        self.b = b
        self.field = field

    # -- coercion -------------------------------------------------------
    def _common(self, other):
        if isinstance(other, int):
            other = Fraction(other)
        if isinstance(other, Fraction):
            return self.field, (self.a, self.b), (other, Fraction(0))
        if not isinstance(other, QuadNumber):
            return None
        f = join_fields(self.field, other.field)
        return f, _components(self, f), _components(other, f)

    def __add__(self, other):
        c = self._common(other)
        if c is None:
            return NotImplemented
        f, (a, b), (c_, d) = c
        return make(a + c_, b + d, f)

    __radd__ = __add__

    def __neg__(self):
        return QuadNumber(-self.a, -self.b, self.field)

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._common(other)
        if c is None:
            return NotImplemented
        f, (a, b), (c_, d) = c
        return make(a - c_, b - d, f)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._common(other)
        if c is None:
            return NotImplemented
        f, (a, b), (c_, d) = c
        if d == 0:
            return make(a * c_, b * c_, f)
        return make(a * c_ + f.r * b * d, a * d + b * c_, f)

    __rmul__ = __mul__

    def inverse(self):
        n = self.a * self.a - self.field.r * self.b * self.b
        return make(self.a / n, -self.b / n, self.field)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return make(self.a / other, self.b / other, self.field)
        if not isinstance(other, QuadNumber):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Fraction(1), self
        while n:
            if n & 1:
                result = base * result
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadNumber):
            if other.field == self.field:
                return self.a == other.a and self.b == other.b
            try:
                return (self - other) == 0
            except FieldMismatch:
                return False
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.field))

    def __bool__(self):
        return True

    # -- order (real towers only) ---------------------------------------
    def __lt__(self, other):
        return sign(self - other) < 0

    def __le__(self, other):
        return sign(self - other) <= 0

    def __gt__(self, other):
        return sign(self - other) > 0

    def __ge__(self, other):
        return sign(self - other) >= 0

    def __abs__(self):
        return -self if sign(self) < 0 else self

    def __repr__(self):
        return f"QuadNumber({scalar_str(self)})"

    def __str__(self):
        return scalar_str(self)


def sign(x) -> int:
    """Exact sign of a real scalar."""
    if not isinstance(x, QuadNumber):
        return (x > 0) - (x < 0)
    if x.field.r < 0:
        raise ValueError(f"sign of non-real element {x}")
    sa, sb = sign(x.a), sign(x.b)
    if sa == 0 or sa == sb:
        return sb
    d = sign(x.a * x.a - x.field.r * x.b * x.b)
    return sa * d


def is_real(x) -> bool:
    f = field_of(x)
    return f is None or f.is_real


def is_rational(x) -> bool:
    return not isinstance(x, QuadNumber)


def complex_conj(x):
    """Complex conjugation (identity on real towers)."""
    if not isinstance(x, QuadNumber):
        return x
    if x.field.r < 0:
        return make(complex_conj(x.a), -complex_conj(x.b), x.field)
    return make(complex_conj(x.a), complex_conj(x.b), x.field)


def real_imag(x):
    """Split ``x`` as ``re + i*im`` when its imaginary radicand is -1."""
    if not isinstance(x, QuadNumber) or x.field.r > 0:
        return x, Fraction(0)
    if x.field.r != -1:
        raise FieldMismatch("real/imag split needs sqrt(-1) at the top of the tower")
    return x.a, x.b


def sqrt_in(x, f):
    """A square root of ``x`` inside field ``f``, or None."""
    if x == 0:
        return Fraction(0)
    if f is None:
        if isinstance(x, QuadNumber):
            return None
        if x < 0:
            return None
        n, d = x.numerator, x.denominator
        rn, rd = isqrt(n), isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None
    a, b = _components(x, f)
    if b == 0:
        y = sqrt_in(a, f.base)
        if y is not None:
            return y
        e = sqrt_in(a / f.r, f.base)
        if e is not None:
            return make(Fraction(0), e, f)
        return None
    s = sqrt_in(a * a - f.r * b * b, f.base)
    if s is None:
        return None
    for cand in ((a + s) / (2 * f.r), (a - s) / (2 * f.r)):
        e = sqrt_in(cand, f.base)
        if e is not None and e != 0:
            return make(b / (2 * e), e, f)
    return None


def adjoin_sqrt(x, field=None):
    """Return ``(F, y)`` with ``y*y == x`` and ``F`` containing ``field``.

    Adjoins at most one new radicand; raises NeedsExtension when the square
    root of a non-rational element is not already present.
    """
    field = join_fields(field, field_of(x))
    y = sqrt_in(x, field)
    if y is not None:
        return field, y
    if isinstance(x, QuadNumber):
        raise NeedsExtension(
            "square root of an irrational element", radicand=scalar_str(x)
        )
    r = squarefree_part(x)
    new = join_fields(field, QuadField(None, r))
    y = sqrt_in(x, new)
    if y is None:  # pragma: no cover - guarded by construction
        raise NeedsExtension("square root not representable", radicand=str(x))
    return new, y


def height(x) -> int:
    """Max absolute numerator/denominator over all rational components."""
    if isinstance(x, QuadNumber):
        return max(height(x.a), height(x.b))
    x = Fraction(x)
    return max(abs(x.numerator), x.denominator)


def rational_components(x) -> list[Fraction]:
    if isinstance(x, QuadNumber):
        return rational_components(x.a) + rational_components(x.b)
    return [Fraction(x)]


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def scalar_str(x) -> str:
    """Canonical text: ``a + b*sqrt(r)``.  ``sqrt(-1)`` prints as ``i``."""
    if not isinstance(x, QuadNumber):
        return _frac_str(Fraction(x))
    gen = "i" if x.field.r == -1 else f"sqrt({x.field.r})"
    b = x.b
    if b == 1:
        tail = gen
    elif b == -1:
        tail = "-" + gen
    else:
        bs = scalar_str(b)
        if isinstance(b, QuadNumber):
            bs = f"({bs})"
        tail = f"{bs}*{gen}"
    if x.a == 0:
        return tail
    sep = "" if tail.startswith("-") else "+"
    return f"{scalar_str(x.a)}{sep}{tail}"


def is_simple_scalar_str(x) -> bool:
    """True when the printed scalar needs no parentheses in a product."""
    return not isinstance(x, QuadNumber) or x.a == 0
