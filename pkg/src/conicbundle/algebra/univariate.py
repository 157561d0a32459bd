"""Univariate tools: dense arithmetic, Sturm chains, factoring, sums of two squares.

Dense polynomials are plain lists of scalars, lowest degree first, with no
trailing zeros.  The public functions take and return :class:`MPoly` values
in a single free variable.
"""

from __future__ import annotations

from fractions import Fraction

import sympy
from sympy.solvers.diophantine.diophantine import sum_of_squares as _sympy_sos

from ..errors import (
    DegreeTooLarge,
    NeedsExtension,
    NotNonnegative,
    UnsupportedField,
    VariableMismatch,
)
from .mpoly import MPoly
from .scalars import (
    GAUSSIAN,
    QuadField,
    QuadNumber,
    field_of,
    is_real,
    join_fields,
    real_imag,
    scalar_str,
    sign,
    sqrt_in,
    squarefree_part,
    to_scalar,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)

MAX_EXTENSION_DEGREE = 8
MAX_RATIONAL_DEGREE = 64

# ---------------------------------------------------------------------------
# dense helpers


def dup_strip(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def dup_degree(p):
    return len(p) - 1


def dup_add(p, q):
    n = max(len(p), len(q))
    return dup_strip([(p[i] if i < len(p) else _ZERO) + (q[i] if i < len(q) else _ZERO) for i in range(n)])


def dup_neg(p):
    return [-c for c in p]


def dup_sub(p, q):
    return dup_add(p, dup_neg(q))


def dup_scale(p, c):
    if c == 0:
        return []
    return [c * a for a in p]


def dup_mul(p, q):
    if not p or not q:
        return []
    out = [_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return dup_strip(out)


def dup_pow(p, n):
    out = [_ONE]
    for _ in range(n):
        out = dup_mul(out, p)
    return out


def dup_divmod(p, q):
    q = dup_strip(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    r = dup_strip(p)
    dq = len(q) - 1
    inv = 1 / q[-1]
    quo = [_ZERO] * max(len(r) - dq, 0)
    while len(r) - 1 >= dq and r:
        k = len(r) - 1 - dq
        c = r[-1] * inv
        quo[k] = c
        for i, b in enumerate(q):
            r[i + k] -= c * b
        r = dup_strip(r[:-1]) if r[-1] == 0 else dup_strip(r)
    return dup_strip(quo), r


def dup_rem(p, q):
    return dup_divmod(p, q)[1]


def dup_monic(p):
    if not p:
        return p
    inv = 1 / p[-1]
    return [c * inv for c in p]


def dup_gcd(p, q):
    p, q = dup_strip(p), dup_strip(q)
    while q:
        p, q = q, dup_rem(p, q)
    return dup_monic(p)


def dup_diff(p):
    return dup_strip([c * i for i, c in enumerate(p)][1:])


def dup_eval(p, x):
    acc = _ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def dup_sqf_part(p):
    p = dup_strip(p)
    if len(p) <= 1:
        return dup_monic(p)
    g = dup_gcd(p, dup_diff(p))
    return dup_monic(dup_divmod(p, g)[0])


def dup_conj(p):
    from .scalars import complex_conj

    return [complex_conj(c) for c in p]


# ---------------------------------------------------------------------------
# MPoly <-> dense


def univariate_var(p: MPoly, var=None):
    """The single free variable of ``p`` (``var`` if given, or the first var)."""
    fv = p.free_vars()
    if var is not None:
        if any(v != var for v in fv):
            raise VariableMismatch(f"polynomial is not univariate in {var!r}")
        return var
    if len(fv) > 1:
        raise VariableMismatch(f"polynomial in {fv} is not univariate")
    return fv[0] if fv else (p.vars[0] if p.vars else None)


def to_dense(p: MPoly, var=None):
    v = univariate_var(p, var)
    if v is None:
        return [p.constant_value()] if p.terms else []
    return p.to_univariate(v)


def from_dense(coeffs, var, vars):
    return MPoly.from_univariate(dup_strip(coeffs), var, vars)


# ---------------------------------------------------------------------------
# Sturm chains


def sturm_chain(p):
    p = dup_strip(p)
    chain = [p, dup_diff(p)]
    while chain[-1]:
        r = dup_rem(chain[-2], chain[-1])
        chain.append(dup_neg(r))
    chain.pop()
    return chain


def _sign_at(p, x):
    if x is None or isinstance(x, str):
        # +inf / -inf
        if not p:
            return 0
        s = sign(p[-1])
        if x == "-inf" and (len(p) - 1) % 2:
            s = -s
        return s
    return sign(dup_eval(p, x))


def _variations(chain, x):
    signs = [s for s in (_sign_at(q, x) for q in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_dense(p, lo=None, hi=None):
    """Distinct real roots of ``p`` in ``[lo, hi]`` (None means infinite)."""
    p = dup_strip(p)
    if len(p) <= 1:
        return 0
    sq = dup_sqf_part(p)
    chain = sturm_chain(sq)
    a = "-inf" if lo is None else to_scalar(lo)
    b = "+inf" if hi is None else to_scalar(hi)
    n = _variations(chain, a) - _variations(chain, b)
    if lo is not None and dup_eval(sq, a) == 0:
        n += 1
    return n


def sturm_real_roots(p: MPoly, interval=None) -> int:
    """Number of distinct real roots of a univariate polynomial.

    ``interval`` is ``None`` for the whole line or a closed ``(lo, hi)`` pair
    where either end may be None.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    if p.is_constant():
        return 0
    d = to_dense(p)
    if any(not is_real(c) for c in d):
        raise ValueError("Sturm counting needs real coefficients")
    lo, hi = interval if interval is not None else (None, None)
    return count_roots_dense(d, lo, hi)


def root_bound(p):
    """Cauchy bound: every real root has absolute value below it (rational)."""
    p = dup_strip(p)
    lc = p[-1]
    m = _ZERO
    for c in p[:-1]:
        q = abs(Fraction(_approx(c / lc)))
        m = max(m, q)
    return Fraction(int(m) + 2)


def _approx(x):
    """A rational upper bound on ``|x|`` for a real tower element."""
    if not isinstance(x, QuadNumber):
        return abs(Fraction(x))
    r = Fraction(x.field.r)
    from math import isqrt

    s = Fraction(isqrt(int(r)) + 1)
    return _approx(x.a) + _approx(x.b) * s


def isolate_real_roots(p):
    """Disjoint rational intervals ``(lo, hi)``, each holding one real root.

    Endpoints are never roots; intervals come in increasing order.
    """
    sq = dup_sqf_part(dup_strip(p))
    if len(sq) <= 1:
        return []
    chain = sturm_chain(sq)
    B = root_bound(sq)

    def count(a, b):
        return _variations(chain, a) - _variations(chain, b)

    def nudge(a, b):
        x, step = (a + b) / 2, (b - a) / 8
        while dup_eval(sq, x) == 0:
            x += step
            step /= 2
        return x

    out = []
    stack = [(-B, B)]
    while stack:
        a, b = stack.pop()
        n = count(a, b)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = nudge(a, b)
        stack.append((m, b))
        stack.append((a, m))
    out.sort()
    return out


def negative_witness(p):
    """A rational point where ``p`` is negative, or None."""
    p = dup_strip(p)
    if not p:
        return None
    pts = [Fraction(0), Fraction(1), Fraction(-1)]
    for a, b in isolate_real_roots(p):
        pts.extend([a, b])
    B = root_bound(p) if len(p) > 1 else Fraction(1)
    pts.extend([B, -B])
    for x in pts:
        if sign(dup_eval(p, x)) < 0:
            return x
    return None


# ---------------------------------------------------------------------------
# sympy bridge (factoring only)

_X = sympy.Symbol("x")


def _to_sympy(c):
    if isinstance(c, QuadNumber):
        g = sympy.I if c.field.r == -1 else sympy.sqrt(c.field.r)
        return _to_sympy(c.a) + _to_sympy(c.b) * g
    c = Fraction(c)
    return sympy.Rational(c.numerator, c.denominator)


def _from_sympy(e, field):
    if e.is_Rational:
        return Fraction(int(e.p), int(e.q))
    if e is sympy.I:
        y = sqrt_in(Fraction(-1), field)
        if y is None:
            raise UnsupportedField("imaginary unit outside the working field")
        return y
    if e.is_Add:
        acc = _ZERO
        for t in e.args:
            acc = acc + _from_sympy(t, field)
        return acc
    if e.is_Mul:
        acc = _ONE
        for t in e.args:
            acc = acc * _from_sympy(t, field)
        return acc
    if e.is_Pow:
        base, ex = e.args
        if ex == sympy.Rational(1, 2) and base.is_Rational:
            y = sqrt_in(_from_sympy(base, None), field)
            if y is None:
                raise UnsupportedField(f"sqrt({base}) outside the working field")
            return y
        if ex == sympy.Rational(-1, 2) and base.is_Rational:
            return 1 / _from_sympy(sympy.sqrt(base), field)
        if ex.is_Integer:
            b = _from_sympy(base, field)
            n = int(ex)
            return b ** n if n >= 0 else 1 / (b ** (-n))
    raise UnsupportedField(f"cannot convert {e} into the scalar tower")


def _field_from_radicands(radicands, gaussian):
    f = None
    for r in radicands:
        f = join_fields(f, QuadField(None, r))
    if gaussian:
        f = QuadField(f, -1) if f is None or f.is_real else f
    return f


def factor_dense(p, radicands=(), gaussian=False):
    """Factor a dense polynomial over ``Q(sqrt(r) for r in radicands)(i?)``.

    Returns ``(content, [(monic dense factor, multiplicity), ...])``.
    """
    p = dup_strip(p)
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    deg = len(p) - 1
    ext = list(radicands) or gaussian
    if ext and deg > MAX_EXTENSION_DEGREE:
        raise DegreeTooLarge(f"degree {deg} exceeds {MAX_EXTENSION_DEGREE} over an extension", degree=deg)
    if deg > MAX_RATIONAL_DEGREE:
        raise DegreeTooLarge(f"degree {deg} exceeds {MAX_RATIONAL_DEGREE}", degree=deg)
    field = _field_from_radicands(radicands, gaussian)
    for c in p:
        g = field_of(c)
        if g is not None:
            field = join_fields(field, g)
    if deg == 0:
        return p[0], []
    expr = sum(_to_sympy(c) * _X ** i for i, c in enumerate(p))
    extension = [sympy.sqrt(r) for r in (field.radicands() if field else []) if r > 0]
    if field is not None and any(r < 0 for r in field.radicands()):
        extension.append(sympy.I)
    if extension:
        content, facs = sympy.factor_list(expr, _X, extension=extension)
    else:
        content, facs = sympy.factor_list(expr, _X)
    content = _from_sympy(sympy.nsimplify(content) if not content.is_Rational else content, field)
    out = []
    for f, m in facs:
        coeffs = sympy.Poly(f, _X).all_coeffs()[::-1]
        d = [_from_sympy(sympy.expand(c), field) for c in coeffs]
        lc = d[-1]
        content = content * lc ** m
        out.append((dup_monic(d), int(m)))
    out.sort(key=lambda t: (len(t[0]), [scalar_str(c) for c in t[0]]))
    return content, out


def factor_univariate(p: MPoly, field="rationals"):
    """Irreducible factorization of a univariate polynomial.

    ``field`` is ``"rationals"`` or ``"gaussian_rationals"``.  Returns
    ``(content, [(monic factor, multiplicity), ...])``.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if field not in ("rationals", "gaussian_rationals"):
        raise UnsupportedField(f"unsupported factoring field {field!r}")
    var = univariate_var(p)
    d = to_dense(p)
    gaussian = field == "gaussian_rationals"
    if gaussian and len(d) - 1 > MAX_EXTENSION_DEGREE:
        raise DegreeTooLarge(f"degree {len(d) - 1} exceeds {MAX_EXTENSION_DEGREE}", degree=len(d) - 1)
    content, facs = factor_dense(d, gaussian=gaussian)
    if var is None:
        return content, []
    return content, [(from_dense(f, var, p.vars), m) for f, m in facs]


# ---------------------------------------------------------------------------
# sums of two squares


def _rational_sos(c: Fraction):
    """``(a, b)`` rationals with ``a^2 + b^2 = c``, or None."""
    n, d = c.numerator * c.denominator, c.denominator
    try:
        sols = list(_sympy_sos(n, 2, zeros=True))
    except ValueError:
        sols = []
    if not sols:
        return None
    a, b = sorted(sols[0], reverse=True)
    return Fraction(int(a), d), Fraction(int(b), d)


def constant_sos(c, field):
    """Write a positive scalar as ``alpha^2 + beta^2`` over ``field``.

    Returns ``(alpha, beta, field_used)`` adjoining at most one square root.
    """
    c = to_scalar(c)
    if sign(c) <= 0:
        raise NotNonnegative("constant is not positive", witness=scalar_str(c))
    s = sqrt_in(c, field)
    if s is not None:
        return s, _ZERO, field
    if not isinstance(c, QuadNumber):
        ab = _rational_sos(c)
        if ab is not None:
            return ab[0], ab[1], field
        if field is not None:
            for r in field.radicands():
                # c = a^2 + r*b^2 with rational a, b
                for k in range(1, 13):
                    for j in range(1, 31):
                        b = Fraction(j, k)
                        rest = c - r * b * b
                        if rest < 0:
                            break
                        a = sqrt_in(rest, None)
                        if a is not None:
                            return a, b * QuadField(None, r).gen(), field
    if field is None:
        if isinstance(c, QuadNumber):
            raise NeedsExtension("constant needs a nested square root", constant=scalar_str(c))
        new = QuadField(None, squarefree_part(c))
        return sqrt_in(c, new), _ZERO, new
    raise NeedsExtension("constant is not a sum of two squares in the allowed field",
                         constant=scalar_str(c), field=repr(field))


def _split_conjugate(f, radicands):
    """Find ``g`` over ``Q(sqrt r)(i)`` with ``g * conj(g) == f``; None if impossible."""
    if len(f) == 3:
        # (w + b/2)^2 + delta
        b, c = f[1] / f[2], f[0] / f[2]
        delta = c - b * b / 4
        field = _field_from_radicands(radicands, False)
        s = sqrt_in(delta, field)
        if s is None:
            return None
        i = QuadField(field, -1).gen()
        return [b / 2 + i * s, _ONE]
    try:
        _, facs = factor_dense(f, radicands, gaussian=True)
    except DegreeTooLarge:
        return None
    pool = []
    for g, m in facs:
        pool.extend([tuple(g)] * m)
    chosen = []
    while pool:
        g = pool.pop(0)
        cg = tuple(dup_conj(list(g)))
        if cg == g or cg not in pool:
            return None
        pool.remove(cg)
        chosen.append(list(g))
    out = [_ONE]
    for g in chosen:
        out = dup_mul(out, g)
    return out


def _candidate_radicands(f):
    cands = []

    def add(q):
        if q != 0:
            r = squarefree_part(abs(q))
            if r > 1 and r not in cands:
                cands.append(r)

    if len(f) == 3:
        b, c = f[1] / f[2], f[0] / f[2]
        add(c - b * b / 4)
    add(f[0])
    fs = sympy.Poly(sum(_to_sympy(c) * _X ** i for i, c in enumerate(f)), _X)
    add(Fraction(str(sympy.discriminant(fs))))
    for r in (2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29, 30):
        if r not in cands:
            cands.append(r)
    return cands


def _sos_core(p, var, vars, extensions=True):
    if any(field_of(c) is not None for c in p):
        raise UnsupportedField("sum_of_two_squares expects rational coefficients")
    content, facs = factor_dense(p)
    if content < 0 or (len(p) - 1) % 2:
        w = negative_witness(p)
        raise NotNonnegative("polynomial takes negative values", witness=scalar_str(w))
    odd = []
    for f, m in facs:
        if m % 2 and count_roots_dense(f) > 0:
            w = negative_witness(p)
            raise NotNonnegative("polynomial takes negative values", witness=scalar_str(w))
        if m % 2:
            odd.append(f)

    def attempt(radicands):
        G = [_ONE]
        for f, m in facs:
            G = dup_mul(G, dup_pow(f, m // 2))
        for f in odd:
            g = _split_conjugate(f, radicands)
            if g is None:
                return None
            G = dup_mul(G, g)
        return G

    G = attempt(())
    radicand_sets = [()]
    if G is None and extensions:
        tried = set()
        for f in odd:
            for r in _candidate_radicands(f):
                if r in tried:
                    continue
                tried.add(r)
                G = attempt((r,))
                if G is not None:
                    radicand_sets = [(r,)]
                    break
            if G is not None:
                break
    if G is None:
        bad = [f for f in odd if _split_conjugate(f, ()) is None]
        raise NeedsExtension(
            "no decomposition over one real quadratic extension",
            factors=[str(from_dense(f, var, vars)) for f in bad],
        )
    field = _field_from_radicands(radicand_sets[0], False)
    alpha, beta, field = constant_sos(content, field)
    i = QuadField(field, -1).gen()
    G = dup_scale(G, alpha + i * beta)
    A = dup_strip([real_imag(c)[0] for c in G])
    B = dup_strip([real_imag(c)[1] for c in G])
    return A, B, field


def sum_of_two_squares(p: MPoly, extensions=True):
    """``(A, B, field)`` with ``A^2 + B^2 == p`` exactly.

    ``field`` is None for the rationals or the real quadratic field used;
    with ``extensions=False`` only rational decompositions are sought.
    Raises NotNonnegative with a witness, or NeedsExtension.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial is excluded")
    var = univariate_var(p)
    d = to_dense(p)
    if var is None:
        var = p.vars[0] if p.vars else "w"
    A, B, field = _sos_core(d, var, p.vars if p.vars else (var,), extensions)
    if A and sign(A[-1]) < 0:
        A = dup_neg(A)
    if B and sign(B[-1]) < 0:
        B = dup_neg(B)
    if (len(B), B[::-1]) > (len(A), A[::-1]) if all(field_of(c) is None for c in A + B) else len(B) > len(A):
        A, B = B, A
    vars = p.vars if p.vars else (var,)
    Ap, Bp = from_dense(A, var, vars), from_dense(B, var, vars)
    check = Ap * Ap + Bp * Bp - p.with_vars(vars)
    if not check.is_zero():  # pragma: no cover - defensive
        raise AssertionError("sum of two squares failed its exact check")
    return Ap, Bp, field
