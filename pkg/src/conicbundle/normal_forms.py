"""Projective standardization of trinodal quartics and the two coefficient templates.

``F1``: ``eps*v^2*w^2 - a1*v^2*z^2 - a2*w^2*z^2 + v*w*z*(b*v + c*w + d*z)``
(three real nodes at the coordinate points).

``F2``: ``eps*(v^2+w^2)^2 + (a1*v*z + a2*w*z)*(v^2+w^2) + b*v^2*z^2 + c*w^2*z^2 + d*v*w*z^2``
(real node at ``[0:0:1]``, conjugate nodes at ``[+-i:1:0]``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra.mpoly import MPoly
from .algebra.ratfunc import substitute
from .algebra.scalars import (
    QuadNumber,
    adjoin_sqrt,
    complex_conj,
    is_real,
    scalar_str,
    sign,
    to_scalar,
)
from .curves import NODE, PlaneCurve, curve_profile, det3
from .errors import CollinearNodes, NeedsExtension, PrecondViolated, TemplateMismatch

F1, F2 = "F1", "F2"
_ZERO, _ONE = Fraction(0), Fraction(1)


# ---------------------------------------------------------------------------
# 3x3 matrices over scalars


def mat_mul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(3)), _ZERO) for j in range(3)] for i in range(3)]


def mat_vec(A, x):
    return [sum((A[i][k] * x[k] for k in range(3)), _ZERO) for i in range(3)]


def mat_inv(A):
    d = det3(A)
    if d == 0:
        raise ValueError("singular matrix")
    adj = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != j]
            c = [k for k in range(3) if k != i]
            minor = A[r[0]][c[0]] * A[r[1]][c[1]] - A[r[0]][c[1]] * A[r[1]][c[0]]
            adj[i][j] = minor if (i + j) % 2 == 0 else -minor
    return [[adj[i][j] / d for j in range(3)] for i in range(3)]


IDENTITY = [[_ONE if i == j else _ZERO for j in range(3)] for i in range(3)]


@dataclass
class ProjChange:
    """``matrix`` sends old coordinates to new ones: ``p_new = matrix * p_old``."""

    matrix: list
    inverse: list = None

    def __post_init__(self):
        self.matrix = [[to_scalar(x) for x in row] for row in self.matrix]
        if det3(self.matrix) == 0:
            raise ValueError("projective change must be invertible")
        if self.inverse is None:
            self.inverse = mat_inv(self.matrix)
        assert mat_mul(self.matrix, self.inverse) == IDENTITY

    def is_identity(self):
        return self.matrix == IDENTITY

    def apply_point(self, p):
        return mat_vec(self.matrix, p)

    def transform_poly(self, F: MPoly) -> MPoly:
        """``F'(p_new) = F(inverse * p_new)``."""
        vars = F.vars
        gens = MPoly.gens(vars)
        binds = {}
        for i, name in enumerate(vars):
            binds[name] = sum((gens[j] * self.inverse[i][j] for j in range(3)), MPoly.zero(vars))
        return substitute(F, binds, vars).as_poly()

    def to_dict(self):
        return {
            "matrix": [[scalar_str(x) for x in row] for row in self.matrix],
            "inverse": [[scalar_str(x) for x in row] for row in self.inverse],
        }


@dataclass
class NormalForm:
    variant: str
    epsilon: int
    a1: object
    a2: object
    b: object
    c: object
    d: object
    change: ProjChange = None
    scale: object = _ONE

    def __post_init__(self):
        self.epsilon = int(self.epsilon)
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be 1 or -1")
        for name in ("a1", "a2", "b", "c", "d", "scale"):
            setattr(self, name, to_scalar(getattr(self, name)))

    def coefficients(self):
        return (self.epsilon, self.a1, self.a2, self.b, self.c, self.d)

    def polynomial(self, vars=("v", "w", "z")):
        return template(self.variant, *self.coefficients(), vars=vars)

    def to_dict(self):
        return {
            "variant": self.variant,
            "epsilon": self.epsilon,
            "a1": scalar_str(self.a1),
            "a2": scalar_str(self.a2),
            "b": scalar_str(self.b),
            "c": scalar_str(self.c),
            "d": scalar_str(self.d),
            "scale": scalar_str(self.scale),
            "change": self.change.to_dict() if self.change is not None else None,
            "template": self.polynomial().to_str(),
        }


def template(variant, eps, a1, a2, b, c, d, vars=("v", "w", "z")) -> MPoly:
    v, w, z = MPoly.gens(vars)
    if variant == F1:
        return (
            v * v * w * w * eps
            - v * v * z * z * a1
            - w * w * z * z * a2
            + v * w * z * (v * b + w * c + z * d)
        )
    if variant == F2:
        s = v * v + w * w
        return (
            s * s * eps
            + (v * z * a1 + w * z * a2) * s
            + v * v * z * z * b
            + w * w * z * z * c
            + v * w * z * z * d
        )
    raise ValueError(f"unknown variant {variant!r}")


# ---------------------------------------------------------------------------
# standardization


def _lex_key(p):
    return tuple(_SortKey(c) for c in p)


class _SortKey:
    __slots__ = ("x",)

    def __init__(self, x):
        self.x = x

    def __lt__(self, other):
        return sign(self.x - other.x) < 0

    def __eq__(self, other):
        return self.x == other.x


def _real_case(nodes):
    pts = [list(n.coordinates) for n in nodes]
    basis = [[_ONE if i == j else _ZERO for i in range(3)] for j in range(3)]
    assigned = [None] * 3
    rest = []
    for p in pts:
        for j in range(3):
            if assigned[j] is None and p == basis[j]:
                assigned[j] = p
                break
        else:
            rest.append(p)
    rest.sort(key=_lex_key)
    for j in range(3):
        if assigned[j] is None:
            assigned[j] = rest.pop(0)
    M = [[assigned[j][i] for j in range(3)] for i in range(3)]  # columns are nodes
    return mat_inv(M), M


def _cross(a, b):
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def _imag_coeff(x):
    """The real number ``y`` with ``x = y * sqrt(r)`` for purely imaginary ``x``."""
    if x == 0:
        return _ZERO
    if not isinstance(x, QuadNumber) or x.field.r > 0 or x.a != 0:
        raise ValueError("expected a purely imaginary scalar")
    return x.b


def _conjugate_case(nodes):
    real = [n for n in nodes if n.is_real]
    pair = [n for n in nodes if not n.is_real]
    P0 = list(real[0].coordinates)
    P = list(pair[0].coordinates)
    Pb = [complex_conj(c) for c in P]
    ell = _cross(P, Pb)  # purely imaginary multiple of a real line
    ell = [_imag_coeff(c) for c in ell]
    val = sum((l * p for l, p in zip(ell, P0)), _ZERO)
    zrow = [l / val for l in ell]
    # kernel basis of P0 as linear forms
    k = max(i for i in range(3) if P0[i] != 0)
    others = [i for i in range(3) if i != k]
    forms = []
    for j in others:
        f = [_ZERO] * 3
        f[j] = _ONE
        f[k] = -P0[j] / P0[k]
        forms.append(f)
    alpha, beta = forms

    def ev(f, p):
        return sum((a * b for a, b in zip(f, p)), _ZERO)

    rho = ev(alpha, P) / ev(beta, P)
    mu = (rho + complex_conj(rho)) / 2
    nu = rho * complex_conj(rho) - mu * mu
    if not is_real(mu) or not is_real(nu) or sign(nu) <= 0:
        raise NeedsExtension("conjugate nodes are not in the expected position")
    if isinstance(nu, QuadNumber):
        field = nu.field
    else:
        field = None
    try:
        _, s = adjoin_sqrt(nu, field)
    except NeedsExtension as e:
        raise NeedsExtension("binary form of the conjugate pair needs a second square root", **e.payload) from e
    vrow = [a - mu * b for a, b in zip(alpha, beta)]
    wrow = [s * b for b in beta]
    return [vrow, wrow, zrow]


def standardize(C: PlaneCurve, profile=None):
    """Projective change putting the three nodes in standard position."""
    if profile is None:
        profile = curve_profile(C)
    nodes = profile.nodes
    if len(nodes) != 3 or any(n.kind != NODE for n in nodes):
        raise PrecondViolated("standardization needs exactly three nodes", nodes=len(nodes))
    if profile.collinear_nodes:
        raise CollinearNodes("the three nodes are collinear")
    if profile.real_node_count == 3:
        T, _ = _real_case(nodes)
    elif profile.real_node_count == 1:
        T = _conjugate_case(nodes)
    else:  # pragma: no cover - three nodes, one real at least
        raise PrecondViolated("unexpected real node count", real=profile.real_node_count)
    change = ProjChange(T)
    F2_ = change.transform_poly(C.F)
    return change, PlaneCurve(F2_)


_F1_MONOS = {(2, 2, 0), (2, 0, 2), (0, 2, 2), (2, 1, 1), (1, 2, 1), (1, 1, 2)}


def _coeff(F, e):
    return F.coeff(e)


def extract_normal_form(C: PlaneCurve, change=None, variant=None) -> NormalForm:
    """Match a standardized quartic against the F1 or F2 template."""
    F = C.F
    if C.degree != 4:
        raise TemplateMismatch("normal forms are for quartics", degree=C.degree)
    if variant is None:
        variant = F1 if set(F.terms) <= _F1_MONOS else F2
    if variant == F1:
        lead = _coeff(F, (2, 2, 0))
        if lead == 0:
            raise TemplateMismatch("coefficient of v^2*w^2 vanishes")
        k = abs(lead) if not isinstance(lead, QuadNumber) else (lead if sign(lead) > 0 else -lead)
        eps = sign(lead)
        a1 = -_coeff(F, (2, 0, 2)) / k
        a2 = -_coeff(F, (0, 2, 2)) / k
        b = _coeff(F, (2, 1, 1)) / k
        c = _coeff(F, (1, 2, 1)) / k
        d = _coeff(F, (1, 1, 2)) / k
    else:
        lead = _coeff(F, (4, 0, 0))
        if lead == 0:
            raise TemplateMismatch("coefficient of v^4 vanishes")
        k = lead if sign(lead) > 0 else -lead
        eps = sign(lead)
        a1 = _coeff(F, (3, 0, 1)) / k
        a2 = _coeff(F, (0, 3, 1)) / k
        b = _coeff(F, (2, 0, 2)) / k
        c = _coeff(F, (0, 2, 2)) / k
        d = _coeff(F, (1, 1, 2)) / k
    nf = NormalForm(variant, eps, a1, a2, b, c, d, change, k)
    residual = F - nf.polynomial(F.vars).scale(k)
    if not residual.is_zero():
        raise TemplateMismatch(
            "quartic does not match the template", variant=variant, residual=residual.to_str()
        )
    return nf


def normal_form_of(C: PlaneCurve, profile=None):
    change, Cs = standardize(C, profile)
    return extract_normal_form(Cs, change), Cs
