"""Valuations along a component of a special fibre and tame residues of mod-2 symbols.

The family is ``x^2 + y^2 + z^2 = (u - 1)(u^2 + t) prod_{j<=e} (j u^2 + 1)``
over real Puiseux series.  With ``t = s^(4m)`` it is paired with the
auxiliary curve ``w^2 = (v + 1)(v^2 + s^(4m)) prod (j v^2 + 1)``.  After the
scaling below, the fibre ``s = 0`` splits into two components.  Along the one
where ``w' = v'`` the symbol ``(u + v, -1, -1)`` has residue ``(-1, -1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.mpoly import MPoly, divides, squarefree_decomposition
from .algebra.ratfunc import RatFunc, substitute
from .errors import IndeterminateValuation, UnsupportedSymbolShape

PASS, FAIL = "Pass", "Fail"
NOT_STABLY_RATIONAL_OVER_PUISEUX = "NotStablyRationalOverPuiseux"
UNDETERMINED = "Undetermined"

ORIGINAL_VARS = ("s", "u", "v", "w", "x", "y", "z")
SCALED_VARS = ("s", "u'", "v'", "w'", "x'", "y'", "z'")

# Facts used by the certificate that are cited, not machine-checked.
TRUSTED_LEVEL_FOUR = "level-four-residue-field"
TRUSTED_UNRAMIFIED = "class-is-unramified"
TRUSTED_CH0 = "nonvanishing-iff-not-universally-CH0-trivial"
TRUSTED_PUISEUX = "nonzero-over-each-root-field-implies-nonzero-over-union"
REQUIRED_TRUSTED = (TRUSTED_LEVEL_FOUR, TRUSTED_UNRAMIFIED, TRUSTED_CH0, TRUSTED_PUISEUX)

TRUSTED_TEXT = {
    TRUSTED_LEVEL_FOUR: "-1 is not a sum of two squares in R(D1): D1 is stably birational to the"
    " anisotropic real quadric of dimension 3, whose function field has level 4 (Pfister)",
    TRUSTED_UNRAMIFIED: "(u+v, -1, -1) is unramified over R on the product variety"
    " (external criterion for products of quadric and conic bundles)",
    TRUSTED_CH0: "nonvanishing of the unramified class is equivalent to the smooth projective"
    " models not being universally CH0-trivial (external criterion for products of quadric and conic bundles)",
    TRUSTED_PUISEUX: "a class nonzero over R((t^(1/4m)))(W) stays nonzero over the union field",
}


def _product(factors, vars):
    out = MPoly.one(vars)
    for f in factors:
        out = out * f
    return out


def systems(m: int, e: int):
    """The relation pairs before and after the scaling, as MPolys."""
    if m < 1 or e < 0:
        raise ValueError("need m >= 1 and e >= 0")
    V = ORIGINAL_VARS
    s, u, v, w, x, y, z = MPoly.gens(V)
    rhs_u = (u - 1) * (u * u + s ** (4 * m)) * _product([u * u * j + 1 for j in range(1, e + 1)], V)
    rhs_v = (v + 1) * (v * v + s ** (4 * m)) * _product([v * v * j + 1 for j in range(1, e + 1)], V)
    before = [x * x + y * y + z * z - rhs_u, w * w - rhs_v]

    W = SCALED_VARS
    s, u, v, w, x, y, z = MPoly.gens(W)
    rhs_u = (s ** (2 * m) * u - 1) * (u * u + 1) * _product(
        [s ** (4 * m) * u * u * j + 1 for j in range(1, e + 1)], W
    )
    rhs_v = (s ** (2 * m - 1) * v + 1) * (v * v + s * s) * _product(
        [s ** (4 * m - 2) * v * v * j + 1 for j in range(1, e + 1)], W
    )
    after = [x * x + y * y + z * z - rhs_u, w * w - rhs_v]
    return before, after


def default_scaling(m: int):
    """Exponent of ``s`` in each substitution ``x = s^k x'``."""
    return {"x": 2 * m, "y": 2 * m, "z": 2 * m, "u": 2 * m, "w": 2 * m - 1, "v": 2 * m - 1}


def _apply_scaling(p: MPoly, scaling):
    W = SCALED_VARS
    s = MPoly.var("s", W)
    binds = {"s": s}
    for name, k in scaling.items():
        binds[name] = s ** k * MPoly.var(name + "'", W)
    return substitute(p, binds, W).as_poly()


@dataclass
class ScalingCheck:
    status: str
    witness: str = None
    relation: int = None

    @property
    def passed(self):
        return self.status == PASS

    def to_dict(self):
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
            out["relation"] = self.relation
        return out


def check_scaling_identity(m: int, e: int, scaling=None) -> ScalingCheck:
    """Scaled first relation is ``s^(4m)`` times the new one, the second ``s^(4m-2)`` times."""
    scaling = default_scaling(m) if scaling is None else scaling
    before, after = systems(m, e)
    s = MPoly.var("s", SCALED_VARS)
    powers = (4 * m, 4 * m - 2)
    for i, (old, new, k) in enumerate(zip(before, after, powers)):
        diff = _apply_scaling(old, scaling) - s ** k * new
        if not diff.is_zero():
            return ScalingCheck(FAIL, diff.to_str(), i + 1)
    return ScalingCheck(PASS)


@dataclass
class DivisorSpec:
    vars: tuple
    ambient: list
    uniformizer: str
    component: MPoly
    residue_relations: list

    def check(self) -> bool:
        """At ``s = 0`` each relation is the quadric or a multiple of ``w'^2 - v'^2``."""
        W = self.vars
        s0 = [r.eval({self.uniformizer: 0}).with_vars(W) for r in self.ambient]
        v, w = MPoly.var("v'", W), MPoly.var("w'", W)
        both = self.component * (w + v)
        return s0[0] == self.residue_relations[1] and divides(both, s0[1])

    def to_dict(self):
        return {
            "vars": list(self.vars),
            "ambient_relations": [r.to_str() for r in self.ambient],
            "uniformizer": self.uniformizer,
            "component": self.component.to_str(),
            "residue_relations": [r.to_str() for r in self.residue_relations],
        }


def component_spec(m: int, e: int) -> DivisorSpec:
    """The component ``w' = v'`` of the fibre ``s = 0``."""
    _, after = systems(m, e)
    W = SCALED_VARS
    s, u, v, w, x, y, z = MPoly.gens(W)
    quadric = x * x + y * y + z * z + u * u + 1
    comp = w - v
    spec = DivisorSpec(W, after, "s", comp, [comp, quadric])
    assert spec.check()
    return spec


def _reduce_on_component(h: MPoly, spec: DivisorSpec) -> MPoly:
    """Normal form of ``h`` modulo ``s``, ``w' - v'`` and the quadric (monic in ``x'``)."""
    W = spec.vars
    r = h.eval({spec.uniformizer: 0}).with_vars(W)
    r = substitute(r, {"w'": MPoly.var("v'", W)}, W).as_poly()
    x = MPoly.var("x'", W)
    tail = x * x - spec.residue_relations[1]  # x'^2 == tail on the component
    coeffs = r.coeffs_in("x'")
    out = MPoly.zero(W)
    power = MPoly.one(W)  # (x'^2)^k reduced
    for k in range(0, max(coeffs, default=0) + 1, 2):
        for j in (k, k + 1):
            if j in coeffs:
                out = out + coeffs[j] * power * (x if j % 2 else MPoly.one(W))
        power = power * tail
    return out


def valuation_along(h: MPoly, spec: DivisorSpec) -> int:
    if h.is_zero():
        raise ValueError("the valuation of 0 is infinite")
    h = h.with_vars(spec.vars)
    i = spec.vars.index(spec.uniformizer)
    k = min(e[i] for e in h.terms)
    cof = MPoly(spec.vars, {e[:i] + (e[i] - k,) + e[i + 1:]: c for e, c in h.terms.items()})
    if _reduce_on_component(cof, spec).is_zero():
        raise IndeterminateValuation("the cofactor vanishes on the component", cofactor=cof.to_str())
    return k


def _square_class(p: MPoly):
    """``(sign, odd part)``: ``p`` up to nonzero real squares."""
    c, facs = squarefree_decomposition(p)
    odd = MPoly.one(p.vars)
    for g, k in facs:
        if k % 2:
            odd = odd * g
    return (1 if c > 0 else -1), odd


def _canonical_entry(f: RatFunc) -> RatFunc:
    sgn, odd = _square_class(f.num * f.den)
    return RatFunc.lift(odd.scale(Fraction(sgn)))


@dataclass
class SymbolTriple:
    raw: tuple
    entries: tuple = field(init=False)

    def __post_init__(self):
        raw = []
        for f in self.raw:
            if isinstance(f, MPoly):
                f = RatFunc.lift(f)
            if f.is_zero():
                raise ValueError("symbol entries must be nonzero")
            raw.append(f)
        if len(raw) != 3:
            raise ValueError("a symbol has three entries")
        self.raw = tuple(raw)
        self.entries = tuple(_canonical_entry(f) for f in raw)

    def to_dict(self):
        return {"entries": [f.to_str() for f in self.raw], "square_classes": [f.to_str() for f in self.entries]}


TRIVIAL = "trivial"
MINUS_ONE_MINUS_ONE = ("-1", "-1")


def tame_residue(sym: SymbolTriple, spec: DivisorSpec):
    """``(-1, -1)`` over the residue field when the first entry has odd valuation, else trivial."""
    for f in sym.raw[1:]:
        if not (f.num.is_constant() and f.den.is_constant()) or f.num.constant_value() / f.den.constant_value() != -1:
            raise UnsupportedSymbolShape("only symbols (f, -1, -1) are supported", entry=f.to_str())
    first = sym.entries[0]
    k = valuation_along(first.num, spec) - valuation_along(first.den, spec)
    return MINUS_ONE_MINUS_ONE if k % 2 else TRIVIAL


def rewritten_entry(m: int) -> MPoly:
    """``u + v`` after the scaling: ``s^(2m-1) (s u' + v')``."""
    W = SCALED_VARS
    s, u, v = MPoly.var("s", W), MPoly.var("u'", W), MPoly.var("v'", W)
    return s ** (2 * m - 1) * (s * u + v)


@dataclass
class ResidueCertificate:
    m: int
    e: int
    equ1_system: list
    equ2_system: list
    substitution: dict
    scaling_check: ScalingCheck
    divisor: DivisorSpec
    symbol: SymbolTriple
    valuation: int
    residue: object
    trusted_facts: list
    conclusion: str

    def to_dict(self):
        return {
            "m": self.m,
            "e": self.e,
            "equ1_system": [p.to_str() for p in self.equ1_system],
            "equ2_system": [p.to_str() for p in self.equ2_system],
            "substitution": {k: (f"s^{n}*{k}'" if n > 1 else f"s*{k}'") for k, n in self.substitution.items()},
            "scaling_check": self.scaling_check.to_dict(),
            "divisor": self.divisor.to_dict(),
            "symbol": self.symbol.to_dict(),
            "valuation": self.valuation,
            "residue": list(self.residue) if self.residue != TRIVIAL else TRIVIAL,
            "trusted_facts": [{"tag": t, "statement": TRUSTED_TEXT[t]} for t in self.trusted_facts],
            "conclusion": self.conclusion,
        }


def conclude(valuation, residue, trusted, m) -> str:
    """The conclusion is drawn only if every machine-checked and trusted ingredient is present."""
    if valuation == 2 * m - 1 and residue == MINUS_ONE_MINUS_ONE and all(t in trusted for t in REQUIRED_TRUSTED):
        return NOT_STABLY_RATIONAL_OVER_PUISEUX
    return UNDETERMINED


def build_certificate(m: int, e: int, trusted=REQUIRED_TRUSTED) -> ResidueCertificate:
    check = check_scaling_identity(m, e)
    before, after = systems(m, e)
    spec = component_spec(m, e)
    h = rewritten_entry(m)
    W = SCALED_VARS
    minus = RatFunc.lift(MPoly.const(-1, W))
    sym = SymbolTriple((RatFunc.lift(h), minus, minus))
    val = valuation_along(h, spec)
    res = tame_residue(sym, spec)
    trusted = list(trusted)
    conclusion = conclude(val, res, trusted, m) if check.passed else UNDETERMINED
    return ResidueCertificate(m, e, before, after, default_scaling(m), check, spec, sym, val, res,
                              trusted, conclusion)
