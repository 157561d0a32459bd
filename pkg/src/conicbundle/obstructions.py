"""Divisor classes on blow-ups of the plane and the verdict classifier.

Classes on ``S = Bl_r(P^2)`` are written ``(a; c_1, ..., c_r)`` meaning
``a*H + sum c_i*E_i``, with ``H`` the pullback of a line and ``E_i`` the
exceptional curves over the blown-up nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .curves import NODE, UNKNOWN, YES, CurveProfile
from .errors import (
    HypothesisUnverified,
    InvalidMultiplicity,
    PrecondViolated,
    UndecidedEffectivity,
)

EQ1, EQ2A, EQ2B = "Eq1", "Eq2a", "Eq2b"
FAMILIES = (EQ1, EQ2A, EQ2B)

RATIONAL = "Rational"
NOT_RATIONAL = "NotRational"
NOT_STABLY_RATIONAL = "NotStablyRational"
OPEN = "Open"

# Citation tags carried by verdicts.  They name the result being consumed,
# each of which is trusted rather than re-proved here.
CITE_QUARTIC = "quartic-rationality"
CITE_ADJOINT = "adjoint-class"
CITE_RIGIDITY = "superrigidity"
CITE_PUISEUX = "puiseux-nonrationality"
CITE_CONJECTURE = "all-degrees-conjecture"


@dataclass(frozen=True)
class DivisorClass:
    a: int
    c: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))

    @property
    def r(self):
        return len(self.c)

    def _check(self, other):
        if self.r != other.r:
            raise ValueError(f"classes live on different blow-ups ({self.r} vs {other.r})")

    def __add__(self, other):
        self._check(other)
        return DivisorClass(self.a + other.a, tuple(x + y for x, y in zip(self.c, other.c)))

    def __neg__(self):
        return DivisorClass(-self.a, tuple(-x for x in self.c))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return DivisorClass(k * self.a, tuple(k * x for x in self.c))

    def pushforward_degree(self):
        return self.a

    def pullback(self):
        """The same class pulled back along one more point blow-up."""
        return DivisorClass(self.a, self.c + (0,))

    def to_str(self):
        return f"({self.a}; {', '.join(map(str, self.c))})" if self.c else f"({self.a};)"

    def to_compact(self):
        """Like ``to_str`` but groups runs of equal coefficients, e.g. ``(0; 2x55)``."""
        if not self.c:
            return f"({self.a};)"
        runs = []
        for x in self.c:
            if runs and runs[-1][0] == x:
                runs[-1][1] += 1
            else:
                runs.append([x, 1])
        body = ", ".join(f"{x}x{n}" if n > 1 else str(x) for x, n in runs)
        return f"({self.a}; {body})"

    def to_dict(self):
        return {"a": self.a, "c": list(self.c), "text": self.to_compact()}


def is_effective(D: DivisorClass) -> bool:
    """Exact rule for classes whose exceptional coefficients are all nonnegative.

    Such a class is effective iff ``a >= 0``: a nonnegative ``a`` is realized
    by ``a`` pulled-back lines plus the exceptional curves, and the
    pushforward of an effective divisor to the plane has degree ``a``.
    """
    if any(x < 0 for x in D.c):
        raise UndecidedEffectivity(
            "effectivity is decided only for nonnegative exceptional coefficients", divisor=D.to_compact()
        )
    return D.a >= 0


def genus_zero_node_count(d: int) -> int:
    return (d - 1) * (d - 2) // 2


@dataclass
class SurfaceModel:
    """Blow-up of the plane in the ``r`` nodes of a curve of even degree ``d``."""

    d: int
    r: int

    def __post_init__(self):
        if self.d < 2 or self.d % 2:
            raise PrecondViolated("the curve degree must be even and at least 2", d=self.d)
        if self.r < 0:
            raise PrecondViolated("the number of nodes must be nonnegative", r=self.r)

    @classmethod
    def rational_nodal(cls, d: int):
        return cls(d, genus_zero_node_count(d))

    @property
    def K(self):
        return DivisorClass(-3, (1,) * self.r)

    @property
    def Delta(self):
        return DivisorClass(self.d, (-2,) * self.r)

    @property
    def L(self):
        """The class ``(d/2)H - E`` whose square is the class of the discriminant."""
        return DivisorClass(self.d // 2, (-1,) * self.r)

    def standard_model(self):
        return {
            "L": self.L.to_compact(),
            "bundle": "L^-1 + L^-1 + O",
            "equation": "x^2 - a*y^2 = sigma*z^2",
            "sigma_class": (2 * self.L).to_compact(),
        }

    def to_dict(self):
        return {"d": self.d, "r": self.r, "standard_model": self.standard_model()}


def canonical_and_delta(model: SurfaceModel):
    return model.K, model.Delta


def adjoint_class(model: SurfaceModel):
    """``4K + Delta`` and whether it is effective."""
    K, D = canonical_and_delta(model)
    cls = 4 * K + D
    return cls, is_effective(cls)


def blowup_transform(cls4KplusR: DivisorClass, a: int) -> DivisorClass:
    """``4K + R`` after one more point blow-up, where ``R`` picks up ``a*E``."""
    if a not in (-2, -1, 0):
        raise InvalidMultiplicity("the new exceptional coefficient of R must be -2, -1 or 0", a=a)
    return DivisorClass(cls4KplusR.a, cls4KplusR.c + (a + 4,))


# ---------------------------------------------------------------------------
# verdicts


@dataclass
class Verdict:
    status: str
    family: str
    degree: int
    citations: list = field(default_factory=list)
    construction: object = None  # CurveConstruction for Rational
    certificate: object = None  # adjoint data for NotRational
    residue_certificate: object = None  # ResidueCertificate for NotStablyRational
    field_marker: str = None
    notes: list = field(default_factory=list)
    hypotheses: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status == NOT_RATIONAL:
            cert = self.certificate or {}
            if not cert.get("effective"):
                raise ValueError("a NotRational verdict needs an effective adjoint class")
        if self.status == NOT_STABLY_RATIONAL and self.residue_certificate is None:
            raise ValueError("a NotStablyRational verdict needs a residue certificate")
        if self.status == RATIONAL:
            m = getattr(self.construction, "map", None)
            if m is None or not m.verified.passed:
                raise ValueError("a Rational verdict needs a map that verifies")

    def to_dict(self):
        out = {
            "status": self.status,
            "family": self.family,
            "degree": self.degree,
            "citations": list(self.citations),
            "notes": list(self.notes),
            "hypotheses": dict(self.hypotheses),
        }
        if self.construction is not None:
            out["construction"] = self.construction.to_dict()
        if self.certificate is not None:
            cert = dict(self.certificate)
            for key in ("adjoint", "K", "Delta", "conjectural_class"):
                if key in cert and isinstance(cert[key], DivisorClass):
                    cert[key] = cert[key].to_dict()
            if isinstance(cert.get("model"), SurfaceModel):
                cert["model"] = cert["model"].to_dict()
            out["certificate"] = cert
        if self.residue_certificate is not None:
            out["residue_certificate"] = self.residue_certificate.to_dict()
        if self.field_marker is not None:
            out["field"] = self.field_marker
        return out


def _normalize_family(family):
    table = {f.lower(): f for f in FAMILIES}
    key = str(family).lower()
    if key not in table:
        raise PrecondViolated("unknown equation family", family=family)
    return table[key]


def _hypotheses_for_quartic(profile: CurveProfile, family, asserted):
    """Record which hypotheses hold, which were asserted, and which are missing."""
    hyp = {}
    missing = []
    if profile.degree != 4:
        raise PrecondViolated("the curve degree does not match", degree=profile.degree)
    trinodal = profile.is_trinodal() and profile.irreducible != "No"
    hyp["trinodal"] = "verified" if trinodal else "failed"
    if not trinodal:
        raise HypothesisUnverified("the quartic is not an irreducible curve with three nodes",
                                   nodes=profile.node_count, genus=profile.genus)
    flags = {EQ2A: ("real_branch",), EQ2B: ("nonnegative_f",)}[family]
    for flag in flags:
        value = getattr(profile, flag)
        if value == YES:
            hyp[flag] = "verified"
        elif flag in asserted:
            hyp[flag] = "asserted"
        else:
            hyp[flag] = value
            missing.append(flag)
    if missing:
        raise HypothesisUnverified("required curve flags are not established", missing=missing, flags=hyp)
    return hyp


def classify(family, d, profile: CurveProfile = None, curve=None, r=None, asserted=(),
             conjectural=False) -> Verdict:
    """Verdict on the threefold ``x^2 + y^2 = f(v, w)`` (or ``x^2+y^2+z^2 = f(u)``).

    ``asserted`` names curve flags the caller vouches for ("real_branch",
    "nonnegative_f"); ``conjectural`` adds the expected outcome in the open
    degree band without changing the proven status.
    """
    family = _normalize_family(family)
    d = int(d)
    if d < 2 or d % 2:
        raise PrecondViolated("the degree must be even and at least 2", degree=d)
    asserted = set(asserted)

    if family == EQ1:
        return Verdict(
            OPEN,
            family,
            d,
            citations=[CITE_PUISEUX],
            notes=[
                "open over the real numbers",
                "over the real closed field of real Puiseux series the family with"
                " f = (u-1)(u^2+t)*prod(j*u^2+1) is not stably rational;"
                " see the residue command for the certificate",
            ],
            field_marker="R",
        )

    if d <= 4:
        return _classify_low_degree(family, d, profile, curve, asserted)

    model = SurfaceModel.rational_nodal(d)
    if r is not None and int(r) != model.r:
        raise PrecondViolated(
            "a rational nodal curve of this degree has a fixed number of nodes",
            r=int(r), expected=model.r,
        )
    hyp = {"nodal_rational_curve": "assumed" if profile is None else _nodal_status(profile, model)}
    if d >= 12:
        adj, effective = adjoint_class(model)
        K, D = canonical_and_delta(model)
        cert = {"model": model, "K": K, "Delta": D, "adjoint": adj, "effective": effective}
        return Verdict(NOT_RATIONAL, family, d, citations=[CITE_ADJOINT, CITE_RIGIDITY],
                       certificate=cert, hypotheses=hyp,
                       notes=["the adjoint class 4K + Delta is effective, so the standard model is superrigid"])
    notes = ["proven bounds leave degrees 6 to 10 open",
             "expected to extend to all degrees d >= 6 (conjecture)"]
    cert = None
    if conjectural:
        K, D = canonical_and_delta(model)
        two = 2 * K + D
        eff = is_effective(two)
        notes.append(f"conjectural mode: 2K + Delta = {two.to_compact()} is "
                     + ("effective" if eff else "not effective"))
        cert = {"conjectural_class": two, "conjectural_effective": eff, "effective": False}
    return Verdict(OPEN, family, d, citations=[CITE_CONJECTURE], notes=notes, hypotheses=hyp,
                   certificate=cert)


def _nodal_status(profile, model):
    if profile.node_count == model.r and all(n.kind == NODE for n in profile.nodes):
        return "verified"
    return UNKNOWN


def _classify_low_degree(family, d, profile, curve, asserted):
    from .curves import curve_profile
    from .rationality.pipeline import construct_conic_case, construct_for_curve

    if curve is None:
        raise PrecondViolated("a curve is needed to attach a rational map", degree=d)
    if curve.degree != d:
        raise PrecondViolated("the curve degree does not match", degree=curve.degree, expected=d)
    if d == 2:
        construction = construct_conic_case(curve, family)
        return Verdict(RATIONAL, family, d, citations=[CITE_QUARTIC], construction=construction,
                       hypotheses={"smooth_real_point": "verified"})
    profile = profile or curve_profile(curve)
    hyp = _hypotheses_for_quartic(profile, family, asserted)
    construction = construct_for_curve(curve, family=family, profile=profile,
                                       assert_nonneg="nonnegative_f" in asserted)
    return Verdict(RATIONAL, family, d, citations=[CITE_QUARTIC], construction=construction,
                   hypotheses=hyp)
