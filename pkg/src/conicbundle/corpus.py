"""Named demonstration inputs.

Curves are homogeneous quartics (or conics) in ``v, w, z``.  Triples are
coefficient polynomials ``(q, c, g)`` in ``w`` for
``x^2 + y^2 = q(w) z^2 + c(w) z + g(w)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import PlaneCurve
from .parser import parse_poly

CURVE_VARS = ("v", "w", "z")


@dataclass(frozen=True)
class CurveEntry:
    name: str
    text: str
    family: str
    kind: str  # "F1", "F2", "a" or "conic": which construction is expected
    note: str = ""

    def curve(self) -> PlaneCurve:
        return PlaneCurve(parse_poly(self.text, CURVE_VARS))


@dataclass(frozen=True)
class TripleEntry:
    name: str
    q: str
    c: str
    g: str
    note: str = ""

    def polys(self, var="w"):
        return tuple(parse_poly(t, (var,)) for t in (self.q, self.c, self.g))


CURVES = (
    CurveEntry("lemniscate", "(v^2+w^2)^2 - (v^2-w^2)*z^2", "Eq2a", "F2",
               "real node at the origin, conjugate nodes on the line at infinity"),
    CurveEntry("f1-basic", "v^2*w^2 - v^2*z^2 - w^2*z^2 + v*w*z^2", "Eq2a", "F1",
               "three real nodes at the coordinate points"),
    CurveEntry("f1-mixed", "v^2*w^2 - 2*v^2*z^2 + 3*w^2*z^2 + v*w*z*(v + 2*w + z)", "Eq2a", "F1",
               "three real nodes, one coefficient of each sign"),
    CurveEntry("f1-sheared", "v^4 - 2*v^3*w + v^2*w^2 - 3*v^2*z^2 + 3*v*w*z^2 - w^2*z^2", "Eq2a", "F1",
               "the basic F1 curve after a shear of the base"),
    CurveEntry("f1-swapped",
               "2*v^2*w*z - v^2*z^2 + v*w^3 - 2*v*w^2*z + v*w*z^2 - w^4 + 2*w^3*z - w^2*z^2",
               "Eq2a", "F1", "the basic F1 curve with nodes moved off the coordinate points"),
    CurveEntry("f2-split", "(v^2+w^2)^2 - v^2*z^2 + w^2*z^2 + v*w*z^2", "Eq2a", "F2",
               "conjugate nodes at infinity, q changes sign"),
    CurveEntry("f2-moved",
               "580/81*v^4 + 608/81*v^3*w - 880/81*v^3*z + 140/27*v^2*w^2 - 272/27*v^2*w*z"
               " + 164/27*v^2*z^2 + 146/81*v*w^3 - 142/27*v*w^2*z + 128/27*v*w*z^2 - 124/81*v*z^3"
               " + 28/81*w^4 - 92/81*w^3*z + 41/27*w^2*z^2 - 68/81*w*z^3 + 13/81*z^4",
               "Eq2a", "F2", "an F2 curve after a projective change"),
    CurveEntry("isolated-node", "(v^2+w^2)^2 + v^2*z^2 + 2*w^2*z^2", "Eq2b", "a",
               "f is positive away from the isolated real node"),
    CurveEntry("isolated-node-2", "(v^2+w^2)^2 + 3*v^2*z^2 + v*w*z^2 + w^2*z^2", "Eq2b", "a",
               "a second nonnegative quartic with an isolated node"),
    CurveEntry("circle", "v^2 + w^2 - 2*z^2", "Eq2a", "conic", "a real conic"),
    CurveEntry("empty-conic", "v^2 + w^2 + z^2", "Eq2b", "conic", "a conic without real points"),
)

TRIPLES = (
    TripleEntry("triple-square", "w^2", "0", "1", "x^2 + y^2 = w^2 z^2 + 1"),
    TripleEntry("triple-linear", "1", "w", "w^2 + 1", "f has negative discriminant in z"),
    TripleEntry("triple-unit", "1", "0", "1", "x^2 + y^2 = z^2 + 1"),
)

# raw (q1, q2) for w^2 + q1*(x^2+y^2) + q2 = 0 whose q2 is not of the form a*q1 - l3^2
BRAUER_INPUT = {"q1": "-u", "q2": "u^2 + 1", "var": "u"}

RESIDUE_PARAMETERS = tuple((m, e) for m in range(1, 6) for e in range(3))

ADJOINT_DEGREES = tuple(range(2, 41, 2))


def curve_by_name(name: str) -> CurveEntry:
    stem = name[:-5] if name.endswith(".poly") else name
    for entry in CURVES:
        if entry.name == stem:
            return entry
    raise KeyError(name)


def acceptance_curves():
    """The quartic part of the rationality corpus."""
    return [c for c in CURVES if c.kind != "conic"]
