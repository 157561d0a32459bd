"""Exception hierarchy shared across the package."""


class ConicBundleError(Exception):
    """Base class. ``payload`` carries machine-readable detail for the CLI."""

    code = "error"
    hypothesis = False

    def __init__(self, message="", **payload):
        super().__init__(message)
        self.payload = payload

    def to_dict(self):
        out = {"code": self.code, "message": str(self)}
        for key, value in self.payload.items():
            out[key] = value if isinstance(value, (int, str, bool, type(None), list, dict)) else str(value)
        return out


def _make(name, code, hypothesis=False, base=ConicBundleError):
    cls = type(name, (base,), {"code": code, "hypothesis": hypothesis})
    return cls


# algebra
DivisionByZero = _make("DivisionByZero", "division_by_zero")
VariableMismatch = _make("VariableMismatch", "variable_mismatch")
FieldMismatch = _make("FieldMismatch", "field_mismatch")
DegreeTooLarge = _make("DegreeTooLarge", "degree_too_large")
UnsupportedField = _make("UnsupportedField", "unsupported_field")
NotNonnegative = _make("NotNonnegative", "not_nonnegative", hypothesis=True)
NeedsExtension = _make("NeedsExtension", "needs_extension", hypothesis=True)
NotExact = _make("NotExact", "not_exact")

# curves
NotReduced = _make("NotReduced", "not_reduced", hypothesis=True)
UnsupportedNodeField = _make("UnsupportedNodeField", "unsupported_node_field", hypothesis=True)
NotSingular = _make("NotSingular", "not_singular")
CollinearNodes = _make("CollinearNodes", "collinear_nodes", hypothesis=True)
TemplateMismatch = _make("TemplateMismatch", "template_mismatch", hypothesis=True)

# maps
NotOnQuadric = _make("NotOnQuadric", "not_on_quadric")
NotSmoothPoint = _make("NotSmoothPoint", "not_smooth_point")
NoSmoothPointFound = _make("NoSmoothPointFound", "no_smooth_point_found", hypothesis=True)
PrecondViolated = _make("PrecondViolated", "precondition_violated", hypothesis=True)
HypothesisViolated = _make("HypothesisViolated", "hypothesis_violated", hypothesis=True)
ChartMismatch = _make("ChartMismatch", "chart_mismatch")

# lattice / verdicts
UndecidedEffectivity = _make("UndecidedEffectivity", "undecided_effectivity")
InvalidMultiplicity = _make("InvalidMultiplicity", "invalid_multiplicity")
HypothesisUnverified = _make("HypothesisUnverified", "hypothesis_unverified", hypothesis=True)

# residues
IndeterminateValuation = _make("IndeterminateValuation", "indeterminate_valuation")
UnsupportedSymbolShape = _make("UnsupportedSymbolShape", "unsupported_symbol_shape")


class PolySyntaxError(ConicBundleError):
    code = "syntax_error"

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}", position=position)
        self.position = position


class UnknownCharacter(PolySyntaxError):
    code = "unknown_character"
