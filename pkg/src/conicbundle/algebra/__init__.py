"""Exact algebra: scalars, sparse polynomials, rational functions, univariate tools."""

from ..errors import DivisionByZero, VariableMismatch
from .mpoly import MPoly, discriminant, divexact, gcd, gcd_many, prem, pseudo_divmod, resultant
from .ratfunc import RatFunc, substitute
from .scalars import GAUSSIAN, QuadField, QuadNumber, scalar_str, sign, sqrt_in
from .univariate import factor_univariate, sturm_real_roots, sum_of_two_squares


def arith(kind, a, b, var=None):
    """Dispatch one of the basic operations by name.

    ``kind`` is one of add, sub, mul, div, pow, pseudo_divmod, gcd, resultant.
    """
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        if isinstance(b, (MPoly, RatFunc)) and b.is_zero() or b == 0:
            raise DivisionByZero("division by zero")
        return RatFunc.lift(a) / b
    if kind == "pow":
        return a ** b
    if kind == "pseudo_divmod":
        return pseudo_divmod(a, b, var)
    if kind == "gcd":
        return gcd(a, b)
    if kind == "resultant":
        if var is None:
            raise VariableMismatch("resultant needs a variable")
        return resultant(a, b, var)
    raise ValueError(f"unknown operation {kind!r}")


__all__ = [
    "GAUSSIAN",
    "MPoly",
    "QuadField",
    "QuadNumber",
    "RatFunc",
    "arith",
    "discriminant",
    "divexact",
    "factor_univariate",
    "gcd",
    "gcd_many",
    "prem",
    "pseudo_divmod",
    "resultant",
    "scalar_str",
    "sign",
    "sqrt_in",
    "substitute",
    "sturm_real_roots",
    "sum_of_two_squares",
]
