"""Exact arithmetic kernel: rational functions, series, domains, linear algebra."""
from ._backend import ALPHABET, BACKEND, is_prime
from .domains import SYMBOLIC, Domain, ModularDomain, RationalDomain, SymbolicDomain, to_json_value
from .identity import equal, modular_equal
from .linalg import SingularMatrixError, det, nullspace, solve
from .modular import DEFAULT_PRIME, ModInt
from .ratfunc import ALIASES, PoleError, RatFunc, const, var
from .series import (SeriesError, TruncSeries, exp_of_coefficients, exp_substitution,
                     hbar_point, series_exp, series_substitute)


def poly_arith(op: str, f, g=None):
    """The four kernel operations by name: add, mul, neg, div_exact."""
    f = RatFunc(f) if not isinstance(f, RatFunc) else f
    if op == "neg":
        return -f
    g = RatFunc(g) if not isinstance(g, RatFunc) else g
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "div_exact":
        if g.is_zero():
            raise PoleError("division by the zero rational function")
        return f / g
    raise ValueError(f"unknown operation {op!r}")


def evaluate(f, point: dict, modulus: int | None = None):
    return f.evaluate(point, modulus)


__all__ = [
    "ALPHABET", "ALIASES", "BACKEND", "DEFAULT_PRIME", "Domain", "ModInt", "ModularDomain",
    "PoleError", "RatFunc", "RationalDomain", "SYMBOLIC", "SeriesError", "SingularMatrixError",
    "SymbolicDomain", "TruncSeries", "const", "det", "equal", "evaluate", "exp_of_coefficients",
    "exp_substitution", "hbar_point", "is_prime", "modular_equal", "nullspace", "poly_arith",
    "series_exp", "series_substitute", "solve", "to_json_value", "var",
]
