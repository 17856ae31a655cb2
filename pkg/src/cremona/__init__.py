"""Exact computations with birational maps of the projective plane."""

from .cremaps import (
    RationalMapP2,
    classify_quadratic,
    compose,
    exceptional,
    expand_word,
    homaloidal_check,
    identity,
    indeterminacy,
    linear_map,
    make_map,
    parse_map,
    parse_word,
    projectively_equal,
    rho,
    sigma,
    tau,
)
from .errors import CremonaError

__version__ = "0.1.0"

__all__ = [
    "CremonaError", "RationalMapP2", "classify_quadratic", "compose", "exceptional", "expand_word",
    "homaloidal_check", "identity", "indeterminacy", "linear_map", "make_map", "parse_map",
    "parse_word", "projectively_equal", "rho", "sigma", "tau",
]
