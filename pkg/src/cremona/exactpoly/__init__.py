"""Exact polynomial arithmetic over the rationals."""

from .factor import LinearFactorization, factor_linear, irreducible_factors, normalize_linear
from .gcd import gcd, gcd_list, resultant
from .numberfield import NFElem, NumberField
from .parse import parse_homog, parse_map_components, parse_poly
from .poly import (
    DEFAULT_TERM_LIMIT,
    X,
    Y,
    Z,
    HomogPoly,
    Poly,
    Rat,
    add,
    format_rat,
    jacobian_det,
    mul,
    rat,
    term_limit,
    vanishing_order,
)
from .zeros import ZeroPoint, ZeroSet, common_zeros, normalize_point

__all__ = [
    "DEFAULT_TERM_LIMIT", "HomogPoly", "LinearFactorization", "NFElem", "NumberField", "Poly",
    "Rat", "X", "Y", "Z", "ZeroPoint", "ZeroSet", "add", "common_zeros", "factor_linear",
    "format_rat", "gcd", "gcd_list", "irreducible_factors", "jacobian_det", "mul",
    "normalize_linear", "normalize_point", "parse_homog", "parse_map_components", "parse_poly",
    "rat", "resultant", "term_limit", "vanishing_order",
]
