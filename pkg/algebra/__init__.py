"""Finite-field polynomial algebra for the deep-hole toolkit."""
from .gf import (
    FieldElement,
    FieldSpec,
    enumerate_elements,
    field_arith,
    field_make,
    field_of_order,
    find_irreducible_modulus,
)
from .mpoly import (
    MPoly,
    complete_homogeneous,
    elementary_symmetric,
    homogeneous_component,
    substitute,
)
from .parsing import parse_field, parse_poly_arg, parse_upoly
from .upoly import ZERO_DEGREE, UPoly, interpolate, poly_divmod, roots_in_set

__all__ = [
    "FieldElement",
    "FieldSpec",
    "enumerate_elements",
    "field_arith",
    "field_make",
    "field_of_order",
    "find_irreducible_modulus",
    "MPoly",
    "complete_homogeneous",
    "elementary_symmetric",
    "homogeneous_component",
    "substitute",
    "parse_field",
    "parse_poly_arg",
    "parse_upoly",
    "ZERO_DEGREE",
    "UPoly",
    "interpolate",
    "poly_divmod",
    "roots_in_set",
]
