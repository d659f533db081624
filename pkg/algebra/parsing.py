"""
Text input for polynomials and fields.

Accepted polynomial text: "x^3 + 2x + 1", "2*x^2 - x", "5". Coefficients are
canonical encodings in [0, q); a leading '-' means the additive inverse.
"""
import json
import re
from typing import List

from loguru import logger

from algebra.gf import FieldSpec, field_of_order
from algebra.upoly import UPoly

_TOKEN = re.compile(r"[+-]?[^+-]+")
_TERM = re.compile(r"^(?P<coef>\d+)?\*?(?P<var>x(?:\^(?P<exp>\d+))?)?$")
_POWER = re.compile(r"^(?P<p>\d+)\^(?P<m>\d+)$")


def parse_upoly(text: str, field: FieldSpec) -> UPoly:
    """
    Parse a polynomial in x.

    Args:
        text: Polynomial text such as "x^3 + 2x + 1"
        field: Coefficient field

    Returns:
        UPoly over `field`
    """
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise ValueError("empty polynomial text")
    tokens = _TOKEN.findall(compact)
    if "".join(tokens) != compact:
        raise ValueError(f"malformed polynomial '{text}'")

    coeffs: List[int] = []
    for token in tokens:
        negative = token.startswith("-")
        body = token.lstrip("+-")
        match = _TERM.match(body)
        if not match or (match.group("coef") is None and match.group("var") is None):
            raise ValueError(f"malformed term '{token}' in '{text}'")
        coef = field.check(int(match.group("coef"))) if match.group("coef") else 1
        if match.group("var") is None:
            exp = 0
        else:
            exp = int(match.group("exp")) if match.group("exp") else 1
        if negative:
            coef = field.neg(coef)
        if len(coeffs) <= exp:
            coeffs.extend([0] * (exp + 1 - len(coeffs)))
        coeffs[exp] = field.add(coeffs[exp], coef)

    poly = UPoly(field, coeffs)
    logger.debug(f"Parsed '{text}' as {poly} over {field}")
    return poly


def parse_poly_arg(text: str, field: FieldSpec) -> UPoly:
    """Polynomial from text, or from JSON: an ascending list or {"coeffs": [...]}."""
    stripped = text.strip()
    if stripped.startswith("[") or stripped.startswith("{"):
        data = json.loads(stripped)
        if isinstance(data, dict):
            data = data.get("coeffs")
        if not isinstance(data, list):
            raise ValueError("JSON polynomial must be a coefficient list or carry 'coeffs'")
        return UPoly(field, data)
    return parse_upoly(stripped, field)


def parse_field(text: str) -> FieldSpec:
    """
    Field from a CLI argument: "7", "8", "2^3" or a JSON FieldSpec object.

    Prime powers given as numbers use the smallest irreducible modulus.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        return FieldSpec.model_validate_json(stripped)
    match = _POWER.match(stripped.replace(" ", ""))
    if match:
        return field_of_order(int(match.group("p")) ** int(match.group("m")))
    if not stripped.isdigit():
        raise ValueError(f"cannot read a field from '{text}'")
    return field_of_order(int(stripped))
