"""
JSON forms of polynomials and annotated pydantic types that carry them.

UPoly:  {"field": FieldSpec, "coeffs": [c0, c1, ...]}
MPoly:  {"field": FieldSpec, "vars": v, "terms": [{"exp": [...], "coeff": c}, ...]}
"""
from typing import Annotated, Any, List

from pydantic import BaseModel, Field, PlainSerializer, PlainValidator

from algebra.gf import FieldSpec
from algebra.mpoly import MPoly
from algebra.upoly import UPoly


class UPolyPayload(BaseModel):
    """Univariate polynomial, ascending canonical encodings."""
    field: FieldSpec
    coeffs: List[int] = Field(default_factory=list)

    @classmethod
    def from_poly(cls, poly: UPoly) -> "UPolyPayload":
        return cls(field=poly.field, coeffs=poly.to_list())

    def to_poly(self) -> UPoly:
        return UPoly(self.field, self.coeffs)


class TermPayload(BaseModel):
    exp: List[int]
    coeff: int


class MPolyPayload(BaseModel):
    """Sparse multivariate polynomial, terms in graded-lex order (highest first)."""
    field: FieldSpec
    vars: int
    terms: List[TermPayload] = Field(default_factory=list)

    @classmethod
    def from_poly(cls, poly: MPoly) -> "MPolyPayload":
        return cls(
            field=poly.field,
            vars=poly.nvars,
            terms=[TermPayload(exp=list(e), coeff=c) for e, c in poly.sorted_terms()],
        )

    def to_poly(self) -> MPoly:
        return MPoly(self.field, self.vars, {tuple(t.exp): t.coeff for t in self.terms})


def _load_upoly(value: Any) -> UPoly:
    if isinstance(value, UPoly):
        return value
    return UPolyPayload.model_validate(value).to_poly()


def _load_mpoly(value: Any) -> MPoly:
    if isinstance(value, MPoly):
        return value
    return MPolyPayload.model_validate(value).to_poly()


UPolyField = Annotated[
    UPoly,
    PlainValidator(_load_upoly),
    PlainSerializer(lambda p: UPolyPayload.from_poly(p).model_dump(mode="json"), return_type=dict),
]

MPolyField = Annotated[
    MPoly,
    PlainValidator(_load_mpoly),
    PlainSerializer(lambda p: MPolyPayload.from_poly(p).model_dump(mode="json"), return_type=dict),
]
