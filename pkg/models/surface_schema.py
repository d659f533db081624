"""
Schemas for the leading-coefficient hypersurface pipeline.
"""
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from algebra.gf import FieldSpec
from models.payloads import MPolyField, UPolyField

Constraint = Literal["nonzero_distinct", "distinct_only"]
SearchMode = Literal["exhaustive", "random"]


class MonicTail(BaseModel):
    """
    f = x^(k+d) + f_{d-1} x^(k+d-1) + ... + f_0 x^k.

    JSON form: {"k": int, "d": int, "coeffs": [f0, ..., f_{d-1}], "field": FieldSpec}
    """

    model_config = ConfigDict(frozen=True)

    field: FieldSpec
    k: int = Field(ge=1)
    d: int = Field(ge=1)
    coeffs: Tuple[int, ...]

    @model_validator(mode="after")
    def check_tail(self) -> "MonicTail":
        if len(self.coeffs) != self.d:
            raise ValueError(f"expected {self.d} low coefficients, got {len(self.coeffs)}")
        for c in self.coeffs:
            self.field.check(c)
        return self

    @classmethod
    def pure(cls, field: FieldSpec, k: int, d: int) -> "MonicTail":
        """x^(k+d) with all low coefficients zero."""
        return cls(field=field, k=k, d=d, coeffs=(0,) * d)

    @property
    def degree(self) -> int:
        return self.k + self.d


class HypersurfaceInstance(BaseModel):
    """L (in x1..x_{k+1}) for one tail, together with its degree-d top form."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    field: FieldSpec
    k: int
    d: int
    coeffs: List[int]
    L: MPolyField
    top_form: MPolyField

    @model_validator(mode="after")
    def check_instance(self) -> "HypersurfaceInstance":
        if self.L.nvars != self.k + 1:
            raise ValueError(f"L must have {self.k + 1} variables")
        if self.L.total_degree != self.d:
            raise ValueError(f"L has degree {self.L.total_degree}, expected {self.d}")
        if self.top_form != self.L.homogeneous_component(self.d) or self.top_form.is_zero:
            raise ValueError("top_form must be the nonzero degree-d component of L")
        return self

    @property
    def tail(self) -> MonicTail:
        return MonicTail(field=self.field, k=self.k, d=self.d, coeffs=tuple(self.coeffs))


class TopFormReport(BaseModel):
    """Top form of L_f compared with that of the pure tail over random f."""

    field: FieldSpec
    k: int
    d: int
    trials: int
    seed: int
    all_equal: bool
    counterexamples: List[List[int]] = Field(default_factory=list)


class ChiReport(BaseModel):
    """Specialization (x1, x2, 1, 0, ..., 0) of the top form versus the direct sum."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    field: FieldSpec
    k: int
    d: int
    direct: MPolyField
    specialized: MPolyField
    equal: bool


class ClosedFormReport(BaseModel):
    """Top form of the pure tail compared with h_d."""

    field: FieldSpec
    k: int
    d: int
    equal: bool
    top_form_terms: int
    expected_terms: int


class PointSearchResult(BaseModel):
    field: FieldSpec
    nvars: int
    constraint: Constraint
    mode: SearchMode
    point: Optional[List[int]] = None
    within: Optional[List[int]] = None
    candidates_examined: int = 0
    seed: Optional[int] = None

    @computed_field
    @property
    def found(self) -> bool:
        return self.point is not None


class WitnessResult(BaseModel):
    """Codeword generator recovered from a point of L."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    generator: UPolyField
    remainder: UPolyField
    distance: int
    word: List[int]
    codeword: List[int]


class PartialZero(BaseModel):
    x: int
    y: int
    value: int  # f(x, y)


class SmoothnessReport(BaseModel):
    """Singular-point scan of sum_{i+j<=d} x^i y^j over F_{p^e}."""

    field: FieldSpec
    d: int
    p: int
    e: int
    points_scanned: int
    partial_common_zeros: List[PartialZero] = Field(default_factory=list)
    singular_points: List[Tuple[int, int]] = Field(default_factory=list)
    infinity_points: List[Tuple[int, int]] = Field(default_factory=list)
    infinity_singular: List[Tuple[int, int]] = Field(default_factory=list)
    p_divides_d_plus_1: bool
    p_divides_d_plus_2: bool

    @computed_field
    @property
    def smooth(self) -> bool:
        return not self.singular_points and not self.infinity_singular
