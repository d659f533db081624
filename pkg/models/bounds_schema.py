"""
Schemas for rational-point bound evaluations.
"""
from typing import Literal, Optional

from pydantic import BaseModel, model_validator

Variant = Literal["published", "corrected"]


class BoundTerms(BaseModel):
    """Integer-rounded terms: main rounded down, subtracted terms rounded up."""
    main: int
    weil: int
    d13: int
    common_zero: int


class BoundReport(BaseModel):
    q: int
    k: int
    d: int
    variant: Variant
    distinctness_degree: int
    terms: BoundTerms
    margin: int
    applies: bool

    @model_validator(mode="after")
    def check_report(self) -> "BoundReport":
        t = self.terms
        if self.margin != t.main - t.weil - t.d13 - t.common_zero:
            raise ValueError("margin does not match its terms")
        if self.applies != (self.margin > 0):
            raise ValueError("applies must equal margin > 0")
        return self


class ThresholdReport(BaseModel):
    """Smallest prime power q <= limit at which the margin is positive."""
    k: int
    d: int
    variant: Variant
    limit: int
    q: Optional[int] = None
    report: Optional[BoundReport] = None


class PointCountReport(BaseModel):
    q: int
    nvars: int
    constraint: Literal["none", "nonzero_distinct"]
    count: int
    degree: int
    lower_bound: Optional[int] = None
