"""
Schemas for the subset-sum to deep-hole reduction.
"""
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from algebra.gf import FieldSpec
from models.code_schema import DeepHoleVerdict


class SubsetSumInstance(BaseModel):
    """
    Does some size-s subset of A sum to the target?

    JSON form: {"field": FieldSpec, "set": [int, ...], "target": int, "size": int}
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    field: FieldSpec
    elements: Tuple[int, ...] = Field(alias="set")
    target: int
    size: int

    @model_validator(mode="after")
    def check_instance(self) -> "SubsetSumInstance":
        for a in self.elements:
            self.field.check(a)
        self.field.check(self.target)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("set elements must be distinct")
        if not 2 <= self.size <= len(self.elements):
            raise ValueError(f"subset size must lie in [2, {len(self.elements)}], got {self.size}")
        return self


class EquivalenceReport(BaseModel):
    """Both brute-force answers and whether they satisfy the iff."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    instance: SubsetSumInstance
    required_sum: int  # -target
    subset_exists: bool
    subset: Optional[List[int]] = None
    deep_hole: bool
    verdict: DeepHoleVerdict
    equivalence_holds: bool
