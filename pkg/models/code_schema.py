"""
Reed-Solomon code schemas: codes, received words, verdicts and census results.
Words are position-aligned tuples of canonical encodings.
"""
from typing import Dict, List, Literal, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from algebra.gf import FieldElement, FieldSpec
from models.payloads import UPolyField

Flavor = Literal["standard", "extended", "generalized"]
OracleName = Literal["subset_interpolation", "codeword_enumeration"]


class RSCode(BaseModel):
    """[n, k] Reed-Solomon code over an ordered evaluation set."""

    model_config = ConfigDict(frozen=True)

    field: FieldSpec
    eval_set: Tuple[int, ...]
    k: int

    @model_validator(mode="after")
    def check_code(self) -> "RSCode":
        for x in self.eval_set:
            self.field.check(x)
        if len(set(self.eval_set)) != len(self.eval_set):
            raise ValueError("evaluation set has repeated elements")
        if not 1 <= self.k < len(self.eval_set):
            raise ValueError(f"need 1 <= k < n, got k={self.k}, n={len(self.eval_set)}")
        return self

    @classmethod
    def standard(cls, field: FieldSpec, k: int) -> "RSCode":
        """Evaluation set F_q* in canonical order."""
        return cls(field=field, eval_set=tuple(field.encodings(nonzero_only=True)), k=k)

    @classmethod
    def extended(cls, field: FieldSpec, k: int) -> "RSCode":
        """Evaluation set F_q in canonical order."""
        return cls(field=field, eval_set=tuple(field.encodings()), k=k)

    @classmethod
    def generalized(cls, field: FieldSpec, eval_set: Sequence[int], k: int) -> "RSCode":
        return cls(field=field, eval_set=tuple(int(x) for x in eval_set), k=k)

    @property
    def n(self) -> int:
        return len(self.eval_set)

    @property
    def covering_radius(self) -> int:
        return self.n - self.k

    @property
    def flavor(self) -> Flavor:
        q = self.field.q
        if self.eval_set == tuple(range(1, q)):
            return "standard"
        if self.eval_set == tuple(range(q)):
            return "extended"
        return "generalized"

    @property
    def points(self) -> List[FieldElement]:
        return [FieldElement(self.field, x) for x in self.eval_set]

    def word(self, values: Sequence[Union[int, FieldElement]]) -> "ReceivedWord":
        return ReceivedWord(code=self, values=tuple(int(v) for v in values))

    def describe(self) -> str:
        return f"[{self.n},{self.k}]_{self.field.q} {self.flavor}"


class ReceivedWord(BaseModel):
    """Length-n vector aligned with the code's evaluation set."""

    model_config = ConfigDict(frozen=True)

    code: RSCode
    values: Tuple[int, ...]

    @model_validator(mode="after")
    def check_word(self) -> "ReceivedWord":
        if len(self.values) != self.code.n:
            raise ValueError(f"word has length {len(self.values)}, code length is {self.code.n}")
        for v in self.values:
            self.code.field.check(v)
        return self

    @property
    def elements(self) -> List[FieldElement]:
        return [FieldElement(self.code.field, v) for v in self.values]

    @property
    def encoding(self) -> int:
        """sum(w_i * q**i), the census word encoding."""
        q = self.code.field.q
        return sum(v * q**i for i, v in enumerate(self.values))


class DeepHoleVerdict(BaseModel):
    """Exact distance from a word to the code, with a nearest codeword's generator."""

    model_config = ConfigDict(populate_by_name=True, arbitrary_types_allowed=True)

    n: int
    k: int
    distance: int
    max_agreement: int
    is_deep_hole: bool = Field(alias="deep_hole")
    witness: UPolyField
    oracle: OracleName

    @model_validator(mode="after")
    def check_verdict(self) -> "DeepHoleVerdict":
        if self.distance != self.n - self.max_agreement:
            raise ValueError("distance must equal n - max_agreement")
        if self.distance > self.n - self.k:
            raise ValueError(f"distance {self.distance} exceeds the covering radius {self.n - self.k}")
        if self.is_deep_hole != (self.distance == self.n - self.k):
            raise ValueError("deep-hole flag inconsistent with distance")
        if self.witness.degree > self.k - 1:
            raise ValueError("witness is not a codeword generator")
        return self


class CodeDescriptor(BaseModel):
    """JSON code descriptor: eval_set is "star" (F_q*), "full" (F_q) or a list."""

    field: FieldSpec
    eval_set: Union[Literal["star", "full"], List[int]]
    k: int

    def to_code(self) -> RSCode:
        if self.eval_set == "star":
            return RSCode.standard(self.field, self.k)
        if self.eval_set == "full":
            return RSCode.extended(self.field, self.k)
        return RSCode.generalized(self.field, self.eval_set, self.k)

    @classmethod
    def from_code(cls, code: RSCode) -> "CodeDescriptor":
        eval_set: Union[str, List[int]] = {
            "standard": "star",
            "extended": "full",
        }.get(code.flavor, list(code.eval_set))
        return cls(field=code.field, eval_set=eval_set, k=code.k)


class DeepHoleCensus(BaseModel):
    """Exhaustive deep-hole count of one code."""

    code: CodeDescriptor
    flavor: Flavor
    n: int
    total_words: int
    count: int
    corollary_bound: int  # (q-1) * q^k
    meets_corollary: bool
    distance_histogram: Dict[int, int] = Field(default_factory=dict)
    # deep holes grouped by the degree of their interpolating polynomial
    by_degree: Dict[int, int] = Field(default_factory=dict)
    samples: List[List[int]] = Field(default_factory=list)
    elapsed_work: int = 0
    jobs: int = 1

    @property
    def only_degree_k(self) -> bool:
        return set(self.by_degree) <= {self.code.k}

