"""
Subset sum over a finite field as a deep-hole question.

For A = {a_1, ..., a_N}, target b and subset size s, take the generalized code
[N, s-1] with evaluation set A and the word generated by f = x^s + b x^(s-1).
The word is not a deep hole iff f - g = prod_{a in S}(x - a) for some g of
degree <= s-2 and some s-subset S, i.e. iff some s-subset sums to -b
(comparing x^(s-1) coefficients). In characteristic 2, -b = b.
"""
from itertools import combinations
from math import comb
from typing import List, Optional, Tuple

from loguru import logger

from algebra.upoly import UPoly
from models.code_schema import ReceivedWord, RSCode
from models.reduction_schema import EquivalenceReport, SubsetSumInstance
from solvers.rscode import DeepHoleOracle, OracleChoice, get_oracle
from utils.config import Settings, get_settings
from utils.errors import check_budget


class SubsetSumReducer:
    """
    SubsetSumReducer: build the deep-hole instance and check both sides exhaustively.
    """

    def __init__(self, settings: Optional[Settings] = None, oracle: Optional[DeepHoleOracle] = None):
        self.settings = settings or get_settings()
        self.oracle = oracle or get_oracle()

    def subset_sum_to_deephole(self, inst: SubsetSumInstance) -> Tuple[RSCode, ReceivedWord]:
        """Code [|A|, s-1] on A and the word generated by x^s + b x^(s-1)."""
        if len(inst.elements) <= inst.size:
            raise ValueError(f"need |A| > s, got |A|={len(inst.elements)}, s={inst.size}")
        field, s = inst.field, inst.size
        code = RSCode.generalized(field, inst.elements, s - 1)
        f = UPoly(field, [0] * (s - 1) + [inst.target, 1])
        word = code.word([f.evaluate(a) for a in code.eval_set])
        return code, word

    def find_subset(self, inst: SubsetSumInstance, required: int) -> Optional[List[int]]:
        """First s-subset of A (in listing order) whose sum is `required`."""
        field = inst.field
        for subset in combinations(inst.elements, inst.size):
            total = 0
            for a in subset:
                total = field.add(total, a)
            if total == required:
                return list(subset)
        return None

    def verify_equivalence(
        self,
        inst: SubsetSumInstance,
        oracle: OracleChoice = "auto",
        budget: Optional[int] = None,
    ) -> EquivalenceReport:
        """
        Solve both sides by brute force and check the iff.

        Args:
            inst: Subset-sum instance (|A| > s)
            oracle: Distance oracle for the deep-hole side
            budget: Bound on C(|A|, s) and q^(s-1) (None uses settings)

        Returns:
            EquivalenceReport with both answers
        """
        budget = self.settings.reduction_budget if budget is None else budget
        check_budget("subset enumeration", comb(len(inst.elements), inst.size), budget)
        check_budget("codeword enumeration", inst.field.q ** (inst.size - 1), budget)

        code, word = self.subset_sum_to_deephole(inst)
        required = inst.field.neg(inst.target)
        subset = self.find_subset(inst, required)
        verdict = self.oracle.distance_to_code(code, word, oracle=oracle)

        holds = (subset is not None) == (not verdict.is_deep_hole)
        if not holds:
            logger.warning(f"Reduction iff fails for {inst.model_dump(by_alias=True)}")
        return EquivalenceReport(
            instance=inst,
            required_sum=required,
            subset_exists=subset is not None,
            subset=subset,
            deep_hole=verdict.is_deep_hole,
            verdict=verdict,
            equivalence_holds=holds,
        )


# Global reducer instance
_reducer: Optional[SubsetSumReducer] = None


def get_reducer() -> SubsetSumReducer:
    """Get the shared reducer configured from global settings."""
    global _reducer
    if _reducer is None:
        _reducer = SubsetSumReducer()
    return _reducer


def subset_sum_to_deephole(inst: SubsetSumInstance) -> Tuple[RSCode, ReceivedWord]:
    return get_reducer().subset_sum_to_deephole(inst)


def verify_equivalence(inst: SubsetSumInstance, oracle: OracleChoice = "auto") -> EquivalenceReport:
    return get_reducer().verify_equivalence(inst, oracle=oracle)
