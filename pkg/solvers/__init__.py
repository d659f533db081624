"""Pipeline stages for the deep-hole toolkit."""
from .bounds import BoundCalculator, cafure_matera_lower, schmidt_upper, theorem_margin
from .reduction import SubsetSumReducer, subset_sum_to_deephole, verify_equivalence
from .rscode import DeepHoleOracle, distance_to_code, enumerate_deep_holes
from .surface import SurfaceEngine, compute_L, find_distinct_point, witness_from_point

__all__ = [
    "BoundCalculator",
    "cafure_matera_lower",
    "schmidt_upper",
    "theorem_margin",
    "SubsetSumReducer",
    "subset_sum_to_deephole",
    "verify_equivalence",
    "DeepHoleOracle",
    "distance_to_code",
    "enumerate_deep_holes",
    "SurfaceEngine",
    "compute_L",
    "find_distinct_point",
    "witness_from_point",
]
