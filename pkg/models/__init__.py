"""Models package for the deep-hole toolkit."""
from .bounds_schema import BoundReport, BoundTerms, PointCountReport, ThresholdReport
from .code_schema import (
    CodeDescriptor,
    DeepHoleCensus,
    DeepHoleVerdict,
    ReceivedWord,
    RSCode,
)
from .payloads import MPolyPayload, UPolyPayload
from .reduction_schema import EquivalenceReport, SubsetSumInstance
from .surface_schema import (
    ChiReport,
    ClosedFormReport,
    HypersurfaceInstance,
    MonicTail,
    PointSearchResult,
    SmoothnessReport,
    TopFormReport,
    WitnessResult,
)

__all__ = [
    "BoundReport",
    "BoundTerms",
    "PointCountReport",
    "ThresholdReport",
    "CodeDescriptor",
    "DeepHoleCensus",
    "DeepHoleVerdict",
    "ReceivedWord",
    "RSCode",
    "MPolyPayload",
    "UPolyPayload",
    "EquivalenceReport",
    "SubsetSumInstance",
    "ChiReport",
    "ClosedFormReport",
    "HypersurfaceInstance",
    "MonicTail",
    "PointSearchResult",
    "SmoothnessReport",
    "TopFormReport",
    "WitnessResult",
]
