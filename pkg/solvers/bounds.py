"""
Point-count bounds and the main positivity margin, in exact integer arithmetic.

Fractional powers are bounded with integer roots: ceil(x^(a/b)) is the
smallest integer whose b-th power is at least x^a. Subtracted terms round up
and the main term is exact, so a positive margin is a valid conclusion.
"""
from itertools import permutations, product
from typing import List, Literal, Optional, Tuple

import sympy
from loguru import logger
from sympy import integer_nthroot

from algebra.gf import FieldSpec
from algebra.mpoly import MPoly
from models.bounds_schema import BoundReport, BoundTerms, ThresholdReport, Variant
from utils.config import Settings, get_settings
from utils.errors import FieldMismatchError, check_budget
from utils.parallel import run_partitioned, split_range

CountConstraint = Literal["none", "nonzero_distinct"]


def is_prime_power(q: int) -> bool:
    return q > 1 and len(sympy.factorint(q)) == 1


def ceil_root(x: int, b: int) -> int:
    """Smallest r >= 0 with r**b >= x."""
    if x <= 0:
        return 0
    r, exact = integer_nthroot(x, b)
    return int(r) if exact else int(r) + 1


def _check_q(q: int) -> None:
    if not is_prime_power(q):
        raise ValueError(f"q={q} is not a prime power")


def cafure_matera_terms(q: int, n: int, d: int) -> Tuple[int, int, int]:
    """(q^(n-1), ceil((d-1)(d-2) q^(n-3/2)), ceil(5 d^(13/3) q^(n-2)))."""
    _check_q(q)
    if n < 2:
        raise ValueError(f"need n >= 2 variables, got {n}")
    if d < 1:
        raise ValueError(f"need degree d >= 1, got {d}")
    main = q ** (n - 1)
    weil = ceil_root(((d - 1) * (d - 2)) ** 2 * q ** (2 * n - 3), 2)
    d13 = ceil_root(125 * d**13 * q ** (3 * (n - 2)), 3)
    return main, weil, d13


def cafure_matera_lower(q: int, n: int, d: int) -> int:
    """
    Lower bound on the F_q-points of an absolutely irreducible degree-d
    hypersurface in n variables.
    """
    main, weil, d13 = cafure_matera_terms(q, n, d)
    return main - weil - d13


def schmidt_upper(q: int, n: int, D: int) -> int:
    """Upper bound 2 n D^3 q^(n-2) on common zeros of two coprime polynomials."""
    _check_q(q)
    if n < 2:
        raise ValueError(f"need n >= 2 variables, got {n}")
    if D < 0:
        raise ValueError(f"degree must be nonnegative, got {D}")
    return 2 * n * D**3 * q ** (n - 2)


def distinctness_degree(k: int, variant: Variant) -> int:
    """
    Degree of prod x_i * prod_{i<j} (x_i - x_j) in k+1 variables.

    "published" keeps (k^2+k+2)/2; "corrected" is (k+1) + k(k+1)/2 = (k+1)(k+2)/2.
    """
    if variant == "published":
        return (k * k + k + 2) // 2
    if variant == "corrected":
        return (k + 1) * (k + 2) // 2
    raise ValueError(f"unknown variant '{variant}'")


def _count_chunk(task: Tuple[MPoly, List[int], List[int], int, bool]) -> int:
    """Zeros whose first coordinate lies in `firsts`."""
    poly, firsts, candidates, nvars, distinct = task
    evaluate = poly.evaluator()
    count = 0
    for first in firsts:
        if distinct:
            rest = permutations([c for c in candidates if c != first], nvars - 1)
        else:
            rest = product(candidates, repeat=nvars - 1)
        for tail in rest:
            if evaluate((first,) + tail) == 0:
                count += 1
    return count


class BoundCalculator:
    """
    BoundCalculator: evaluate the margin and validate it against exact counts.
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()

    def theorem_margin(self, q: int, k: int, d: int, variant: Optional[Variant] = None) -> BoundReport:
        """
        q^k - ceil((d-1)(d-2) q^(k-1/2)) - ceil(5 d^(13/3) q^(k-1))
            - 2(k+1) max(d, D)^3 q^(k-1),  D = distinctness_degree(k, variant).

        Args:
            q: Field order (prime power)
            k: Code dimension (k+1 variables)
            d: Degree of the tail
            variant: "published" or "corrected" (None uses settings)

        Returns:
            BoundReport with every term, the margin and applies = margin > 0
        """
        variant = variant or self.settings.default_variant
        if k < 1:
            raise ValueError(f"need k >= 1, got {k}")
        degree = distinctness_degree(k, variant)
        main, weil, d13 = cafure_matera_terms(q, k + 1, d)
        common = schmidt_upper(q, k + 1, max(d, degree))
        margin = main - weil - d13 - common
        report = BoundReport(
            q=q, k=k, d=d, variant=variant, distinctness_degree=degree,
            terms=BoundTerms(main=main, weil=weil, d13=d13, common_zero=common),
            margin=margin, applies=margin > 0,
        )
        logger.debug(f"Margin q={q}, k={k}, d={d} ({variant}): {margin}")
        return report

    def certified_threshold(
        self, k: int, d: int, variant: Optional[Variant] = None, limit: int = 10**7
    ) -> ThresholdReport:
        """Smallest prime power q <= limit where the margin is positive."""
        variant = variant or self.settings.default_variant
        degree = distinctness_degree(k, variant)
        # A positive margin needs q > 2(k+1) max(d, D)^3.
        start = max(2, 2 * (k + 1) * max(d, degree) ** 3)
        for q in range(start, limit + 1):
            if not is_prime_power(q):
                continue
            report = self.theorem_margin(q, k, d, variant)
            if report.applies:
                logger.info(f"Margin for k={k}, d={d} ({variant}) first applies at q={q}")
                return ThresholdReport(k=k, d=d, variant=variant, limit=limit, q=q, report=report)
        logger.warning(f"No prime power q <= {limit} certifies k={k}, d={d} ({variant})")
        return ThresholdReport(k=k, d=d, variant=variant, limit=limit)

    def exact_point_count(
        self,
        P: MPoly,
        field: FieldSpec,
        constraint: CountConstraint = "none",
        budget: Optional[int] = None,
        jobs: Optional[int] = None,
    ) -> int:
        """Number of zeros of P in F^vars (pairwise distinct nonzero coordinates if asked)."""
        if P.field != field:
            raise FieldMismatchError(f"polynomial over {P.field}, counting over {field}")
        if constraint not in ("none", "nonzero_distinct"):
            raise ValueError(f"unknown constraint '{constraint}'")
        q, nvars = field.q, P.nvars
        check_budget("exact_point_count", q**nvars, self.settings.scan_budget if budget is None else budget)

        distinct = constraint == "nonzero_distinct"
        candidates = list(field.encodings(nonzero_only=distinct))
        jobs = jobs or self.settings.jobs
        tasks = [(P, chunk, candidates, nvars, distinct) for chunk in split_range(candidates, max(jobs, 1))]
        count = sum(run_partitioned(_count_chunk, tasks, jobs=jobs))
        logger.info(f"{count} points of a {nvars}-variable polynomial over {field} ({constraint})")
        return count


# Global calculator instance
_calculator: Optional[BoundCalculator] = None


def get_calculator() -> BoundCalculator:
    """Get the shared bound calculator configured from global settings."""
    global _calculator
    if _calculator is None:
        _calculator = BoundCalculator()
    return _calculator


def theorem_margin(q: int, k: int, d: int, variant: Optional[Variant] = None) -> BoundReport:
    return get_calculator().theorem_margin(q, k, d, variant)


def certified_threshold(k: int, d: int, variant: Optional[Variant] = None, limit: int = 10**7) -> ThresholdReport:
    return get_calculator().certified_threshold(k, d, variant, limit)


def exact_point_count(
    P: MPoly,
    field: FieldSpec,
    constraint: CountConstraint = "none",
    budget: Optional[int] = None,
    jobs: Optional[int] = None,
) -> int:
    return get_calculator().exact_point_count(P, field, constraint, budget=budget, jobs=jobs)
