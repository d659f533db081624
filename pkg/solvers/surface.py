"""
SurfaceEngine - the leading-coefficient hypersurface of a monic tail.

Dividing f = x^(k+d) + f_{d-1} x^(k+d-1) + ... + f_0 x^k by
Pi = (x - x_1)...(x - x_{k+1}) leaves a remainder of degree <= k whose x^k
coefficient L(x_1, ..., x_{k+1}) is a polynomial of degree d. A point of L = 0
with distinct coordinates in the evaluation set gives a codeword within
distance n-k-1 of the word generated by f (plus any t of degree <= k-1).

Sign convention: Pi = x^(k+1) + sum_i (-1)^i e_i x^(k+1-i) with e_i the
elementary symmetric polynomials; the signs are applied explicitly.
"""
import random
from itertools import permutations
from typing import List, Optional, Sequence, Tuple, Union

import sympy
from loguru import logger

from algebra.gf import FieldElement, FieldSpec, field_of_order
from algebra.mpoly import MPoly, bivariate_total_sum, complete_homogeneous, elementary_symmetric
from algebra.upoly import UPoly
from models.code_schema import RSCode
from models.surface_schema import (
    ChiReport,
    ClosedFormReport,
    Constraint,
    HypersurfaceInstance,
    MonicTail,
    PartialZero,
    PointSearchResult,
    SearchMode,
    SmoothnessReport,
    TopFormReport,
    WitnessResult,
)
from utils.config import Settings, get_settings
from utils.errors import BudgetExceededError, FieldMismatchError, check_budget
from utils.parallel import run_partitioned, split_range


def _search_chunk(task: Tuple[MPoly, List[int], List[int], int]) -> Tuple[Optional[Tuple[int, ...]], int]:
    """Lexicographically least distinct zero whose first coordinate lies in `firsts`."""
    poly, firsts, candidates, nvars = task
    evaluate = poly.evaluator()
    examined = 0
    for first in firsts:
        rest = [c for c in candidates if c != first]
        for tail in permutations(rest, nvars - 1):
            examined += 1
            point = (first,) + tail
            if evaluate(point) == 0:
                return point, examined
    return None, examined


def _smoothness_chunk(task: Tuple[MPoly, MPoly, MPoly, List[int], int]) -> List[Tuple[int, int, int]]:
    """(x, y, f(x, y)) for every common zero of both partials with x in `xs`."""
    poly, dx, dy, xs, q = task
    f_at, dx_at, dy_at = poly.evaluator(), dx.evaluator(), dy.evaluator()
    hits = []
    for x in xs:
        for y in range(q):
            if dx_at((x, y)) == 0 and dy_at((x, y)) == 0:
                hits.append((x, y, f_at((x, y))))
    return hits


class SurfaceEngine:
    """
    SurfaceEngine: symbolic division, top-form checks, point search, witness
    reconstruction and the singular-point scan.
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()

    # -- symbolic division
    def compute_L(self, tail: MonicTail, budget: Optional[int] = None) -> HypersurfaceInstance:
        """
        Leading coefficient of f mod Pi, computed over the multivariate ring.

        Args:
            tail: Monic tail f (carries k, d and its field)
            budget: Max terms in any intermediate coefficient (None uses settings)

        Returns:
            HypersurfaceInstance with L and its degree-d top form
        """
        field, k, d = tail.field, tail.k, tail.d
        budget = self.settings.symbolic_term_budget if budget is None else budget
        v = k + 1
        # signed[i] is the x^(k+1-i) coefficient of Pi, i = 1..k+1
        signed = [None] + [
            elementary_symmetric(i, v, field) if i % 2 == 0 else -elementary_symmetric(i, v, field)
            for i in range(1, v + 1)
        ]

        rem = [MPoly.zero(field, v) for _ in range(k + d + 1)]
        rem[k + d] = MPoly.constant(field, v, 1)
        for i, c in enumerate(tail.coeffs):
            rem[k + i] = MPoly.constant(field, v, c)

        for top in range(k + d, k, -1):
            lead = rem[top]
            if lead.is_zero:
                continue
            rem[top] = MPoly.zero(field, v)
            for i in range(1, v + 1):
                rem[top - i] = rem[top - i] - lead * signed[i]
                if len(rem[top - i]) > budget:
                    raise BudgetExceededError("compute_L", len(rem[top - i]), budget)

        L = rem[k]
        instance = HypersurfaceInstance(
            field=field, k=k, d=d, coeffs=list(tail.coeffs), L=L, top_form=L.homogeneous_component(d)
        )
        logger.info(f"Computed L for k={k}, d={d} over {field}: {len(L)} terms")
        return instance

    def verify_top_form_independence(
        self,
        k: int,
        d: int,
        trials: int,
        field: FieldSpec,
        seed: Optional[int] = None,
        budget: Optional[int] = None,
    ) -> TopFormReport:
        """Compare the top form of L_f for random tails with the pure tail's."""
        seed = self.settings.default_seed if seed is None else seed
        rng = random.Random(seed)
        reference = self.compute_L(MonicTail.pure(field, k, d), budget=budget).top_form
        counterexamples = []
        for _ in range(trials):
            coeffs = tuple(rng.randrange(field.q) for _ in range(d))
            top = self.compute_L(MonicTail(field=field, k=k, d=d, coeffs=coeffs), budget=budget).top_form
            if top != reference:
                counterexamples.append(list(coeffs))
        return TopFormReport(
            field=field, k=k, d=d, trials=trials, seed=seed,
            all_equal=not counterexamples, counterexamples=counterexamples,
        )

    def chi_specialized(self, d: int, field: FieldSpec) -> MPoly:
        """sum_{i+j<=d} x1^i x2^j, built directly."""
        if d < 1:
            raise ValueError(f"d must be positive, got {d}")
        return bivariate_total_sum(d, field)

    def check_chi_specialization(self, d: int, k: int, field: FieldSpec) -> ChiReport:
        """Top form of the pure tail at (x1, x2, 1, 0, ..., 0) against the direct sum."""
        if k < 2:
            raise ValueError("the specialization needs k >= 2 (three or more variables)")
        top = self.compute_L(MonicTail.pure(field, k, d)).top_form
        assignment = {3: field.one}
        assignment.update({j: field.zero for j in range(4, k + 2)})
        specialized = top.substitute(assignment).select_variables([1, 2])
        direct = self.chi_specialized(d, field)
        return ChiReport(field=field, k=k, d=d, direct=direct, specialized=specialized, equal=specialized == direct)

    def verify_top_form_closed_form(self, k: int, d: int, field: FieldSpec) -> ClosedFormReport:
        """Does the pure tail's top form equal h_d(x1..x_{k+1})? Checked, never assumed."""
        top = self.compute_L(MonicTail.pure(field, k, d)).top_form
        expected = complete_homogeneous(d, k + 1, field)
        return ClosedFormReport(
            field=field, k=k, d=d, equal=top == expected,
            top_form_terms=len(top), expected_terms=len(expected),
        )

    # -- numeric counterparts
    def tail_polynomial(self, tail: MonicTail) -> UPoly:
        return UPoly(tail.field, [0] * tail.k + list(tail.coeffs) + [1])

    def leading_remainder_coefficient(self, tail: MonicTail, point: Sequence[int]) -> int:
        """x^k coefficient of f mod prod(x - point_i)."""
        if len(point) != tail.k + 1:
            raise ValueError(f"expected {tail.k + 1} coordinates, got {len(point)}")
        pi = UPoly.from_roots(tail.field, [tail.field.check(x) for x in point])
        return (self.tail_polynomial(tail) % pi).coefficient(tail.k)

    # -- point search
    def _candidates(
        self, field: FieldSpec, constraint: Constraint, within: Optional[Sequence[int]]
    ) -> List[int]:
        if constraint not in ("nonzero_distinct", "distinct_only"):
            raise ValueError(f"unknown constraint '{constraint}'")
        pool = sorted(set(field.check(x) for x in within)) if within is not None else list(field.encodings())
        if constraint == "nonzero_distinct":
            pool = [x for x in pool if x != 0]
        return pool

    def find_distinct_point(
        self,
        H: Union[HypersurfaceInstance, MPoly],
        constraint: Constraint = "nonzero_distinct",
        within: Optional[Sequence[int]] = None,
        mode: SearchMode = "exhaustive",
        attempts: Optional[int] = None,
        seed: Optional[int] = None,
        budget: Optional[int] = None,
        jobs: Optional[int] = None,
    ) -> PointSearchResult:
        """
        Find a zero of L with pairwise distinct (and optionally nonzero) coordinates.

        Exhaustive mode returns the lexicographically least such point by
        canonical encodings; random mode samples distinct tuples and re-verifies
        any hit by substitution.
        """
        poly = H.L if isinstance(H, HypersurfaceInstance) else H
        field, nvars = poly.field, poly.nvars
        candidates = self._candidates(field, constraint, within)
        result = PointSearchResult(
            field=field, nvars=nvars, constraint=constraint, mode=mode,
            within=sorted(set(within)) if within is not None else None,
        )
        if len(candidates) < nvars:
            logger.debug(f"Only {len(candidates)} candidates for {nvars} distinct coordinates")
            return result

        if mode == "random":
            attempts = self.settings.random_search_attempts if attempts is None else attempts
            seed = self.settings.default_seed if seed is None else seed
            rng = random.Random(seed)
            evaluate = poly.evaluator()
            result.seed = seed
            for i in range(attempts):
                point = rng.sample(candidates, nvars)
                if evaluate(point) == 0:
                    check = poly.substitute({j + 1: FieldElement(field, x) for j, x in enumerate(point)})
                    if check.value != 0:
                        raise RuntimeError(f"evaluator and substitution disagree at {point}")
                    result.point = point
                    result.candidates_examined = i + 1
                    return result
            result.candidates_examined = attempts
            logger.warning(f"Random search found no point in {attempts} attempts (seed {seed})")
            return result
        if mode != "exhaustive":
            raise ValueError(f"unknown search mode '{mode}'")

        limit = self.settings.point_search_budget if budget is None else budget
        check_budget("find_distinct_point", len(candidates) ** nvars, limit)
        jobs = jobs or self.settings.jobs
        tasks = [(poly, chunk, candidates, nvars) for chunk in split_range(candidates, max(jobs, 1))]
        examined = 0
        for point, seen in run_partitioned(_search_chunk, tasks, jobs=jobs):
            examined += seen
            if point is not None:
                result.point = list(point)
                break
        result.candidates_examined = examined
        logger.info(f"Point search over {field} ({constraint}): {result.point}")
        return result

    def witness_from_point(
        self,
        tail: MonicTail,
        point: Sequence[int],
        code: RSCode,
        t: Optional[UPoly] = None,
    ) -> WitnessResult:
        """
        Codeword generator g = t + (f mod Pi(point)) and its distance to the
        word generated by f + t.
        """
        field, k = tail.field, tail.k
        if code.field != field:
            raise FieldMismatchError(f"tail over {field}, code over {code.field}")
        if code.k != k:
            raise ValueError(f"code dimension {code.k} differs from tail k={k}")
        if len(point) != k + 1:
            raise ValueError(f"expected {k + 1} coordinates, got {len(point)}")
        if len(set(point)) != len(point):
            raise ValueError(f"repeated coordinates in {list(point)}")
        outside = [x for x in point if x not in code.eval_set]
        if outside:
            raise ValueError(f"coordinates {outside} are outside the evaluation set")
        t = t if t is not None else UPoly.zero(field)
        if t.field != field:
            raise FieldMismatchError(f"t over {t.field}, tail over {field}")
        if t.degree > k - 1:
            raise ValueError(f"t has degree {t.degree} > k-1 = {k - 1}")

        f = self.tail_polynomial(tail)
        remainder = f % UPoly.from_roots(field, point)
        if remainder.degree > k - 1:
            raise ValueError(f"L does not vanish at {list(point)}: remainder has degree {k}")

        generator = t + remainder
        word = [(f + t).evaluate(x) for x in code.eval_set]
        codeword = [generator.evaluate(x) for x in code.eval_set]
        distance = sum(1 for a, b in zip(word, codeword) if a != b)
        if distance > code.n - k - 1:
            raise RuntimeError(f"reconstructed codeword at distance {distance} > n-k-1")
        return WitnessResult(
            generator=generator, remainder=remainder, distance=distance, word=word, codeword=codeword
        )

    # -- smoothness
    def curve_smoothness_scan(
        self,
        d: int,
        p: int,
        e: int = 1,
        budget: Optional[int] = None,
        jobs: Optional[int] = None,
    ) -> SmoothnessReport:
        """
        Exhaustive singular-point scan of f = sum_{i+j<=d} x^i y^j over F_{p^e}.

        Also checks the line at infinity: no (x:y:0) may zero both the degree-d
        and the degree-(d-1) parts.
        """
        if d < 1:
            raise ValueError(f"d must be positive, got {d}")
        if not sympy.isprime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError(f"extension degree must be positive, got {e}")
        field = field_of_order(p**e)
        q = field.q
        check_budget("curve_smoothness_scan", q * q, self.settings.scan_budget if budget is None else budget)

        f = bivariate_total_sum(d, field)
        dx, dy = f.derivative(1), f.derivative(2)
        jobs = jobs or self.settings.jobs
        tasks = [(f, dx, dy, chunk, q) for chunk in split_range(list(range(q)), max(jobs, 1))]
        zeros = [hit for chunk in run_partitioned(_smoothness_chunk, tasks, jobs=jobs) for hit in chunk]

        top = f.homogeneous_component(d).evaluator()
        below = f.homogeneous_component(d - 1).evaluator()
        directions = [(1, y) for y in range(q)] + [(0, 1)]
        at_infinity = [pt for pt in directions if top(pt) == 0]
        infinity_singular = [pt for pt in at_infinity if below(pt) == 0]

        report = SmoothnessReport(
            field=field, d=d, p=p, e=e, points_scanned=q * q,
            partial_common_zeros=[PartialZero(x=x, y=y, value=val) for x, y, val in zeros],
            singular_points=[(x, y) for x, y, val in zeros if val == 0],
            infinity_points=at_infinity,
            infinity_singular=infinity_singular,
            p_divides_d_plus_1=(d + 1) % p == 0,
            p_divides_d_plus_2=(d + 2) % p == 0,
        )
        logger.info(
            f"Smoothness scan d={d} over {field}: {len(report.singular_points)} singular affine points, "
            f"{len(infinity_singular)} at infinity"
        )
        return report


# Global engine instance
_engine: Optional[SurfaceEngine] = None


def get_engine() -> SurfaceEngine:
    """Get the shared surface engine configured from global settings."""
    global _engine
    if _engine is None:
        _engine = SurfaceEngine()
    return _engine


def compute_L(tail: MonicTail, budget: Optional[int] = None) -> HypersurfaceInstance:
    return get_engine().compute_L(tail, budget=budget)


def verify_top_form_independence(
    k: int, d: int, trials: int, field: FieldSpec, seed: Optional[int] = None
) -> TopFormReport:
    return get_engine().verify_top_form_independence(k, d, trials, field, seed=seed)


def chi_specialized(d: int, field: FieldSpec) -> MPoly:
    return get_engine().chi_specialized(d, field)


def check_chi_specialization(d: int, k: int, field: FieldSpec) -> ChiReport:
    return get_engine().check_chi_specialization(d, k, field)


def verify_top_form_closed_form(k: int, d: int, field: FieldSpec) -> ClosedFormReport:
    return get_engine().verify_top_form_closed_form(k, d, field)


def tail_polynomial(tail: MonicTail) -> UPoly:
    return get_engine().tail_polynomial(tail)


def leading_remainder_coefficient(tail: MonicTail, point: Sequence[int]) -> int:
    return get_engine().leading_remainder_coefficient(tail, point)


def find_distinct_point(
    H: Union[HypersurfaceInstance, MPoly],
    constraint: Constraint = "nonzero_distinct",
    **options,
) -> PointSearchResult:
    return get_engine().find_distinct_point(H, constraint, **options)


def witness_from_point(
    tail: MonicTail, point: Sequence[int], code: RSCode, t: Optional[UPoly] = None
) -> WitnessResult:
    return get_engine().witness_from_point(tail, point, code, t)


def curve_smoothness_scan(
    d: int, p: int, e: int = 1, budget: Optional[int] = None, jobs: Optional[int] = None
) -> SmoothnessReport:
    return get_engine().curve_smoothness_scan(d, p, e, budget=budget, jobs=jobs)
