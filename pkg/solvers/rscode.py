"""
DeepHoleOracle - exact distance-to-code and deep-hole census for Reed-Solomon codes.

Two independent oracles:
  - codeword_enumeration: scan all q^k codewords.
  - subset_interpolation: agreement >= k+1 iff some (k+1)-subset of positions
    interpolates to degree <= k-1; otherwise a non-codeword has agreement k.
Both break ties the same way (least padded ascending coefficient vector), so
they return the same witness.
"""
from itertools import combinations, product
from math import comb
from typing import Dict, Iterator, List, Literal, Optional, Sequence, Tuple

from loguru import logger

from algebra.gf import FieldElement, FieldSpec
from algebra.upoly import UPoly, interpolate_encodings
from models.code_schema import (
    CodeDescriptor,
    DeepHoleCensus,
    DeepHoleVerdict,
    ReceivedWord,
    RSCode,
)
from utils.config import Settings, get_settings
from utils.errors import FieldMismatchError, check_budget
from utils.parallel import run_partitioned

OracleChoice = Literal["auto", "subset_interpolation", "codeword_enumeration"]
CensusRow = Tuple[int, int, bool]


def _evaluate_all(field: FieldSpec, coeffs: Sequence[int], xs: Sequence[int]) -> Tuple[int, ...]:
    """Values of sum(coeffs[i] x^i) at every x (Horner)."""
    out = []
    for x in xs:
        acc = 0
        for c in reversed(coeffs):
            acc = field.add(field.mul(acc, x), c)
        out.append(acc)
    return tuple(out)


def _agreement(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(1 for u, v in zip(a, b) if u == v)


def _witness_key(poly: UPoly, k: int) -> Tuple[int, ...]:
    return tuple(poly.coefficient(i) for i in range(k))


def _codeword_table(field: FieldSpec, xs: Sequence[int], k: int) -> List[Tuple[int, ...]]:
    """Every codeword, messages in lexicographic order of (a_0, ..., a_{k-1})."""
    return [_evaluate_all(field, msg, xs) for msg in product(range(field.q), repeat=k)]


def _top_divided_difference(field: FieldSpec, xs: Sequence[int], ys: Sequence[int]) -> int:
    """Coefficient of x^(len-1) in the interpolant: sum y_i / prod_{j != i}(x_i - x_j)."""
    total = 0
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        denom = 1
        for j, xj in enumerate(xs):
            if j != i:
                denom = field.mul(denom, field.sub(xi, xj))
        total = field.add(total, field.div(yi, denom))
    return total


def _census_slice(task: Tuple[FieldSpec, Tuple[int, ...], int, int]) -> bytearray:
    """
    Maximum agreement with the code for every word whose first symbol is `v`.

    Index of a word in the slice: sum_{i>=1} w_i q^(i-1). Words agreeing with a
    codeword on a t-set S are marked t, for t = k+1..n in increasing order, so
    the final mark is the maximum agreement; unmarked words keep k.
    """
    field, xs, k, v = task
    q, n = field.q, len(xs)
    codewords = _codeword_table(field, xs, k)
    agree = bytearray([k]) * (q ** (n - 1))
    weights = [0] + [q ** (i - 1) for i in range(1, n)]
    for t in range(k + 1, n + 1):
        for subset in combinations(range(n), t):
            free = [j for j in range(n) if j not in subset and j != 0]
            offsets = [
                sum(val * weights[j] for val, j in zip(vals, free))
                for vals in product(range(q), repeat=len(free))
            ]
            fixed = [i for i in subset if i != 0]
            needs_first = 0 in subset
            for cw in codewords:
                if needs_first and cw[0] != v:
                    continue
                base = sum(cw[i] * weights[i] for i in fixed)
                for off in offsets:
                    agree[base + off] = t
    return agree


class DeepHoleOracle:
    """
    DeepHoleOracle: decide deep holes exactly within configured work budgets.
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()

    # -- codes and words
    def encode(self, code: RSCode, message: Sequence[FieldElement]) -> ReceivedWord:
        """Evaluate f = a_k x^(k-1) + ... + a_1 over the evaluation set."""
        if len(message) != code.k:
            raise ValueError(f"message length {len(message)} != k = {code.k}")
        for a in message:
            if a.field != code.field:
                raise FieldMismatchError(f"message symbol from {a.field}, code over {code.field}")
        return code.word(_evaluate_all(code.field, [a.value for a in message], code.eval_set))

    def word_poly(self, code: RSCode, w: ReceivedWord) -> UPoly:
        """The interpolant of degree < n generating w."""
        self._check_word(code, w)
        return interpolate_encodings(code.field, code.eval_set, w.values)

    def word_from_poly(self, code: RSCode, g: UPoly) -> ReceivedWord:
        if g.field != code.field:
            raise FieldMismatchError(f"polynomial over {g.field}, code over {code.field}")
        if g.degree >= code.n:
            raise ValueError(f"degree {g.degree} >= n = {code.n}; reduce the generator first")
        return code.word(_evaluate_all(code.field, g.coeffs, code.eval_set))

    def _check_word(self, code: RSCode, w: ReceivedWord) -> None:
        if w.code != code:
            raise ValueError(f"word belongs to {w.code.describe()}, not {code.describe()}")

    # -- oracles
    def subset_work(self, code: RSCode) -> int:
        return max(comb(code.n, code.k), comb(code.n, code.k + 1))

    def enumeration_work(self, code: RSCode) -> int:
        return code.field.q ** code.k

    def choose_oracle(self, code: RSCode) -> str:
        """The cheaper oracle that fits its budget."""
        subset_work = self.subset_work(code)
        enum_work = self.enumeration_work(code)
        subset_ok = subset_work <= self.settings.subset_interpolation_budget
        enum_ok = enum_work <= self.settings.codeword_enumeration_budget
        if subset_ok and (not enum_ok or subset_work <= enum_work):
            return "subset_interpolation"
        if enum_ok:
            return "codeword_enumeration"
        check_budget("subset_interpolation", subset_work, self.settings.subset_interpolation_budget)
        return "subset_interpolation"

    def distance_to_code(
        self,
        code: RSCode,
        w: ReceivedWord,
        oracle: OracleChoice = "auto",
        budget: Optional[int] = None,
    ) -> DeepHoleVerdict:
        """
        Exact minimum Hamming distance from `w` to the code.

        Args:
            code: The code
            w: Received word of the code
            oracle: Oracle name, or "auto" for choose_oracle
            budget: Work budget override (None uses settings)

        Returns:
            DeepHoleVerdict with the nearest codeword's generator as witness
        """
        self._check_word(code, w)
        if oracle == "auto":
            oracle = self.choose_oracle(code)
        if oracle == "codeword_enumeration":
            limit = self.settings.codeword_enumeration_budget if budget is None else budget
            check_budget(oracle, self.enumeration_work(code), limit)
            agreement, witness = self._enumerate(code, w)
        elif oracle == "subset_interpolation":
            limit = self.settings.subset_interpolation_budget if budget is None else budget
            check_budget(oracle, self.subset_work(code), limit)
            agreement, witness = self._subsets(code, w)
        else:
            raise ValueError(f"unknown oracle '{oracle}'")

        distance = code.n - agreement
        verdict = DeepHoleVerdict(
            n=code.n,
            k=code.k,
            distance=distance,
            max_agreement=agreement,
            is_deep_hole=distance == code.n - code.k,
            witness=witness,
            oracle=oracle,
        )
        logger.debug(f"{code.describe()} word {list(w.values)}: distance {distance} via {oracle}")
        return verdict

    def _enumerate(self, code: RSCode, w: ReceivedWord) -> Tuple[int, UPoly]:
        field = code.field
        best, best_msg = -1, None
        for msg in product(range(field.q), repeat=code.k):
            a = _agreement(_evaluate_all(field, msg, code.eval_set), w.values)
            if a > best:
                best, best_msg = a, msg
                if a == code.n:
                    break
        return best, UPoly(field, best_msg)

    def _subsets(self, code: RSCode, w: ReceivedWord) -> Tuple[int, UPoly]:
        field, xs, ys, k = code.field, code.eval_set, w.values, code.k
        full = interpolate_encodings(field, xs, ys)
        if full.degree <= k - 1:
            return code.n, full

        best: Optional[Tuple[Tuple[int, Tuple[int, ...]], UPoly]] = None
        seen: Dict[Tuple[int, ...], int] = {}
        for subset in combinations(range(code.n), k + 1):
            sx = [xs[i] for i in subset]
            sy = [ys[i] for i in subset]
            if _top_divided_difference(field, sx, sy) != 0:
                continue
            g = interpolate_encodings(field, sx, sy)
            key = _witness_key(g, k)
            if key in seen:
                continue
            a = _agreement(_evaluate_all(field, g.coeffs, xs), ys)
            seen[key] = a
            rank = (-a, key)
            if best is None or rank < best[0]:
                best = (rank, g)
        if best is not None:
            return -best[0][0], best[1]

        # No (k+1)-agreement: every codeword through k positions is nearest.
        witness = min(
            (interpolate_encodings(field, [xs[i] for i in s], [ys[i] for i in s])
             for s in combinations(range(code.n), k)),
            key=lambda g: _witness_key(g, k),
        )
        return k, witness

    def has_codeword_within(self, code: RSCode, w: ReceivedWord, radius: int) -> bool:
        """Is there a codeword at distance <= radius from w?"""
        return self.distance_to_code(code, w).distance <= radius

    # -- census
    def _agreement_table(self, code: RSCode, jobs: int) -> List[bytearray]:
        xs = tuple(code.eval_set)
        tasks = [(code.field, xs, code.k, v) for v in range(code.field.q)]
        return run_partitioned(_census_slice, tasks, jobs=jobs)

    def census_rows(
        self,
        code: RSCode,
        budget: Optional[int] = None,
        jobs: Optional[int] = None,
    ) -> Iterator[CensusRow]:
        """(word_encoding, distance, is_deep_hole) for every word, in encoding order."""
        q, n = code.field.q, code.n
        check_budget("census", q**n, self.settings.census_budget if budget is None else budget)
        slices = self._agreement_table(code, jobs or self.settings.jobs)
        return self._rows(code, slices)

    def _rows(self, code: RSCode, slices: List[bytearray]) -> Iterator[CensusRow]:
        q, n = code.field.q, code.n
        for enc in range(q**n):
            a = slices[enc % q][enc // q]
            yield enc, n - a, a == code.k

    def enumerate_deep_holes(
        self,
        code: RSCode,
        sample_size: Optional[int] = None,
        budget: Optional[int] = None,
        jobs: Optional[int] = None,
    ) -> DeepHoleCensus:
        """
        Exact deep-hole count over all q^n words.

        Args:
            code: The code
            sample_size: Representatives to keep (lowest encodings first)
            budget: Word budget override
            jobs: Worker processes (partitioned on the first word symbol)

        Returns:
            DeepHoleCensus with counts, distance histogram and degree breakdown
        """
        field, q, n, k = code.field, code.field.q, code.n, code.k
        sample_size = self.settings.census_sample_size if sample_size is None else sample_size
        jobs = jobs or self.settings.jobs

        count = 0
        histogram: Dict[int, int] = {}
        by_degree: Dict[int, int] = {}
        samples: List[List[int]] = []
        for enc, distance, deep in self.census_rows(code, budget=budget, jobs=jobs):
            histogram[distance] = histogram.get(distance, 0) + 1
            if not deep:
                continue
            count += 1
            values = [(enc // q**i) % q for i in range(n)]
            degree = interpolate_encodings(field, code.eval_set, values).degree
            by_degree[degree] = by_degree.get(degree, 0) + 1
            if len(samples) < sample_size:
                samples.append(values)

        bound = (q - 1) * q**k
        census = DeepHoleCensus(
            code=CodeDescriptor.from_code(code),
            flavor=code.flavor,
            n=n,
            total_words=q**n,
            count=count,
            corollary_bound=bound,
            meets_corollary=count >= bound,
            distance_histogram=histogram,
            by_degree=by_degree,
            samples=samples,
            elapsed_work=q**n,
            jobs=jobs,
        )
        logger.info(f"Census {code.describe()}: {count} deep holes (corollary bound {bound})")
        if not census.only_degree_k:
            logger.info(f"Deep holes with generator degree other than k={k}: {sorted(by_degree)}")
        return census


# Global oracle instance
_oracle: Optional[DeepHoleOracle] = None


def get_oracle() -> DeepHoleOracle:
    """Get the shared oracle configured from global settings."""
    global _oracle
    if _oracle is None:
        _oracle = DeepHoleOracle()
    return _oracle


def encode(code: RSCode, message: Sequence[FieldElement]) -> ReceivedWord:
    return get_oracle().encode(code, message)


def word_poly(code: RSCode, w: ReceivedWord) -> UPoly:
    return get_oracle().word_poly(code, w)


def word_from_poly(code: RSCode, g: UPoly) -> ReceivedWord:
    return get_oracle().word_from_poly(code, g)


def choose_oracle(code: RSCode) -> str:
    return get_oracle().choose_oracle(code)


def distance_to_code(
    code: RSCode,
    w: ReceivedWord,
    oracle: OracleChoice = "auto",
    budget: Optional[int] = None,
) -> DeepHoleVerdict:
    return get_oracle().distance_to_code(code, w, oracle=oracle, budget=budget)


def has_codeword_within(code: RSCode, w: ReceivedWord, radius: int) -> bool:
    return get_oracle().has_codeword_within(code, w, radius)


def enumerate_deep_holes(
    code: RSCode,
    sample_size: Optional[int] = None,
    budget: Optional[int] = None,
    jobs: Optional[int] = None,
) -> DeepHoleCensus:
    return get_oracle().enumerate_deep_holes(code, sample_size=sample_size, budget=budget, jobs=jobs)


def census_rows(code: RSCode, budget: Optional[int] = None, jobs: Optional[int] = None) -> Iterator[CensusRow]:
    return get_oracle().census_rows(code, budget=budget, jobs=jobs)
