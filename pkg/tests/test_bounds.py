"""
Tests for the point-count bounds and exact counts.
"""
import mpmath
import pytest

from algebra.gf import field_make, field_of_order
from algebra.mpoly import bivariate_total_sum, variables
from solvers.bounds import (
    BoundCalculator,
    cafure_matera_lower,
    cafure_matera_terms,
    ceil_root,
    distinctness_degree,
    is_prime_power,
    schmidt_upper,
)
from models.surface_schema import MonicTail
from solvers.surface import SurfaceEngine
from utils.config import Settings
from utils.errors import BudgetExceededError, FieldMismatchError


@pytest.fixture
def calculator():
    return BoundCalculator(Settings())


def test_published_margin_at_401(calculator):
    report = calculator.theorem_margin(401, 2, 1, "published")
    assert report.margin == 4812
    assert report.applies
    assert report.distinctness_degree == 4
    assert report.terms.main == 401**2
    assert report.terms.weil == 0
    assert report.terms.d13 == 5 * 401
    assert report.terms.common_zero == 2 * 3 * 4**3 * 401


def test_margin_is_zero_at_389(calculator):
    """For k = 2, d = 1 (published) the margin is q(q - 389)."""
    report = calculator.theorem_margin(389, 2, 1, "published")
    assert report.margin == 0
    assert not report.applies


def test_default_variant_is_corrected(calculator):
    report = calculator.theorem_margin(401, 2, 1)
    assert report.variant == "corrected"
    assert report.distinctness_degree == 6
    assert not report.applies


def test_certified_threshold(calculator):
    assert calculator.certified_threshold(2, 1, "published").q == 397
    corrected = calculator.certified_threshold(2, 1, "corrected")
    assert corrected.q == 1303
    assert corrected.report.applies


def test_certified_threshold_limit(calculator):
    report = calculator.certified_threshold(2, 1, "published", limit=390)
    assert report.q is None
    assert report.report is None


def test_cafure_matera_lower_values():
    assert cafure_matera_lower(103, 2, 2) == 2
    assert cafure_matera_lower(7, 2, 1) == 2
    assert cafure_matera_lower(53, 2, 2) == -48


def test_schmidt_upper_values():
    assert schmidt_upper(7, 3, 4) == 2688
    assert schmidt_upper(5, 2, 3) == 108


@pytest.mark.parametrize("q,n,d", [(103, 2, 3), (103, 3, 4), (101, 3, 5), (127, 2, 6)])
def test_rounded_terms_match_high_precision(q, n, d):
    """Integer-root rounding agrees with a 60-digit evaluation."""
    main, weil, d13 = cafure_matera_terms(q, n, d)
    assert main == q ** (n - 1)
    with mpmath.workdps(60):
        assert weil == int(mpmath.ceil((d - 1) * (d - 2) * mpmath.mpf(q) ** (n - mpmath.mpf(3) / 2)))
        assert d13 == int(mpmath.ceil(5 * mpmath.mpf(d) ** (mpmath.mpf(13) / 3) * mpmath.mpf(q) ** (n - 2)))


def test_invalid_bound_inputs():
    with pytest.raises(ValueError):
        cafure_matera_lower(12, 2, 2)
    with pytest.raises(ValueError):
        cafure_matera_lower(7, 1, 2)
    with pytest.raises(ValueError):
        schmidt_upper(6, 2, 2)
    with pytest.raises(ValueError):
        distinctness_degree(2, "other")


def test_distinctness_degree():
    assert distinctness_degree(2, "published") == 4
    assert distinctness_degree(2, "corrected") == 6
    assert distinctness_degree(3, "corrected") == 10


def test_helpers():
    assert is_prime_power(8)
    assert is_prime_power(101)
    assert not is_prime_power(12)
    assert not is_prime_power(1)
    assert ceil_root(27, 3) == 3
    assert ceil_root(28, 3) == 4
    assert ceil_root(0, 2) == 0


def test_exact_point_counts(calculator):
    """x1 + x2 + x3: 25 zeros over F_5, none distinct nonzero; 12 over F_7."""
    F5, F7 = field_make(5), field_make(7)
    x1, x2, x3 = variables(F5, 3)
    assert calculator.exact_point_count(x1 + x2 + x3, F5) == 25
    assert calculator.exact_point_count(x1 + x2 + x3, F5, "nonzero_distinct") == 0
    y1, y2, y3 = variables(F7, 3)
    assert calculator.exact_point_count(y1 + y2 + y3, F7, "nonzero_distinct") == 12


def test_exact_count_meets_lower_bound(calculator):
    F = field_make(103)
    count = calculator.exact_point_count(bivariate_total_sum(2, F), F)
    assert count >= cafure_matera_lower(103, 2, 2)


def test_exact_count_parallel(calculator):
    F = field_make(11)
    curve = bivariate_total_sum(3, F)
    assert calculator.exact_point_count(curve, F, jobs=1) == calculator.exact_point_count(curve, F, jobs=2)


def test_exact_count_rejects_mismatch(calculator):
    F5, F7 = field_make(5), field_make(7)
    with pytest.raises(FieldMismatchError):
        calculator.exact_point_count(bivariate_total_sum(2, F5), F7)
    with pytest.raises(ValueError):
        calculator.exact_point_count(bivariate_total_sum(2, F5), F5, "distinct")


def test_zero_scan_budget_is_not_the_default(calculator):
    F = field_make(5)
    with pytest.raises(BudgetExceededError):
        calculator.exact_point_count(bivariate_total_sum(1, F), F, budget=0)


@pytest.mark.parametrize("variant", ["published", "corrected"])
@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("q", [401, 1009])
def test_margin_terms_match_high_precision(calculator, q, k, d, variant):
    """Every rounded margin term is the ceiling of its 60-digit value."""
    report = calculator.theorem_margin(q, k, d, variant)
    degree = distinctness_degree(k, variant)
    with mpmath.workdps(60):
        Q = mpmath.mpf(q)
        weil = mpmath.ceil((d - 1) * (d - 2) * Q ** (k - mpmath.mpf(1) / 2))
        d13 = mpmath.ceil(5 * mpmath.mpf(d) ** (mpmath.mpf(13) / 3) * Q ** (k - 1))
    assert report.terms.weil == int(weil)
    assert report.terms.d13 == int(d13)
    assert report.terms.common_zero == 2 * (k + 1) * max(d, degree) ** 3 * q ** (k - 1)
    assert report.margin == q**k - int(weil) - int(d13) - report.terms.common_zero


@pytest.mark.parametrize("variant,threshold", [("published", 41), ("corrected", 121)])
def test_margin_applies_so_points_exist(calculator, variant, threshold):
    """k = 1, d = 1: L = x1 + x2 has q - 1 nonzero distinct zeros for odd q past the threshold."""
    engine = SurfaceEngine(Settings())
    assert calculator.certified_threshold(1, 1, variant).q == threshold
    for q in [q for q in range(threshold, threshold + 13) if q % 2 and is_prime_power(q)]:
        assert calculator.theorem_margin(q, 1, 1, variant).applies
        F = field_of_order(q)
        for f0 in (0, 3):
            L = engine.compute_L(MonicTail(field=F, k=1, d=1, coeffs=(f0,))).L
            assert calculator.exact_point_count(L, F, "nonzero_distinct") == q - 1, (q, f0)


def test_margin_for_k_one_is_not_a_certificate(calculator):
    """For k = 1 the margin is no certificate: x^3 on F_137 has L = x1^2 + x1 x2 + x2^2."""
    assert calculator.theorem_margin(137, 1, 2, "published").applies
    F = field_make(137)
    L = SurfaceEngine(Settings()).compute_L(MonicTail.pure(F, 1, 2)).L
    assert calculator.exact_point_count(L, F, "nonzero_distinct") == 0


def _prime_powers_from(start, count):
    found, q = [], start
    while len(found) < count:
        if is_prime_power(q):
            found.append(q)
        q += 1
    return found


@pytest.mark.parametrize("variant", ["published", "corrected"])
@pytest.mark.parametrize("k,d", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_margin_increases_past_the_threshold(calculator, k, d, variant):
    start = calculator.certified_threshold(k, d, variant).q
    margins = [calculator.theorem_margin(q, k, d, variant).margin for q in _prime_powers_from(start, 50)]
    assert margins == sorted(margins)
    assert margins[0] > 0


def test_margin_decreases_below_the_threshold(calculator):
    """Corrected k = 2, d = 1 has margin q(q - 1301), falling until q is about 650."""
    assert calculator.theorem_margin(401, 2, 1, "corrected").margin == 401 * (401 - 1301)
    assert calculator.theorem_margin(401, 2, 1, "corrected").margin > calculator.theorem_margin(499, 2, 1, "corrected").margin
