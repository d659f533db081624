"""
End-to-end acceptance run over small fields.

Run directly (python test_acceptance.py) for a [PASS] line per check, or
through pytest.
"""
import random
import time
from itertools import product

from algebra.gf import field_make, field_of_order
from algebra.mpoly import bivariate_total_sum
from algebra.upoly import UPoly
from models.code_schema import RSCode
from models.reduction_schema import SubsetSumInstance
from models.surface_schema import MonicTail
from solvers.bounds import cafure_matera_lower, exact_point_count, schmidt_upper, theorem_margin
from solvers.reduction import verify_equivalence
from solvers.rscode import distance_to_code, enumerate_deep_holes
from solvers.surface import (
    check_chi_specialization,
    compute_L,
    curve_smoothness_scan,
    find_distinct_point,
    verify_top_form_independence,
    witness_from_point,
)


def test_oracle_equivalence():
    """Both oracles agree on all 625 words of [4,2]_5."""
    print("Testing oracle equivalence...")
    code = RSCode.standard(field_make(5), 2)
    for values in product(range(5), repeat=4):
        word = code.word(values)
        a = distance_to_code(code, word, oracle="subset_interpolation")
        b = distance_to_code(code, word, oracle="codeword_enumeration")
        assert a.distance == b.distance <= 2, values
    print("[PASS] 625 words, identical distances")


def test_deep_hole_census():
    print("\nTesting deep-hole censuses...")
    census = enumerate_deep_holes(RSCode.generalized(field_make(3), [1, 2], 1))
    assert census.count == 6 == census.corollary_bound
    print("[PASS] [2,1]_3 has exactly 6 deep holes")

    census = enumerate_deep_holes(RSCode.generalized(field_of_order(4), [0, 1, 2], 1))
    assert census.count >= 12
    print(f"[PASS] [3,1]_4 has {census.count} >= 12 deep holes")


def test_degree_k_words_are_deep_holes():
    print("\nTesting degree-k generators...")
    for q in (5, 7):
        F = field_make(q)
        code = RSCode.standard(F, 2)
        for a, b in product(range(q), repeat=2):
            g = UPoly(F, [b, a, 1])
            verdict = distance_to_code(code, code.word([g.evaluate(x) for x in code.eval_set]))
            assert verdict.is_deep_hole, (q, a, b)
        print(f"[PASS] every x^2 + ax + b is a deep hole of [{q - 1},2]_{q}")


def test_degree_k_plus_one_words_on_full_field():
    print("\nTesting degree-(k+1) generators on extended codes...")
    for q in (5, 7):
        F = field_make(q)
        code = RSCode.extended(F, 2)
        for lead in range(1, q):
            for c0, c1, c2 in product(range(q), repeat=3):
                g = UPoly(F, [c0, c1, c2, lead])
                verdict = distance_to_code(code, code.word([g.evaluate(x) for x in code.eval_set]))
                assert verdict.distance <= code.n - code.k - 1, (q, g)
        print(f"[PASS] no degree-3 word is a deep hole of [{q},2]_{q}")


def test_chi_specialization():
    print("\nTesting the specialized top form over F_101...")
    F = field_make(101)
    start = time.time()
    for d in range(1, 7):
        for k in range(2, 6):
            assert check_chi_specialization(d, k, F).equal, (d, k)
    print(f"[PASS] d in 1..6, k in 2..5 ({time.time() - start:.1f}s)")


def test_top_form_independence():
    print("\nTesting top-form independence...")
    for q in (101, 7):
        F = field_make(q)
        for k, d in product(range(1, 5), repeat=2):
            report = verify_top_form_independence(k, d, 20, F, seed=k * 10 + d)
            assert report.all_equal, (q, k, d, report.counterexamples)
        print(f"[PASS] F_{q}: 20 random tails per (k, d)")


def test_curve_smoothness():
    """Only (1, 1) can be singular, and only when p divides f(1, 1) and its partials."""
    print("\nTesting smoothness of sum x^i y^j...")
    for d, p, e in product((2, 3, 4), (5, 7, 11, 13), (1, 2)):
        report = curve_smoothness_scan(d, p, e)
        at_one = (d + 1) * (d + 2) // 2 % p == 0 and d * (d + 1) * (d + 2) // 6 % p == 0
        assert report.singular_points == ([(1, 1)] if at_one else []), (d, p, e)
        assert report.infinity_singular == [], (d, p, e)
    print("[PASS] singular only at (1, 1) for d in {3, 4}, p = 5; smooth elsewhere")


def test_bound_values():
    print("\nTesting bound arithmetic...")
    report = theorem_margin(401, 2, 1, "published")
    assert report.margin == 4812 and report.applies
    print("[PASS] margin(401, 2, 1) = 4812")
    assert cafure_matera_lower(103, 2, 2) == 2
    print("[PASS] Cafure-Matera lower bound (103, 2, 2) = 2")
    assert schmidt_upper(7, 3, 4) == 2688
    print("[PASS] Schmidt upper bound (7, 3, 4) = 2688")


def test_pipeline_soundness():
    """Every point found on L yields a codeword the oracle confirms."""
    print("\nTesting point -> witness -> oracle pipeline...")
    rng = random.Random(11)
    found = 0
    for q in (3, 4, 5, 7, 8, 9, 11):
        F = field_of_order(q)
        for k, d in product((1, 2, 3), (1, 2)):
            if k >= q - 1:
                continue
            code = RSCode.standard(F, k)
            for _ in range(20):
                tail = MonicTail(field=F, k=k, d=d, coeffs=tuple(rng.randrange(q) for _ in range(d)))
                result = find_distinct_point(compute_L(tail), within=code.eval_set)
                if not result.found:
                    continue
                witness = witness_from_point(tail, result.point, code)
                assert witness.distance <= code.n - k - 1
                verdict = distance_to_code(code, code.word(witness.word), oracle="codeword_enumeration")
                assert not verdict.is_deep_hole, (q, k, tail.coeffs)
                found += 1
    print(f"[PASS] {found} witnesses confirmed by the exhaustive oracle")


def test_subset_sum_reduction():
    print("\nTesting the subset-sum reduction...")
    F8 = field_of_order(8)
    for b in range(8):
        inst = SubsetSumInstance(field=F8, elements=(1, 2, 4), target=b, size=2)
        assert verify_equivalence(inst).equivalence_holds, b
    print("[PASS] A = {1, t, t^2}, every b in F_8")

    F16 = field_of_order(16)
    rng = random.Random(50)
    for _ in range(50):
        size = rng.choice([2, 3])
        elements = tuple(rng.sample(range(16), rng.randint(size + 1, 5)))
        inst = SubsetSumInstance(field=F16, elements=elements, target=rng.randrange(16), size=size)
        assert verify_equivalence(inst).equivalence_holds, inst
    print("[PASS] 50 random instances over F_16")


def test_exact_counts_meet_lower_bound():
    print("\nTesting exact counts against the lower bound...")
    for q in (103, 127, 251):
        F = field_make(q)
        count = exact_point_count(bivariate_total_sum(2, F), F, "none")
        bound = cafure_matera_lower(q, 2, 2)
        assert count >= bound, (q, count, bound)
        print(f"[PASS] q={q}: {count} points >= {bound}")


if __name__ == "__main__":
    print("=" * 60)
    print("DEEP-HOLE TOOLKIT ACCEPTANCE RUN")
    print("=" * 60)

    try:
        test_oracle_equivalence()
        test_deep_hole_census()
        test_degree_k_words_are_deep_holes()
        test_degree_k_plus_one_words_on_full_field()
        test_chi_specialization()
        test_top_form_independence()
        test_curve_smoothness()
        test_bound_values()
        test_pipeline_soundness()
        test_subset_sum_reduction()
        test_exact_counts_meet_lower_bound()

        print("\n" + "=" * 60)
        print("[SUCCESS] ALL CHECKS PASSED!")
        print("=" * 60)
    except AssertionError as e:
        print(f"\n[FAIL] CHECK FAILED: {e}")
