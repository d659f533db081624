"""
Tests for the subset-sum reduction.
"""
import random

import pytest

from algebra.gf import field_make, field_of_order
from models.reduction_schema import SubsetSumInstance
from solvers.reduction import SubsetSumReducer
from solvers.rscode import DeepHoleOracle
from utils.config import Settings
from utils.errors import BudgetExceededError

F8 = field_of_order(8)


@pytest.fixture
def reducer():
    settings = Settings()
    return SubsetSumReducer(settings, DeepHoleOracle(settings))


def _instance(field, elements, target, size):
    return SubsetSumInstance(field=field, elements=tuple(elements), target=target, size=size)


def test_instance_construction(reducer):
    """A = {1, t, t^2}, s = 2 gives the [3, 1] code on A and the word of x^2 + b x."""
    inst = _instance(F8, [1, 2, 4], 3, 2)
    code, word = reducer.subset_sum_to_deephole(inst)
    assert code.eval_set == (1, 2, 4)
    assert code.k == 1
    assert code.flavor == "generalized"
    assert list(word.values) == [F8.add(F8.mul(a, a), F8.mul(3, a)) for a in (1, 2, 4)]


def test_subset_exists_so_not_a_deep_hole(reducer):
    """1 + t = 3 in F_8."""
    report = reducer.verify_equivalence(_instance(F8, [1, 2, 4], 3, 2))
    assert report.subset == [1, 2]
    assert report.subset_exists
    assert not report.deep_hole
    assert report.equivalence_holds


def test_no_subset_so_a_deep_hole(reducer):
    report = reducer.verify_equivalence(_instance(F8, [1, 2, 4], 7, 2))
    assert report.subset is None
    assert report.deep_hole
    assert report.verdict.distance == 2
    assert report.equivalence_holds


def test_every_target_in_f8(reducer):
    for b in range(8):
        report = reducer.verify_equivalence(_instance(F8, [1, 2, 4], b, 2))
        assert report.equivalence_holds
        assert report.subset_exists == (b in (3, 5, 6))


def test_odd_characteristic_uses_negated_target(reducer):
    """Over F_7 the subset must sum to -b: b = 4 needs a pair summing to 3."""
    report = reducer.verify_equivalence(_instance(field_make(7), [1, 2, 3, 5], 4, 2))
    assert report.required_sum == 3
    assert report.subset == [1, 2]
    assert report.equivalence_holds


def test_random_instances_over_f16(reducer):
    F16 = field_of_order(16)
    rng = random.Random(2024)
    for _ in range(15):
        size = rng.choice([2, 3])
        elements = rng.sample(range(16), rng.randint(size + 1, 5))
        report = reducer.verify_equivalence(_instance(F16, elements, rng.randrange(16), size))
        assert report.equivalence_holds


def test_instance_validation(reducer):
    with pytest.raises(ValueError):
        _instance(F8, [1, 1, 2], 3, 2)
    with pytest.raises(ValueError):
        _instance(F8, [1, 2, 4], 3, 1)
    with pytest.raises(ValueError):
        _instance(F8, [1, 2, 9], 3, 2)
    with pytest.raises(ValueError):
        reducer.subset_sum_to_deephole(_instance(F8, [1, 2, 4], 3, 3))


def test_instance_json_alias():
    inst = SubsetSumInstance.model_validate({"field": {"p": 5}, "set": [1, 2, 3], "target": 1, "size": 2})
    assert inst.elements == (1, 2, 3)
    assert inst.model_dump(by_alias=True)["set"] == (1, 2, 3)


def test_reduction_budget():
    settings = Settings(reduction_budget=2)
    reducer = SubsetSumReducer(settings, DeepHoleOracle(settings))
    with pytest.raises(BudgetExceededError):
        reducer.verify_equivalence(_instance(F8, [1, 2, 4], 3, 2))


def test_zero_budget_is_not_the_default(reducer):
    with pytest.raises(BudgetExceededError):
        reducer.verify_equivalence(_instance(F8, [1, 2, 4], 3, 2), budget=0)


def test_odd_characteristic_over_f5(reducer):
    """Over F_5 with A = {1, 2, 4}: b = 2 needs a pair summing to 3, b = 1 one summing to 4."""
    F5 = field_make(5)
    report = reducer.verify_equivalence(_instance(F5, [1, 2, 4], 2, 2))
    assert report.required_sum == 3
    assert report.subset == [1, 2]
    assert not report.deep_hole
    assert report.equivalence_holds

    report = reducer.verify_equivalence(_instance(F5, [1, 2, 4], 1, 2))
    assert report.required_sum == 4
    assert report.subset is None
    assert report.deep_hole
    assert report.equivalence_holds


def test_enlarging_the_set_keeps_non_deep_holes(reducer):
    """Adding an element to A can create a subset but never remove one."""
    F16 = field_of_order(16)
    rng = random.Random(77)
    for _ in range(25):
        size = rng.choice([2, 3])
        elements = rng.sample(range(16), rng.randint(size + 1, 4))
        extra = rng.choice([x for x in range(16) if x not in elements])
        target = rng.randrange(16)
        small = reducer.verify_equivalence(_instance(F16, elements, target, size))
        large = reducer.verify_equivalence(_instance(F16, elements + [extra], target, size))
        assert small.equivalence_holds and large.equivalence_holds
        if not small.deep_hole:
            assert not large.deep_hole, (elements, extra, target, size)
