"""
Tests for the pydantic schemas and their JSON forms.
"""
import pytest

from algebra.gf import field_make, field_of_order
from algebra.mpoly import MPoly
from algebra.upoly import UPoly
from models.bounds_schema import BoundReport, BoundTerms
from models.code_schema import CodeDescriptor, DeepHoleVerdict, RSCode
from models.payloads import MPolyPayload, UPolyPayload
from models.surface_schema import HypersurfaceInstance, MonicTail
from solvers.surface import SurfaceEngine
from utils.config import Settings

F5 = field_make(5)
F7 = field_make(7)


def test_code_flavors():
    assert RSCode.standard(F5, 2).flavor == "standard"
    assert RSCode.extended(F5, 2).flavor == "extended"
    assert RSCode.generalized(F5, [0, 2, 4], 1).flavor == "generalized"
    assert RSCode.standard(F5, 2).describe() == "[4,2]_5 standard"
    assert RSCode.standard(F5, 2).covering_radius == 2


def test_code_validation():
    with pytest.raises(ValueError):
        RSCode.generalized(F5, [1, 1, 2], 1)
    with pytest.raises(ValueError):
        RSCode.generalized(F5, [1, 2], 2)
    with pytest.raises(ValueError):
        RSCode.generalized(F5, [1, 2], 0)
    with pytest.raises(ValueError):
        RSCode.generalized(F5, [1, 7], 1)


def test_code_descriptor_round_trip():
    F8 = field_of_order(8)
    for code in [RSCode.standard(F8, 3), RSCode.extended(F8, 2), RSCode.generalized(F8, [5, 1, 2], 1)]:
        descriptor = CodeDescriptor.from_code(code)
        restored = CodeDescriptor.model_validate_json(descriptor.model_dump_json()).to_code()
        assert restored == code
    assert CodeDescriptor.from_code(RSCode.standard(F8, 3)).eval_set == "star"


def test_verdict_invariants():
    """Distance, agreement and the deep-hole flag must agree."""
    witness = UPoly(F5, [1])
    DeepHoleVerdict(n=4, k=2, distance=2, max_agreement=2, is_deep_hole=True, witness=witness, oracle="subset_interpolation")
    with pytest.raises(ValueError):
        DeepHoleVerdict(n=4, k=2, distance=2, max_agreement=2, is_deep_hole=False, witness=witness, oracle="subset_interpolation")
    with pytest.raises(ValueError):
        DeepHoleVerdict(n=4, k=2, distance=3, max_agreement=1, is_deep_hole=False, witness=witness, oracle="subset_interpolation")
    with pytest.raises(ValueError):
        DeepHoleVerdict(
            n=4, k=2, distance=1, max_agreement=3, is_deep_hole=False,
            witness=UPoly(F5, [0, 0, 1]), oracle="codeword_enumeration",
        )


def test_verdict_json_uses_deep_hole_key():
    verdict = DeepHoleVerdict(
        n=4, k=2, distance=2, max_agreement=2, is_deep_hole=True,
        witness=UPoly(F5, [1]), oracle="subset_interpolation",
    )
    data = verdict.model_dump(mode="json", by_alias=True)
    assert data["deep_hole"] is True
    assert data["witness"] == {"field": {"p": 5, "m": 1, "modulus": None}, "coeffs": [1]}
    assert DeepHoleVerdict.model_validate(data) == verdict


def test_upoly_payload():
    poly = UPoly(field_of_order(9), [3, 0, 8])
    payload = UPolyPayload.from_poly(poly)
    assert UPolyPayload.model_validate_json(payload.model_dump_json()).to_poly() == poly


def test_mpoly_payload_term_order():
    P = MPoly(F7, 2, {(0, 0): 1, (0, 2): 3, (1, 1): 2})
    payload = MPolyPayload.from_poly(P)
    assert [t.exp for t in payload.terms] == [[1, 1], [0, 2], [0, 0]]
    assert payload.to_poly() == P


def test_hypersurface_instance_json_round_trip():
    instance = SurfaceEngine(Settings()).compute_L(MonicTail(field=F7, k=2, d=2, coeffs=(1, 4)))
    restored = HypersurfaceInstance.model_validate_json(instance.model_dump_json())
    assert restored.L == instance.L
    assert restored.top_form == instance.top_form


def test_hypersurface_instance_rejects_wrong_top_form():
    instance = SurfaceEngine(Settings()).compute_L(MonicTail.pure(F7, 1, 2))
    with pytest.raises(ValueError):
        HypersurfaceInstance(
            field=F7, k=1, d=2, coeffs=[0, 0], L=instance.L, top_form=MPoly.constant(F7, 2, 1)
        )


def test_bound_report_consistency():
    terms = BoundTerms(main=10, weil=1, d13=2, common_zero=3)
    BoundReport(q=7, k=1, d=1, variant="published", distinctness_degree=2, terms=terms, margin=4, applies=True)
    with pytest.raises(ValueError):
        BoundReport(q=7, k=1, d=1, variant="published", distinctness_degree=2, terms=terms, margin=5, applies=True)
    with pytest.raises(ValueError):
        BoundReport(q=7, k=1, d=1, variant="published", distinctness_degree=2, terms=terms, margin=4, applies=False)
