"""Identity-suite behaviour: individual residual checks, determinism,
profiles, and coverage of the expected identity set."""

import json
import math

import pytest

from barnesg.errors import DomainError
from barnesg.identities import (
    EXPECTED_IDENTITY_IDS,
    check_functional_equations,
    check_modular,
    check_multiplication,
    check_product_identity,
    check_reflection,
    run_suite,
)

SQRT2 = math.sqrt(2)
SQRT3 = math.sqrt(3)


# ----------------------------------------------------------- example points

def test_reflection_examples():
    assert check_reflection(0.1, 1.2j) < 1e-9
    assert check_reflection(0.3 + 0.1j, 0.5 + 0.9j) < 1e-8
    assert check_reflection(0.0, 2j) < 1e-9


def test_reflection_domain():
    with pytest.raises(DomainError):
        check_reflection(0.1, 1.0)


def test_modular_examples():
    assert check_modular(SQRT3, SQRT3) < 1e-9  # reduces to the closed form
    assert check_modular(2.3, 0.7) < 1e-9
    assert check_modular(1.0, 1.3 + 0.7j) < 1e-10  # normalization point


def test_multiplication_examples():
    assert check_multiplication(1.4, SQRT2, 2, 1) < 1e-8
    assert check_multiplication(0.9 + 0.2j, 1 + 1j, 2, 3) < 1e-7
    assert check_multiplication(1.0, 1.7 + 0.2j, 1, 1) < 1e-10  # empty case


def test_multiplication_cost_cap():
    with pytest.raises(DomainError):
        check_multiplication(1.0, 1.0, 5, 1)


def test_product_identity_examples():
    assert check_product_identity(2.0, 2.0) < 1e-8      # z = tau anchor
    assert check_product_identity(2.5, 1.5) < 1e-8      # z = 1 + tau anchor
    assert check_product_identity(2.2 + 0.5j, 0.8) < 1e-8


def test_functional_equation_examples():
    r1, r2 = check_functional_equations(1.0, 3.0)  # G(2;3) = Gamma(1/3)
    assert r1 < 1e-10 and r2 < 1e-10
    r1, r2 = check_functional_equations(SQRT3, SQRT3)
    assert r1 < 1e-9 and r2 < 1e-9


def test_functional_equation_near_zero_conditioning():
    # 0.05 away from the lattice zero at -1: conditioning degrades but holds
    z = -1 + 0.05 * SQRT2 / 2 * (1 + 1j)
    r1, r2 = check_functional_equations(z + 2, SQRT2)  # z+2 clears, z+tau near
    assert r1 < 1e-7 and r2 < 1e-7


# ------------------------------------------------------------------ suite

def test_suite_default_passes():
    reports = run_suite(0, "default")
    assert all(r.passed for r in reports), [
        (r.identity_id, r.max_residual) for r in reports if not r.passed]


def test_suite_other_seed_passes():
    reports = run_suite(7, "default")
    assert all(r.passed for r in reports)


def test_suite_coverage_unique():
    reports = run_suite(0, "default")
    ids = [r.identity_id for r in reports]
    assert ids == list(EXPECTED_IDENTITY_IDS)
    assert len(set(ids)) == len(ids)


def test_suite_deterministic():
    a = [r.to_json_dict() for r in run_suite(3, "default")]
    b = [r.to_json_dict() for r in run_suite(3, "default")]
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_strict_profile_mechanics():
    default = run_suite(0, "default")
    strict = run_suite(0, "strict")
    for d, s in zip(default, strict):
        assert s.identity_id == d.identity_id
        assert s.tolerance == pytest.approx(d.tolerance / 10)
    # the report says which checks fail, if any
    failing = [r.identity_id for r in strict if not r.passed]
    assert isinstance(failing, list)


def test_unknown_profile():
    with pytest.raises(DomainError):
        run_suite(0, "loose")


def test_suite_never_aborts(monkeypatch):
    # a raising check becomes an inf residual plus a note, not an abort
    import barnesg.identities as ids

    def boom(z, tau):
        raise RuntimeError("synthetic failure")

    monkeypatch.setattr(ids, "check_reflection", boom)
    reports = ids.run_suite(0, "default")
    by_id = {r.identity_id: r for r in reports}
    assert len(reports) == len(EXPECTED_IDENTITY_IDS)
    refl = by_id["reflection"]
    assert not refl.passed
    assert math.isinf(refl.max_residual)
    assert any("synthetic failure" in n for n in refl.notes)
    assert by_id["modular-inversion"].passed  # the rest still ran


def test_report_json_round_trip():
    reports = run_suite(0, "default")
    payload = json.loads(json.dumps([r.to_json_dict() for r in reports]))
    assert len(payload) == len(EXPECTED_IDENTITY_IDS)
    for item in payload:
        assert set(item) == {"id", "points", "residuals", "max_residual",
                             "tolerance", "passed", "notes"}
        assert item["passed"] == (item["max_residual"] <= item["tolerance"])
