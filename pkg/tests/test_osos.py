from __future__ import annotations

import pytest

from sora_engine.engine import SailResult
from sora_engine.model import Robustness, RobustnessLevel
from sora_engine.osos import (
    CatalogError,
    OsoState,
    compliance_summary,
    load_catalog,
    record_evidence,
    required_osos,
)

SAIL_II_THEMES = {
    "competent-operator",
    "design-installation-appraisal",
    "c3-link-characteristics",
    "inspection-consistency",
    "operational-manual-procedures",
    "crew-training",
    "flyaway-safety-features",
    "external-supporting-systems",
    "multi-crew-coordination",
    "crew-fitness",
    "human-factors-hmi",
    "meteorological-assessment",
}


class TestCatalogLoading:
    def test_default_catalog_has_the_twelve_sail_ii_themes(self):
        catalog = load_catalog()
        assert {e.oso_id for e in catalog.entries} == SAIL_II_THEMES
        assert all(e.requirement_at("II").value == "low" for e in catalog.entries)

    def test_empty_catalog(self):
        catalog = load_catalog({"catalog_version": 1, "entries": []})
        assert catalog.entries == ()

    def test_duplicate_id_rejected(self):
        data = {
            "catalog_version": 1,
            "entries": [
                {"oso_id": "a", "title": "a", "threat_category": "human-error", "required_robustness_by_sail": {"II": "low"}},
                {"oso_id": "a", "title": "a2", "threat_category": "human-error", "required_robustness_by_sail": {"II": "low"}},
            ],
        }
        with pytest.raises(CatalogError):
            load_catalog(data)

    def test_mentioned_sail_without_value_rejected(self):
        data = {
            "catalog_version": 1,
            "entries": [
                {"oso_id": "a", "title": "a", "threat_category": "human-error", "required_robustness_by_sail": {"II": None}},
            ],
        }
        with pytest.raises(CatalogError):
            load_catalog(data)

    def test_unknown_sail_rejected(self):
        data = {
            "catalog_version": 1,
            "entries": [
                {"oso_id": "a", "title": "a", "threat_category": "human-error", "required_robustness_by_sail": {"VII": "low"}},
            ],
        }
        with pytest.raises(CatalogError):
            load_catalog(data)

    def test_export_round_trip(self):
        catalog = load_catalog()
        assert load_catalog(catalog.to_dict()) == catalog


class TestRequiredOsos:
    def test_sail_ii_yields_twelve_open_statuses(self):
        statuses = required_osos(SailResult("II"))
        assert len(statuses) == 12
        assert all(s.state is OsoState.OPEN for s in statuses)

    def test_empty_catalog_yields_nothing(self):
        statuses = required_osos(SailResult("II"), load_catalog({"catalog_version": 1, "entries": []}))
        assert statuses == ()

    def test_unmentioned_sail_is_optional(self):
        statuses = required_osos(SailResult("IV"))
        assert statuses == ()

    def test_category_c_referral_has_no_oso_path(self):
        with pytest.raises(ValueError):
            required_osos(SailResult("category-C-referral"))

    def test_monotone_in_catalog_content(self):
        base = load_catalog()
        extended = base.to_dict()
        extended["entries"].append(
            {
                "oso_id": "extra-objective",
                "title": "extra",
                "threat_category": "adverse-conditions",
                "required_robustness_by_sail": {"II": "medium"},
            }
        )
        base_ids = {s.oso_id for s in required_osos(SailResult("II"), base)}
        extended_ids = {s.oso_id for s in required_osos(SailResult("II"), load_catalog(extended))}
        assert base_ids <= extended_ids


class TestEvidence:
    def status(self):
        return required_osos(SailResult("II"))[0]

    def test_matching_claim_with_evidence_satisfies(self):
        updated = record_evidence(self.status(), RobustnessLevel(Robustness.LOW, Robustness.LOW), ("doc/x",))
        assert updated.state is OsoState.SATISFIED

    def test_effective_level_below_requirement_is_insufficient(self):
        catalog = load_catalog(
            {
                "catalog_version": 1,
                "entries": [
                    {
                        "oso_id": "a",
                        "title": "a",
                        "threat_category": "human-error",
                        "required_robustness_by_sail": {"II": "medium"},
                    }
                ],
            }
        )
        status = required_osos(SailResult("II"), catalog)[0]
        updated = record_evidence(status, RobustnessLevel(Robustness.HIGH, Robustness.LOW), ("doc/x",))
        assert updated.state is OsoState.INSUFFICIENT

    def test_empty_refs_is_insufficient(self):
        updated = record_evidence(self.status(), RobustnessLevel(Robustness.HIGH, Robustness.HIGH), ())
        assert updated.state is OsoState.INSUFFICIENT

    def test_state_is_a_pure_function_of_the_claim(self):
        status = self.status()
        once = record_evidence(status, RobustnessLevel(Robustness.LOW, Robustness.LOW), ("doc/x",))
        again = record_evidence(once, RobustnessLevel(Robustness.LOW, Robustness.LOW), ("doc/x",))
        assert once == again
        cleared = record_evidence(once, RobustnessLevel(), ())
        assert cleared.state is OsoState.OPEN


class TestComplianceSummary:
    def test_all_satisfied_is_complete(self):
        statuses = tuple(
            record_evidence(s, RobustnessLevel(Robustness.LOW, Robustness.LOW), ("doc/x",))
            for s in required_osos(SailResult("II"))
        )
        summary = compliance_summary(statuses)
        assert summary["complete"] is True
        assert summary["satisfied"] == 12

    def test_one_insufficient_is_named(self):
        statuses = list(required_osos(SailResult("II")))
        statuses[3] = record_evidence(statuses[3], RobustnessLevel(Robustness.HIGH, Robustness.HIGH), ())
        summary = compliance_summary(tuple(statuses))
        assert summary["complete"] is False
        assert statuses[3].oso_id in summary["insufficient"]

    def test_empty_input_is_vacuously_complete(self):
        summary = compliance_summary(())
        assert summary == {"total": 0, "satisfied": 0, "open": [], "insufficient": [], "complete": True}
