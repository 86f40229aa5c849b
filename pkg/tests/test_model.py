from __future__ import annotations

import json

import pytest

from sora_engine.model import (
    AirframeKind,
    AirspaceClass,
    AirspaceContext,
    AltitudeBand,
    AreaKind,
    AirspaceEnvironment,
    Circle,
    MitigationClaim,
    MitigationKind,
    OperationalScenario,
    OperationalVolume,
    OverflownArea,
    Polygon,
    Robustness,
    RobustnessLevel,
    SightMode,
    SpecParseError,
    UavSpec,
    load_spec_file,
    spec_from_dict,
    validate_operation_spec,
    validate_uav_spec,
)


def make_uav(**overrides):
    base = dict(
        label="u1",
        airframe_kind=AirframeKind.MULTICOPTER,
        max_dimension=0.8,
        mass_takeoff_max=2.0,
        v_cruise=2.0,
        v_terminal=10.0,
    )
    base.update(overrides)
    return UavSpec(**base)


class TestUavValidation:
    def test_valid_uav_has_no_findings(self):
        assert validate_uav_spec(make_uav()).findings == ()

    def test_zero_dimension_flagged(self):
        report = validate_uav_spec(make_uav(max_dimension=0))
        assert [f.path for f in report.errors()] == ["max_dimension"]

    def test_negative_terminal_speed_flagged(self):
        report = validate_uav_spec(make_uav(v_terminal=-1))
        assert [f.path for f in report.errors()] == ["v_terminal"]

    def test_every_numeric_invariant_has_a_finding(self):
        bad = make_uav(max_dimension=-1, mass_takeoff_max=0, v_cruise=-2, v_terminal=-3)
        paths = {f.path for f in validate_uav_spec(bad).errors()}
        assert paths == {"max_dimension", "mass_takeoff_max", "v_cruise", "v_terminal"}

    def test_validation_is_idempotent(self):
        uav = make_uav(max_dimension=0)
        assert validate_uav_spec(uav) == validate_uav_spec(uav)


class TestOperationValidation:
    def test_fixture_spec_is_clean(self, fixture_spec):
        spec, parse_report = spec_from_dict(fixture_spec)
        assert spec is not None
        assert parse_report.findings == ()
        assert validate_operation_spec(spec).findings == ()

    def test_evlos_without_latency_is_an_error(self, fixture_spec):
        fixture_spec["scenario"]["sight_mode"] = "EVLOS"
        spec, _ = spec_from_dict(fixture_spec)
        report = validate_operation_spec(spec)
        assert [f.path for f in report.errors()] == ["evlos_observer_latency"]

    def test_latency_on_vlos_is_an_error(self, fixture_spec):
        fixture_spec["evlos_observer_latency"] = 5.0
        spec, _ = spec_from_dict(fixture_spec)
        assert [f.path for f in validate_operation_spec(spec).errors()] == ["evlos_observer_latency"]

    def test_tether_shorter_than_geography_is_an_error(self, fixture_spec):
        fixture_spec["volume"]["flight_geography"]["radius"] = 40.0
        spec, _ = spec_from_dict(fixture_spec)
        report = validate_operation_spec(spec)
        assert any(f.path == "volume.flight_geography" for f in report.errors())

    def test_negative_buffer_is_an_error(self, fixture_spec):
        fixture_spec["volume"]["ground_risk_buffer"] = -1.0
        spec, _ = spec_from_dict(fixture_spec)
        assert any(f.path == "volume.ground_risk_buffer" for f in validate_operation_spec(spec).errors())

    def test_zero_ceiling_is_an_error(self, fixture_spec):
        fixture_spec["volume"]["altitude_ceiling"] = 0.0
        spec, _ = spec_from_dict(fixture_spec)
        assert any(f.path == "volume.altitude_ceiling" for f in validate_operation_spec(spec).errors())

    def test_class_c_uncontrolled_is_contradictory(self, fixture_spec):
        fixture_spec["airspace"]["controlled"] = False
        spec, _ = spec_from_dict(fixture_spec)
        assert any(f.path == "airspace.controlled" for f in validate_operation_spec(spec).errors())

    def test_claim_with_effective_robustness_needs_evidence(self, fixture_spec):
        fixture_spec["mitigation_claims"][1]["evidence_refs"] = []
        spec, _ = spec_from_dict(fixture_spec)
        assert any("evidence_refs" in f.path for f in validate_operation_spec(spec).errors())

    def test_duplicate_ground_kind_is_an_error(self, fixture_spec):
        fixture_spec["mitigation_claims"].append(fixture_spec["mitigation_claims"][1])
        spec, _ = spec_from_dict(fixture_spec)
        assert any("kind" in f.path for f in validate_operation_spec(spec).errors())

    def test_concave_polygon_rejected(self, fixture_spec):
        fixture_spec["volume"]["flight_geography"] = {
            "kind": "polygon",
            "vertices": [[0, 0], [10, 0], [2, 2], [0, 10]],
        }
        fixture_spec["volume"]["tether_length"] = None
        spec, _ = spec_from_dict(fixture_spec)
        assert any("vertices" in f.path for f in validate_operation_spec(spec).errors())

    def test_convex_polygon_accepted(self, fixture_spec):
        fixture_spec["volume"]["flight_geography"] = {
            "kind": "polygon",
            "vertices": [[-10, -10], [10, -10], [10, 10], [-10, 10]],
        }
        fixture_spec["volume"]["tether_length"] = 30.0
        spec, _ = spec_from_dict(fixture_spec)
        assert validate_operation_spec(spec).ok


class TestParsing:
    def test_parsing_is_total_for_malformed_structures(self):
        for data in [[], 42, {"spec_format": 2}, {"spec_format": 1, "uav": "nope"}]:
            spec, report = spec_from_dict(data)
            assert spec is None
            assert report.errors()

    def test_unknown_enum_value_becomes_finding(self, fixture_spec):
        fixture_spec["scenario"]["sight_mode"] = "XLOS"
        spec, report = spec_from_dict(fixture_spec)
        assert spec is None
        assert any(f.path == "scenario.sight_mode" for f in report.errors())

    def test_round_trip_through_to_dict(self, fixture_spec):
        spec, _ = spec_from_dict(fixture_spec)
        again, report = spec_from_dict(spec.to_dict())
        assert report.findings == ()
        assert again == spec

    def test_load_spec_file(self, tmp_path, fixture_spec):
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(fixture_spec), encoding="utf-8")
        spec, report = load_spec_file(path)
        assert spec is not None and report.ok

    def test_invalid_json_raises_parse_error(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(SpecParseError):
            load_spec_file(path)


class TestValueTypes:
    def test_effective_robustness_is_the_minimum(self):
        level = RobustnessLevel(Robustness.HIGH, Robustness.LOW)
        assert level.effective is Robustness.LOW
        assert RobustnessLevel(Robustness.MEDIUM, Robustness.MEDIUM).effective is Robustness.MEDIUM

    def test_circle_effective_radius(self):
        assert Circle(center=(1.0, 2.0), radius=12.5).effective_radius() == 12.5

    def test_polygon_centroid_and_radius(self):
        square = Polygon(vertices=((0, 0), (10, 0), (10, 10), (0, 10)))
        assert square.centroid() == (5.0, 5.0)
        assert square.effective_radius() == pytest.approx(50**0.5)
        assert square.is_convex()

    def test_claim_round_trip(self):
        claim = MitigationClaim(
            kind=MitigationKind.M2_IMPACT_REDUCTION,
            robustness=RobustnessLevel(Robustness.LOW, Robustness.LOW),
            evidence_refs=("a", "b"),
            narrative="n",
        )
        assert MitigationClaim.from_dict(claim.to_dict()) == claim
