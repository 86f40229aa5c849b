from __future__ import annotations

import copy
import json
from pathlib import Path

import pytest

# The worked tethered-multicopter application near an airport: intrinsic GRC 2,
# final GRC 2 (M2 low / M3 medium), AEC 1 / ARC-d lowered to ARC-b by two
# operational restrictions, VLOS, SAIL II.
FIXTURE_SPEC = {
    "spec_format": 1,
    "organization": {
        "name": "Campus Aerial Robotics Lab",
        "safety_management_summary": "Documented safety management system with training records and periodic reviews.",
    },
    "crew_roles": [
        {"role": "remote-pilot", "training_record_ref": "staff-training-record#remote-pilot"},
        {"role": "gcs-operator", "training_record_ref": "staff-training-record#gcs-operator"},
        {"role": "ground-observer", "training_record_ref": "staff-training-record#observer-1"},
        {"role": "roof-observer", "training_record_ref": "staff-training-record#observer-2"},
    ],
    "uav": {
        "label": "campus-quad-01",
        "airframe_kind": "multicopter",
        "max_dimension": 2.5,
        "mass_takeoff_max": 3.2,
        "v_cruise": 2.0,
        "v_terminal": 10.0,
        "is_electric": True,
        "has_fts": True,
        "has_propeller_guards": True,
        "configuration_version": "cfg-007",
    },
    "scenario": {"sight_mode": "VLOS", "overflown_area": "controlled-ground-area"},
    "volume": {
        "flight_geography": {"kind": "circle", "center": [0.0, 0.0], "radius": 30.0},
        "contingency_volume": None,
        "ground_risk_buffer": 5.0,
        "altitude_ceiling": 30.0,
        "tether_length": 30.0,
    },
    "airspace": {
        "altitude_band": "below-400ft-AGL",
        "airspace_class": "C",
        "controlled": True,
        "environment": "airport-heliport",
        "area_kind": "urban",
        "mode_s_veil_or_tmz": False,
        "atypical_segregated": False,
    },
    "mitigation_claims": [
        {
            "kind": "M1-strategic-ground",
            "robustness": {"integrity": "none", "assurance": "none"},
            "evidence_refs": [],
            "narrative": "Tethered operation inside a barricaded controlled ground area; no density-lowering credit claimed.",
        },
        {
            "kind": "M2-impact-reduction",
            "robustness": {"integrity": "low", "assurance": "low"},
            "evidence_refs": ["preflight-uav-checklist#airworthiness"],
            "narrative": "Electric UAV with a flight termination system; propeller guards limit ground impact.",
        },
        {
            "kind": "M3-ERP",
            "robustness": {"integrity": "medium", "assurance": "medium"},
            "evidence_refs": [
                "operational-manual#emergency-response-plan",
                "staff-training-record#record-columns",
            ],
            "narrative": "Emergency response plan in place, assured by pilot training, staff training record and pre-flight checklists.",
        },
        {
            "kind": "air-operational-restriction",
            "robustness": {"integrity": "high", "assurance": "medium"},
            "evidence_refs": ["conops-skeleton#containment-system"],
            "narrative": "Geographical bounding by 30 m tether and autopilot geo-cage with 5 m buffers in every direction.",
        },
        {
            "kind": "air-operational-restriction",
            "robustness": {"integrity": "medium", "assurance": "medium"},
            "evidence_refs": ["operational-manual#flight-planning"],
            "narrative": "Airport notified before every operation to lower the encounter probability.",
        },
    ],
    "category_assertions": {
        "covered_by_standard_scenario": False,
        "open_category_eligible": False,
        "certified_required": False,
        "specific_no_go": False,
    },
    "adjacent_area_features": ["residential", "road", "school"],
    "evlos_observer_latency": None,
}

# Removes the tether: volume loses the tether, the M1 record and the
# tether/geo-cage restriction claim go away, the other claims stay.
REMOVE_TETHER_DELTA = {
    "volume": {"tether_length": None},
    "mitigation_claims": [
        FIXTURE_SPEC["mitigation_claims"][1],
        FIXTURE_SPEC["mitigation_claims"][2],
        FIXTURE_SPEC["mitigation_claims"][4],
    ],
}


def fixture_spec_dict() -> dict:
    return copy.deepcopy(FIXTURE_SPEC)


@pytest.fixture
def fixture_spec() -> dict:
    return fixture_spec_dict()


@pytest.fixture
def fixture_session(fixture_spec):
    from sora_engine.workflow import create_session

    return create_session(fixture_spec, session_id="fixture", created_at="2026-01-05T09:00:00Z")


@pytest.fixture
def store_dir(tmp_path, monkeypatch) -> Path:
    directory = tmp_path / "sessions"
    monkeypatch.setenv("SORA_ENGINE_HOME", str(directory))
    return directory


def write_spec_file(path: Path, data: dict) -> Path:
    path.write_text(json.dumps(data, indent=2), encoding="utf-8")
    return path
