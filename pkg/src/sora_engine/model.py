"""Domain types for UAV operation specifications, plus total validation.

Construction never validates: any parsed value can be carried by these types,
and problems are reported by the validators as findings. Parsing from raw
mappings is equally total -- malformed structure becomes error findings, not
exceptions. All types are immutable values; units are fixed (m, m/s, kg, s, J)
and geometry lives in a local planar frame in meters.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Optional, Union

SPEC_FORMAT = 1

__all__ = [
    "SPEC_FORMAT",
    "AirframeKind",
    "SightMode",
    "OverflownArea",
    "AltitudeBand",
    "AirspaceClass",
    "AirspaceEnvironment",
    "AreaKind",
    "Robustness",
    "MitigationKind",
    "AdjacentFeature",
    "Severity",
    "Circle",
    "Polygon",
    "Geometry",
    "RobustnessLevel",
    "MitigationClaim",
    "UavSpec",
    "OperationalScenario",
    "OperationalVolume",
    "AirspaceContext",
    "Organization",
    "CrewRole",
    "CategoryAssertions",
    "OperationSpec",
    "Finding",
    "ValidationReport",
    "validate_uav_spec",
    "validate_operation_spec",
    "spec_from_dict",
    "load_spec_file",
    "SpecParseError",
]


class AirframeKind(str, Enum):
    FIXED_WING = "fixed-wing"
    ROTORCRAFT = "rotorcraft"
    MULTICOPTER = "multicopter"


class SightMode(str, Enum):
    VLOS = "VLOS"
    EVLOS = "EVLOS"
    BVLOS = "BVLOS"


class OverflownArea(str, Enum):
    CONTROLLED_GROUND_AREA = "controlled-ground-area"
    SPARSELY_POPULATED = "sparsely-populated"
    POPULATED = "populated"
    ASSEMBLY_OF_PEOPLE = "assembly-of-people"


class AltitudeBand(str, Enum):
    BELOW_400FT = "below-400ft-AGL"
    ABOVE_400FT_BELOW_FL600 = "above-400ft-below-FL600"
    ABOVE_FL600 = "above-FL600"


class AirspaceClass(str, Enum):
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"
    G = "G"
    NONE = "none"


class AirspaceEnvironment(str, Enum):
    AIRPORT_HELIPORT = "airport-heliport"
    NON_AIRPORT = "non-airport"


class AreaKind(str, Enum):
    URBAN = "urban"
    RURAL = "rural"


class Robustness(str, Enum):
    NONE = "none"
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"

    @property
    def rank(self) -> int:
        return _ROBUSTNESS_RANK[self]


_ROBUSTNESS_RANK = {
    Robustness.NONE: 0,
    Robustness.LOW: 1,
    Robustness.MEDIUM: 2,
    Robustness.HIGH: 3,
}


class MitigationKind(str, Enum):
    M1_STRATEGIC_GROUND = "M1-strategic-ground"
    M2_IMPACT_REDUCTION = "M2-impact-reduction"
    M3_ERP = "M3-ERP"
    AIR_OPERATIONAL_RESTRICTION = "air-operational-restriction"
    AIR_COMMON_RULES_STRUCTURES = "air-common-rules-structures"


GROUND_MITIGATION_KINDS = (
    MitigationKind.M1_STRATEGIC_GROUND,
    MitigationKind.M2_IMPACT_REDUCTION,
    MitigationKind.M3_ERP,
)

AIR_MITIGATION_KINDS = (
    MitigationKind.AIR_OPERATIONAL_RESTRICTION,
    MitigationKind.AIR_COMMON_RULES_STRUCTURES,
)


class AdjacentFeature(str, Enum):
    RESIDENTIAL = "residential"
    ROAD = "road"
    SCHOOL = "school"
    ASSEMBLY = "assembly"
    AIRPORT = "airport"
    OTHER = "other"


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Circle:
    center: tuple[float, float]
    radius: float

    def effective_radius(self) -> float:
        return self.radius

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "circle", "center": list(self.center), "radius": self.radius}


@dataclass(frozen=True)
class Polygon:
    vertices: tuple[tuple[float, float], ...]

    def centroid(self) -> tuple[float, float]:
        n = len(self.vertices)
        return (sum(v[0] for v in self.vertices) / n, sum(v[1] for v in self.vertices) / n)

    def effective_radius(self) -> float:
        cx, cy = self.centroid()
        return max(((v[0] - cx) ** 2 + (v[1] - cy) ** 2) ** 0.5 for v in self.vertices)

    def is_convex(self) -> bool:
        n = len(self.vertices)
        if n < 3:
            return False
        sign = 0
        for i in range(n):
            ax, ay = self.vertices[i]
            bx, by = self.vertices[(i + 1) % n]
            cx, cy = self.vertices[(i + 2) % n]
            cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
            if cross != 0:
                if sign == 0:
                    sign = 1 if cross > 0 else -1
                elif (cross > 0) != (sign > 0):
                    return False
        return sign != 0

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "polygon", "vertices": [list(v) for v in self.vertices]}


Geometry = Union[Circle, Polygon]


@dataclass(frozen=True)
class RobustnessLevel:
    integrity: Robustness = Robustness.NONE
    assurance: Robustness = Robustness.NONE

    @property
    def effective(self) -> Robustness:
        """The credited level: the lesser of integrity and assurance."""
        weakest = min(self.integrity, self.assurance, key=lambda r: r.rank)
        return weakest

    def to_dict(self) -> dict[str, Any]:
        return {"integrity": self.integrity.value, "assurance": self.assurance.value}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RobustnessLevel":
        return cls(integrity=Robustness(data["integrity"]), assurance=Robustness(data["assurance"]))


@dataclass(frozen=True)
class MitigationClaim:
    kind: MitigationKind
    robustness: RobustnessLevel
    evidence_refs: tuple[str, ...] = ()
    narrative: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "robustness": self.robustness.to_dict(),
            "evidence_refs": list(self.evidence_refs),
            "narrative": self.narrative,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "MitigationClaim":
        return cls(
            kind=MitigationKind(data["kind"]),
            robustness=RobustnessLevel.from_dict(data["robustness"]),
            evidence_refs=tuple(data.get("evidence_refs", ())),
            narrative=data.get("narrative", ""),
        )


@dataclass(frozen=True)
class UavSpec:
    label: str
    airframe_kind: AirframeKind
    max_dimension: float
    mass_takeoff_max: float
    v_cruise: float
    v_terminal: float
    is_electric: bool = False
    has_fts: bool = False
    has_propeller_guards: bool = False
    configuration_version: str = "v1"

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "airframe_kind": self.airframe_kind.value,
            "max_dimension": self.max_dimension,
            "mass_takeoff_max": self.mass_takeoff_max,
            "v_cruise": self.v_cruise,
            "v_terminal": self.v_terminal,
            "is_electric": self.is_electric,
            "has_fts": self.has_fts,
            "has_propeller_guards": self.has_propeller_guards,
            "configuration_version": self.configuration_version,
        }


@dataclass(frozen=True)
class OperationalScenario:
    sight_mode: SightMode
    overflown_area: OverflownArea

    def to_dict(self) -> dict[str, Any]:
        return {"sight_mode": self.sight_mode.value, "overflown_area": self.overflown_area.value}


@dataclass(frozen=True)
class OperationalVolume:
    flight_geography: Geometry
    ground_risk_buffer: float
    altitude_ceiling: float
    contingency_volume: Optional[Geometry] = None
    tether_length: Optional[float] = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "flight_geography": self.flight_geography.to_dict(),
            "contingency_volume": self.contingency_volume.to_dict() if self.contingency_volume else None,
            "ground_risk_buffer": self.ground_risk_buffer,
            "altitude_ceiling": self.altitude_ceiling,
            "tether_length": self.tether_length,
        }


@dataclass(frozen=True)
class AirspaceContext:
    altitude_band: AltitudeBand
    airspace_class: AirspaceClass
    controlled: bool
    environment: AirspaceEnvironment
    area_kind: AreaKind
    mode_s_veil_or_tmz: bool = False
    atypical_segregated: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "altitude_band": self.altitude_band.value,
            "airspace_class": self.airspace_class.value,
            "controlled": self.controlled,
            "environment": self.environment.value,
            "area_kind": self.area_kind.value,
            "mode_s_veil_or_tmz": self.mode_s_veil_or_tmz,
            "atypical_segregated": self.atypical_segregated,
        }


@dataclass(frozen=True)
class Organization:
    name: str
    safety_management_summary: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "safety_management_summary": self.safety_management_summary}


@dataclass(frozen=True)
class CrewRole:
    role: str
    training_record_ref: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {"role": self.role, "training_record_ref": self.training_record_ref}


@dataclass(frozen=True)
class CategoryAssertions:
    covered_by_standard_scenario: bool = False
    open_category_eligible: bool = False
    certified_required: bool = False
    specific_no_go: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "covered_by_standard_scenario": self.covered_by_standard_scenario,
            "open_category_eligible": self.open_category_eligible,
            "certified_required": self.certified_required,
            "specific_no_go": self.specific_no_go,
        }


@dataclass(frozen=True)
class OperationSpec:
    organization: Organization
    crew_roles: tuple[CrewRole, ...]
    uav: UavSpec
    scenario: OperationalScenario
    volume: OperationalVolume
    airspace: AirspaceContext
    mitigation_claims: tuple[MitigationClaim, ...] = ()
    category_assertions: CategoryAssertions = field(default_factory=CategoryAssertions)
    adjacent_area_features: tuple[AdjacentFeature, ...] = ()
    evlos_observer_latency: Optional[float] = None

    def ground_claims(self) -> tuple[MitigationClaim, ...]:
        return tuple(c for c in self.mitigation_claims if c.kind in GROUND_MITIGATION_KINDS)

    def air_claims(self) -> tuple[MitigationClaim, ...]:
        return tuple(c for c in self.mitigation_claims if c.kind in AIR_MITIGATION_KINDS)

    def to_dict(self) -> dict[str, Any]:
        return {
            "spec_format": SPEC_FORMAT,
            "organization": self.organization.to_dict(),
            "crew_roles": [c.to_dict() for c in self.crew_roles],
            "uav": self.uav.to_dict(),
            "scenario": self.scenario.to_dict(),
            "volume": self.volume.to_dict(),
            "airspace": self.airspace.to_dict(),
            "mitigation_claims": [c.to_dict() for c in self.mitigation_claims],
            "category_assertions": self.category_assertions.to_dict(),
            "adjacent_area_features": [f.value for f in self.adjacent_area_features],
            "evlos_observer_latency": self.evlos_observer_latency,
        }


@dataclass(frozen=True)
class Finding:
    severity: Severity
    path: str
    message: str

    def to_dict(self) -> dict[str, Any]:
        return {"severity": self.severity.value, "path": self.path, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...] = ()

    @property
    def ok(self) -> bool:
        return not any(f.severity is Severity.ERROR for f in self.findings)

    def errors(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity is Severity.ERROR)

    def merged(self, other: "ValidationReport", prefix: str = "") -> "ValidationReport":
        extra = tuple(
            Finding(f.severity, f"{prefix}{f.path}" if prefix else f.path, f.message)
            for f in other.findings
        )
        return ValidationReport(self.findings + extra)

    def to_dict(self) -> dict[str, Any]:
        return {"findings": [f.to_dict() for f in self.findings]}


class SpecParseError(ValueError):
    """Raised only for unreadable input (bad JSON / not an object)."""


def _err(path: str, message: str) -> Finding:
    return Finding(Severity.ERROR, path, message)


def _warn(path: str, message: str) -> Finding:
    return Finding(Severity.WARNING, path, message)


def validate_uav_spec(spec: UavSpec) -> ValidationReport:
    """Check every UavSpec invariant; one finding per violation."""
    findings: list[Finding] = []
    if not spec.label:
        findings.append(_warn("label", "label is empty"))
    if not spec.max_dimension > 0:
        findings.append(_err("max_dimension", "maximum characteristic dimension must be > 0"))
    if not spec.mass_takeoff_max > 0:
        findings.append(_err("mass_takeoff_max", "maximum take-off mass must be > 0"))
    if spec.v_cruise < 0:
        findings.append(_err("v_cruise", "cruise speed must be >= 0"))
    if spec.v_terminal < 0:
        findings.append(_err("v_terminal", "terminal speed must be >= 0"))
    return ValidationReport(tuple(findings))


def _validate_volume(volume: OperationalVolume) -> ValidationReport:
    findings: list[Finding] = []
    geo = volume.flight_geography
    if isinstance(geo, Circle):
        if not geo.radius > 0:
            findings.append(_err("flight_geography.radius", "radius must be > 0"))
    elif isinstance(geo, Polygon):
        if len(geo.vertices) < 3:
            findings.append(_err("flight_geography.vertices", "polygon needs at least 3 vertices"))
        elif not geo.is_convex():
            findings.append(_err("flight_geography.vertices", "only convex polygons are supported"))
    if volume.ground_risk_buffer < 0:
        findings.append(_err("ground_risk_buffer", "buffer distance must be >= 0"))
    if not volume.altitude_ceiling > 0:
        findings.append(_err("altitude_ceiling", "altitude ceiling must be > 0"))
    if volume.tether_length is not None:
        if not volume.tether_length > 0:
            findings.append(_err("tether_length", "tether length must be > 0 when present"))
        elif not findings and geo.effective_radius() > volume.tether_length:
            findings.append(
                _err(
                    "flight_geography",
                    "flight geography radius %.3f m exceeds tether length %.3f m"
                    % (geo.effective_radius(), volume.tether_length),
                )
            )
    return ValidationReport(tuple(findings))


def _validate_airspace(airspace: AirspaceContext) -> ValidationReport:
    findings: list[Finding] = []
    if airspace.airspace_class in (AirspaceClass.B, AirspaceClass.C, AirspaceClass.D) and not airspace.controlled:
        findings.append(
            _err(
                "controlled",
                "airspace class %s implies controlled airspace" % airspace.airspace_class.value,
            )
        )
    return ValidationReport(tuple(findings))


def _validate_claims(claims: tuple[MitigationClaim, ...]) -> ValidationReport:
    findings: list[Finding] = []
    seen_ground: set[MitigationKind] = set()
    for i, claim in enumerate(claims):
        path = f"mitigation_claims[{i}]"
        if claim.robustness.effective is not Robustness.NONE and not claim.evidence_refs:
            findings.append(
                _err(f"{path}.evidence_refs", "evidence references required when effective robustness exceeds none")
            )
        if claim.kind in GROUND_MITIGATION_KINDS:
            if claim.kind in seen_ground:
                findings.append(_err(f"{path}.kind", f"duplicate ground mitigation claim of kind {claim.kind.value}"))
            seen_ground.add(claim.kind)
    return ValidationReport(tuple(findings))


def validate_operation_spec(spec: OperationSpec) -> ValidationReport:
    """Aggregate component reports plus cross-field checks."""
    report = ValidationReport()
    if not spec.organization.name:
        report = ValidationReport(report.findings + (_warn("organization.name", "organization name is empty"),))
    report = report.merged(validate_uav_spec(spec.uav), prefix="uav.")
    report = report.merged(_validate_volume(spec.volume), prefix="volume.")
    report = report.merged(_validate_airspace(spec.airspace), prefix="airspace.")
    report = report.merged(_validate_claims(spec.mitigation_claims))

    findings = list(report.findings)
    if spec.scenario.sight_mode is SightMode.EVLOS:
        if spec.evlos_observer_latency is None:
            findings.append(_err("evlos_observer_latency", "EVLOS operations must declare observer latency"))
        elif spec.evlos_observer_latency < 0:
            findings.append(_err("evlos_observer_latency", "observer latency must be >= 0"))
    elif spec.evlos_observer_latency is not None:
        findings.append(_err("evlos_observer_latency", "observer latency only applies to EVLOS operations"))
    return ValidationReport(tuple(findings))


# --- total parsing from raw mappings ---------------------------------------


class _Parser:
    """Walks a raw mapping collecting findings instead of raising."""

    def __init__(self) -> None:
        self.findings: list[Finding] = []
        self.failed = False

    def fail(self, path: str, message: str) -> None:
        self.findings.append(_err(path, message))
        self.failed = True

    def mapping(self, value: Any, path: str) -> dict[str, Any]:
        if isinstance(value, dict):
            return value
        self.fail(path, "expected an object")
        return {}

    def string(self, obj: dict[str, Any], key: str, path: str, default: Optional[str] = None) -> str:
        value = obj.get(key, default)
        if isinstance(value, str):
            return value
        self.fail(f"{path}.{key}" if path else key, "expected a string")
        return ""

    def number(
        self,
        obj: dict[str, Any],
        key: str,
        path: str,
        default: Any = None,
        optional: bool = False,
    ) -> Optional[float]:
        full = f"{path}.{key}" if path else key
        if key not in obj:
            if optional or default is not None:
                return default
            self.fail(full, "missing required number")
            return None
        value = obj[key]
        if value is None and optional:
            return None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.fail(full, "expected a number")
            return None
        return float(value)

    def boolean(self, obj: dict[str, Any], key: str, path: str, default: bool = False) -> bool:
        full = f"{path}.{key}" if path else key
        value = obj.get(key, default)
        if isinstance(value, bool):
            return value
        self.fail(full, "expected a boolean")
        return default

    def enum(self, enum_cls: type[Enum], obj: dict[str, Any], key: str, path: str) -> Any:
        full = f"{path}.{key}" if path else key
        value = obj.get(key)
        if value is None:
            self.fail(full, "missing required field")
            return None
        try:
            return enum_cls(value)
        except ValueError:
            allowed = ", ".join(e.value for e in enum_cls)  # type: ignore[attr-defined]
            self.fail(full, f"expected one of: {allowed}")
            return None


def _parse_point(p: _Parser, value: Any, path: str) -> tuple[float, float]:
    if (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in value)
    ):
        return (float(value[0]), float(value[1]))
    p.fail(path, "expected a [x, y] pair of numbers")
    return (0.0, 0.0)


def _parse_geometry(p: _Parser, value: Any, path: str) -> Optional[Geometry]:
    obj = p.mapping(value, path)
    kind = obj.get("kind")
    if kind == "circle":
        center = _parse_point(p, obj.get("center", [0.0, 0.0]), f"{path}.center")
        radius = p.number(obj, "radius", path)
        return Circle(center=center, radius=radius if radius is not None else 0.0)
    if kind == "polygon":
        raw = obj.get("vertices")
        if not isinstance(raw, list):
            p.fail(f"{path}.vertices", "expected a list of [x, y] pairs")
            return None
        vertices = tuple(_parse_point(p, v, f"{path}.vertices[{i}]") for i, v in enumerate(raw))
        return Polygon(vertices=vertices)
    p.fail(f"{path}.kind", "expected 'circle' or 'polygon'")
    return None


def _parse_robustness(p: _Parser, value: Any, path: str) -> RobustnessLevel:
    obj = p.mapping(value, path)
    integrity = p.enum(Robustness, obj, "integrity", path)
    assurance = p.enum(Robustness, obj, "assurance", path)
    return RobustnessLevel(
        integrity=integrity or Robustness.NONE,
        assurance=assurance or Robustness.NONE,
    )


def _parse_claim(p: _Parser, value: Any, path: str) -> Optional[MitigationClaim]:
    obj = p.mapping(value, path)
    kind = p.enum(MitigationKind, obj, "kind", path)
    robustness = _parse_robustness(p, obj.get("robustness", {}), f"{path}.robustness")
    refs_raw = obj.get("evidence_refs", [])
    refs: tuple[str, ...] = ()
    if isinstance(refs_raw, list) and all(isinstance(r, str) for r in refs_raw):
        refs = tuple(refs_raw)
    else:
        p.fail(f"{path}.evidence_refs", "expected a list of strings")
    narrative = obj.get("narrative", "")
    if not isinstance(narrative, str):
        p.fail(f"{path}.narrative", "expected a string")
        narrative = ""
    if kind is None:
        return None
    return MitigationClaim(kind=kind, robustness=robustness, evidence_refs=refs, narrative=narrative)


def spec_from_dict(data: Any) -> tuple[Optional[OperationSpec], ValidationReport]:
    """Parse a raw mapping into an OperationSpec.

    Returns the spec (None when structure errors prevent construction) and a
    report carrying every parse finding. Semantic validation is separate; run
    validate_operation_spec on the returned spec.
    """
    p = _Parser()
    root = p.mapping(data, "")
    if p.failed:
        return None, ValidationReport(tuple(p.findings))

    fmt = root.get("spec_format")
    if fmt != SPEC_FORMAT:
        p.fail("spec_format", f"expected spec_format {SPEC_FORMAT}")

    org_obj = p.mapping(root.get("organization", {}), "organization")
    organization = Organization(
        name=p.string(org_obj, "name", "organization", default=""),
        safety_management_summary=p.string(org_obj, "safety_management_summary", "organization", default=""),
    )

    crew: list[CrewRole] = []
    crew_raw = root.get("crew_roles", [])
    if isinstance(crew_raw, list):
        for i, entry in enumerate(crew_raw):
            obj = p.mapping(entry, f"crew_roles[{i}]")
            crew.append(
                CrewRole(
                    role=p.string(obj, "role", f"crew_roles[{i}]", default=""),
                    training_record_ref=p.string(obj, "training_record_ref", f"crew_roles[{i}]", default=""),
                )
            )
    else:
        p.fail("crew_roles", "expected a list")

    uav_obj = p.mapping(root.get("uav", {}), "uav")
    airframe = p.enum(AirframeKind, uav_obj, "airframe_kind", "uav")
    uav = UavSpec(
        label=p.string(uav_obj, "label", "uav", default=""),
        airframe_kind=airframe or AirframeKind.MULTICOPTER,
        max_dimension=p.number(uav_obj, "max_dimension", "uav") or 0.0,
        mass_takeoff_max=p.number(uav_obj, "mass_takeoff_max", "uav") or 0.0,
        v_cruise=_zero_if_none(p.number(uav_obj, "v_cruise", "uav")),
        v_terminal=_zero_if_none(p.number(uav_obj, "v_terminal", "uav")),
        is_electric=p.boolean(uav_obj, "is_electric", "uav"),
        has_fts=p.boolean(uav_obj, "has_fts", "uav"),
        has_propeller_guards=p.boolean(uav_obj, "has_propeller_guards", "uav"),
        configuration_version=p.string(uav_obj, "configuration_version", "uav", default="v1"),
    )

    scen_obj = p.mapping(root.get("scenario", {}), "scenario")
    sight = p.enum(SightMode, scen_obj, "sight_mode", "scenario")
    area = p.enum(OverflownArea, scen_obj, "overflown_area", "scenario")
    scenario = OperationalScenario(
        sight_mode=sight or SightMode.VLOS,
        overflown_area=area or OverflownArea.CONTROLLED_GROUND_AREA,
    )

    vol_obj = p.mapping(root.get("volume", {}), "volume")
    geography = _parse_geometry(p, vol_obj.get("flight_geography", {}), "volume.flight_geography")
    contingency = None
    if vol_obj.get("contingency_volume") is not None:
        contingency = _parse_geometry(p, vol_obj["contingency_volume"], "volume.contingency_volume")
    volume = OperationalVolume(
        flight_geography=geography or Circle(center=(0.0, 0.0), radius=0.0),
        contingency_volume=contingency,
        ground_risk_buffer=_zero_if_none(p.number(vol_obj, "ground_risk_buffer", "volume")),
        altitude_ceiling=p.number(vol_obj, "altitude_ceiling", "volume") or 0.0,
        tether_length=p.number(vol_obj, "tether_length", "volume", optional=True),
    )

    air_obj = p.mapping(root.get("airspace", {}), "airspace")
    airspace = AirspaceContext(
        altitude_band=p.enum(AltitudeBand, air_obj, "altitude_band", "airspace") or AltitudeBand.BELOW_400FT,
        airspace_class=p.enum(AirspaceClass, air_obj, "airspace_class", "airspace") or AirspaceClass.NONE,
        controlled=p.boolean(air_obj, "controlled", "airspace"),
        environment=p.enum(AirspaceEnvironment, air_obj, "environment", "airspace") or AirspaceEnvironment.NON_AIRPORT,
        area_kind=p.enum(AreaKind, air_obj, "area_kind", "airspace") or AreaKind.RURAL,
        mode_s_veil_or_tmz=p.boolean(air_obj, "mode_s_veil_or_tmz", "airspace"),
        atypical_segregated=p.boolean(air_obj, "atypical_segregated", "airspace"),
    )

    claims: list[MitigationClaim] = []
    claims_raw = root.get("mitigation_claims", [])
    if isinstance(claims_raw, list):
        for i, entry in enumerate(claims_raw):
            claim = _parse_claim(p, entry, f"mitigation_claims[{i}]")
            if claim is not None:
                claims.append(claim)
    else:
        p.fail("mitigation_claims", "expected a list")

    cat_obj = p.mapping(root.get("category_assertions", {}), "category_assertions")
    assertions = CategoryAssertions(
        covered_by_standard_scenario=p.boolean(cat_obj, "covered_by_standard_scenario", "category_assertions"),
        open_category_eligible=p.boolean(cat_obj, "open_category_eligible", "category_assertions"),
        certified_required=p.boolean(cat_obj, "certified_required", "category_assertions"),
        specific_no_go=p.boolean(cat_obj, "specific_no_go", "category_assertions"),
    )

    features: list[AdjacentFeature] = []
    feats_raw = root.get("adjacent_area_features", [])
    if isinstance(feats_raw, list):
        for i, entry in enumerate(feats_raw):
            try:
                features.append(AdjacentFeature(entry))
            except ValueError:
                p.fail(f"adjacent_area_features[{i}]", "unknown adjacent-area feature")
    else:
        p.fail("adjacent_area_features", "expected a list")

    latency = p.number(root, "evlos_observer_latency", "", optional=True)

    report = ValidationReport(tuple(p.findings))
    if p.failed:
        return None, report
    spec = OperationSpec(
        organization=organization,
        crew_roles=tuple(crew),
        uav=uav,
        scenario=scenario,
        volume=volume,
        airspace=airspace,
        mitigation_claims=tuple(claims),
        category_assertions=assertions,
        adjacent_area_features=tuple(features),
        evlos_observer_latency=latency,
    )
    return spec, report


def _zero_if_none(value: Optional[float]) -> float:
    return 0.0 if value is None else value


def load_spec_file(path: Union[str, Path]) -> tuple[Optional[OperationSpec], ValidationReport]:
    """Load and parse a JSON operation spec file.

    Raises SpecParseError for unreadable JSON; structural problems inside a
    readable document become findings.
    """
    raw = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    return spec_from_dict(data)


def with_updated(spec: OperationSpec, **changes: Any) -> OperationSpec:
    """Functional update preserving immutability."""
    return replace(spec, **changes)
