"""Risk classification engine: category gate, GRC, ARC, TMPR, SAIL, containment.

Every operation is a pure function over immutable model values and the
embedded decision tables. Errors raise EngineError subclasses carrying a
stable machine code; the workflow layer converts them into halted snapshots.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Optional

from .model import (
    AIR_MITIGATION_KINDS,
    GROUND_MITIGATION_KINDS,
    AirspaceContext,
    AirspaceClass,
    CategoryAssertions,
    MitigationClaim,
    MitigationKind,
    OperationalScenario,
    Robustness,
    SightMode,
    UavSpec,
)
from .tables import (
    ARC_TABLE,
    GRC_TABLE,
    GROUND_MITIGATIONS,
    SAIL_TABLE,
    TMPR_MAP,
    load_table,
)

ARC_ORDER = ("ARC-a", "ARC-b", "ARC-c", "ARC-d")
SAIL_ORDER = ("I", "II", "III", "IV", "V", "VI")


class EngineError(Exception):
    """Base class; code is the stable machine-readable error identifier."""

    code = "validation"

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.context = context


class InputError(EngineError):
    code = "validation"


class NotAssessableError(EngineError):
    code = "not-assessable"


class CategoryCReferral(EngineError):
    code = "category-c"


class LatencyViolation(EngineError):
    code = "latency-violation"


class ArcFloorError(EngineError):
    code = "validation"


class ClassificationError(EngineError):
    code = "validation"


class GateOutcome(str, Enum):
    OPEN_CATEGORY = "open-category-no-sora"
    STANDARD_SCENARIO = "standard-scenario-applies"
    CERTIFIED_REFERRAL = "certified-category-referral"
    NO_GO = "no-go"
    PROCEED = "proceed-with-sora"


@dataclass(frozen=True)
class CategoryGate:
    outcome: GateOutcome

    def to_dict(self) -> dict[str, Any]:
        return {"outcome": self.outcome.value}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CategoryGate":
        return cls(outcome=GateOutcome(data["outcome"]))


@dataclass(frozen=True)
class GrcResult:
    intrinsic: Optional[int]
    size_column: str
    energy_joules: float
    na_cell: Optional[dict[str, str]] = None
    applied_claims: tuple[MitigationClaim, ...] = ()
    deltas: tuple[int, ...] = ()
    final: Optional[int] = None
    category_c_referral: bool = False

    @property
    def assessable(self) -> bool:
        return self.intrinsic is not None

    def to_dict(self) -> dict[str, Any]:
        return {
            "intrinsic": self.intrinsic,
            "size_column": self.size_column,
            "energy_joules": self.energy_joules,
            "na_cell": self.na_cell,
            "applied_claims": [c.to_dict() for c in self.applied_claims],
            "deltas": list(self.deltas),
            "final": self.final,
            "category_c_referral": self.category_c_referral,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "GrcResult":
        return cls(
            intrinsic=data["intrinsic"],
            size_column=data["size_column"],
            energy_joules=data["energy_joules"],
            na_cell=data.get("na_cell"),
            applied_claims=tuple(MitigationClaim.from_dict(c) for c in data.get("applied_claims", ())),
            deltas=tuple(data.get("deltas", ())),
            final=data.get("final"),
            category_c_referral=bool(data.get("category_c_referral", False)),
        )


@dataclass(frozen=True)
class ArcResult:
    aec: int
    density_rating: int
    initial: str
    residual: str
    reduction_claims: tuple[MitigationClaim, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "aec": self.aec,
            "density_rating": self.density_rating,
            "initial": self.initial,
            "residual": self.residual,
            "reduction_claims": [c.to_dict() for c in self.reduction_claims],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ArcResult":
        return cls(
            aec=data["aec"],
            density_rating=data["density_rating"],
            initial=data["initial"],
            residual=data["residual"],
            reduction_claims=tuple(MitigationClaim.from_dict(c) for c in data.get("reduction_claims", ())),
        )


class TmprRationale(str, Enum):
    VLOS_SEE_AND_AVOID = "vlos-see-and-avoid"
    EVLOS_WITH_DECONFLICTION = "evlos-with-deconfliction"
    DAA_REQUIRED = "daa-required"


@dataclass(frozen=True)
class TmprRequirement:
    required: bool
    robustness: Robustness
    rationale: TmprRationale

    def to_dict(self) -> dict[str, Any]:
        return {
            "required": self.required,
            "robustness": self.robustness.value,
            "rationale": self.rationale.value,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TmprRequirement":
        return cls(
            required=bool(data["required"]),
            robustness=Robustness(data["robustness"]),
            rationale=TmprRationale(data["rationale"]),
        )


@dataclass(frozen=True)
class SailResult:
    sail: str

    def to_dict(self) -> dict[str, Any]:
        return {"sail": self.sail}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SailResult":
        return cls(sail=data["sail"])


@dataclass(frozen=True)
class ContainmentVerdict:
    adjacent_area_extent_m: float
    adjacent_airspace_arc: str
    enhanced_required: bool
    probability_bound_required: str
    satisfied_by: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "adjacent_area_extent_m": self.adjacent_area_extent_m,
            "adjacent_airspace_arc": self.adjacent_airspace_arc,
            "enhanced_required": self.enhanced_required,
            "probability_bound_required": self.probability_bound_required,
            "satisfied_by": list(self.satisfied_by),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ContainmentVerdict":
        return cls(
            adjacent_area_extent_m=data["adjacent_area_extent_m"],
            adjacent_airspace_arc=data["adjacent_airspace_arc"],
            enhanced_required=bool(data["enhanced_required"]),
            probability_bound_required=data["probability_bound_required"],
            satisfied_by=tuple(data.get("satisfied_by", ())),
        )


PROBABILITY_BOUND_TEXT = (
    "No probable failure of the UAV or any external supporting system may lead to an operation "
    "outside the operational volume; the probability of leaving the operational volume must stay "
    "below 1e-4 per flight hour."
)


def classify_category(assertions: CategoryAssertions) -> CategoryGate:
    """Route the pre-application assertions; precedence no-go > certified > standard > open."""
    if assertions.specific_no_go:
        return CategoryGate(GateOutcome.NO_GO)
    if assertions.certified_required:
        return CategoryGate(GateOutcome.CERTIFIED_REFERRAL)
    if assertions.covered_by_standard_scenario:
        return CategoryGate(GateOutcome.STANDARD_SCENARIO)
    if assertions.open_category_eligible:
        return CategoryGate(GateOutcome.OPEN_CATEGORY)
    return CategoryGate(GateOutcome.PROCEED)


def compute_kinetic_energy(
    mass: float,
    v_cruise: float,
    v_terminal: float,
    combine: str = "max",
) -> float:
    """Expected kinetic energy in joules.

    The speed-combination rule is configurable; the default takes the larger
    of cruise and terminal velocity, which never understates the energy.
    """
    if mass <= 0:
        raise InputError("mass must be > 0", mass=mass)
    if v_cruise < 0 or v_terminal < 0:
        raise InputError("speeds must be >= 0", v_cruise=v_cruise, v_terminal=v_terminal)
    if combine == "max":
        v_eff = max(v_cruise, v_terminal)
    elif combine == "cruise":
        v_eff = v_cruise
    elif combine == "terminal":
        v_eff = v_terminal
    else:
        raise InputError(f"unknown speed combination rule: {combine}")
    return 0.5 * mass * v_eff * v_eff


def _dimension_column(dimension: float, columns: list[dict[str, Any]]) -> int:
    for i, col in enumerate(columns):
        bound = col["max_dimension_m"]
        if bound is not None and dimension <= bound:
            return i
    return len(columns) - 1


def _energy_column(energy: float, columns: list[dict[str, Any]]) -> int:
    for i, col in enumerate(columns):
        bound = col["max_energy_j"]
        if bound is not None and energy < bound:
            return i
    return len(columns) - 1


def _grc_row(scenario: OperationalScenario, table: dict[str, Any]) -> dict[str, Any]:
    for row in table["rows"]:
        if row["area"] == scenario.overflown_area.value and scenario.sight_mode.value in row["sight_modes"]:
            return row
    raise ClassificationError(
        "no ground-risk row for scenario",
        sight_mode=scenario.sight_mode.value,
        overflown_area=scenario.overflown_area.value,
    )


def intrinsic_grc(
    uav: UavSpec,
    scenario: OperationalScenario,
    table: Optional[dict[str, Any]] = None,
    energy_combine: str = "max",
) -> GrcResult:
    """Intrinsic ground risk class from UAV size/energy and scenario.

    The governing size column is the more severe of the dimension-derived and
    energy-derived columns. A null table cell yields a not-assessable result
    carrying the offending row and column.
    """
    data = table or load_table(GRC_TABLE)
    columns = data["size_columns"]
    energy = compute_kinetic_energy(uav.mass_takeoff_max, uav.v_cruise, uav.v_terminal, combine=energy_combine)
    col_index = max(_dimension_column(uav.max_dimension, columns), _energy_column(energy, columns))
    column_id = columns[col_index]["id"]
    row = _grc_row(scenario, data)
    cell = row["cells"][col_index]
    if cell is None:
        return GrcResult(
            intrinsic=None,
            size_column=column_id,
            energy_joules=energy,
            na_cell={
                "row": f"{scenario.sight_mode.value} over {scenario.overflown_area.value}",
                "column": column_id,
            },
        )
    return GrcResult(intrinsic=int(cell), size_column=column_id, energy_joules=energy)


def apply_ground_mitigations(
    intrinsic: GrcResult,
    claims: tuple[MitigationClaim, ...],
    table: Optional[dict[str, Any]] = None,
) -> GrcResult:
    """Final GRC from the intrinsic class and M1/M2/M3 mitigation claims.

    An absent claim kind contributes its table's 'absent' delta (a penalty for
    a missing emergency response plan). The final value is clamped to the
    floor; values above the referral bound are flagged as Category C.
    """
    if not intrinsic.assessable:
        raise NotAssessableError("intrinsic GRC is not assessable", cell=intrinsic.na_cell)
    data = table or load_table(GROUND_MITIGATIONS)
    by_kind: dict[str, MitigationClaim] = {}
    for claim in claims:
        if claim.kind not in GROUND_MITIGATION_KINDS:
            raise InputError(f"not a ground mitigation kind: {claim.kind.value}")
        if claim.kind.value in by_kind:
            raise InputError(f"duplicate ground mitigation claim: {claim.kind.value}")
        by_kind[claim.kind.value] = claim

    applied: list[MitigationClaim] = []
    deltas: list[int] = []
    for row in data["mitigations"]:
        claim = by_kind.get(row["kind"])
        if claim is None:
            deltas.append(int(row["deltas"]["absent"]))
        else:
            applied.append(claim)
            deltas.append(int(row["deltas"][claim.robustness.effective.value]))

    total = intrinsic.intrinsic + sum(deltas)
    final = max(total, int(data["final_grc_floor"]))
    return replace(
        intrinsic,
        applied_claims=tuple(applied),
        deltas=tuple(deltas),
        final=final,
        category_c_referral=final > int(data["category_c_above"]),
    )


def _row_matches(airspace: AirspaceContext, when: dict[str, Any]) -> bool:
    ctx = airspace.to_dict()
    for key, expected in when.items():
        actual = ctx[key]
        if isinstance(expected, list):
            if actual not in expected:
                return False
        elif actual != expected:
            return False
    return True


def initial_arc(airspace: AirspaceContext, table: Optional[dict[str, Any]] = None) -> ArcResult:
    """Initial air risk class: first matching row of the encounter-category table."""
    if (
        airspace.airspace_class in (AirspaceClass.B, AirspaceClass.C, AirspaceClass.D)
        and not airspace.controlled
    ):
        raise ClassificationError(
            "contradictory airspace flags: class implies controlled",
            fields=["airspace_class", "controlled"],
        )
    data = table or load_table(ARC_TABLE)
    for row in data["rows"]:
        if _row_matches(airspace, row["when"]):
            return ArcResult(
                aec=int(row["aec"]),
                density_rating=int(row["density_rating"]),
                initial=row["initial_arc"],
                residual=row["initial_arc"],
            )
    raise ClassificationError("no encounter-category row matches the airspace context")


def _arc_floor(airspace: AirspaceContext, claims: tuple[MitigationClaim, ...]) -> str:
    """ARC-a is reserved for atypical/segregated airspace or an authority-accepted equivalent.

    The equivalent is recorded by convention: a high-robustness claim whose
    narrative contains the phrase 'authority-accepted segregation'.
    """
    if airspace.atypical_segregated:
        return "ARC-a"
    for claim in claims:
        if (
            "authority-accepted segregation" in claim.narrative.lower()
            and claim.robustness.effective is Robustness.HIGH
        ):
            return "ARC-a"
    return "ARC-b"


def apply_air_mitigations(
    initial: ArcResult,
    claims: tuple[MitigationClaim, ...],
    airspace: AirspaceContext,
) -> ArcResult:
    """Residual ARC after strategic mitigations.

    Each operational-restriction claim with effective robustness at least
    medium and non-empty evidence lowers the class by one level. Common
    rules/structures claims are recorded but lower nothing: the initial
    classification already accounts for them. The result may not go below
    the floor (ARC-a only in atypical/segregated airspace).
    """
    for claim in claims:
        if claim.kind not in AIR_MITIGATION_KINDS:
            raise InputError(f"not an air mitigation kind: {claim.kind.value}")
    qualifying = [
        c
        for c in claims
        if c.kind is MitigationKind.AIR_OPERATIONAL_RESTRICTION
        and c.robustness.effective.rank >= Robustness.MEDIUM.rank
        and c.evidence_refs
    ]
    start = ARC_ORDER.index(initial.initial)
    target = start - len(qualifying)
    floor = ARC_ORDER.index(_arc_floor(airspace, claims))
    if target < floor:
        raise ArcFloorError(
            f"air mitigation claims would reduce {initial.initial} below the floor {ARC_ORDER[floor]}; "
            "ARC-a requires atypical/segregated airspace",
            floor=ARC_ORDER[floor],
            claimed_levels=len(qualifying),
        )
    return replace(initial, residual=ARC_ORDER[target], reduction_claims=tuple(claims))


def tmpr_requirement(
    residual: ArcResult,
    scenario: OperationalScenario,
    evlos_latency: Optional[float] = None,
    table: Optional[dict[str, Any]] = None,
) -> TmprRequirement:
    """Tactical mitigation requirement for the residual collision risk.

    VLOS see-and-avoid is acceptable for all ARC levels. EVLOS additionally
    requires a de-confliction scheme and observer latency under the limit.
    BVLOS robustness follows the residual-ARC mapping table.
    """
    data = table or load_table(TMPR_MAP)
    if scenario.sight_mode is SightMode.VLOS:
        return TmprRequirement(False, Robustness.NONE, TmprRationale.VLOS_SEE_AND_AVOID)
    if scenario.sight_mode is SightMode.EVLOS:
        limit = float(data["evlos_max_latency_s"])
        if evlos_latency is None or evlos_latency >= limit:
            raise LatencyViolation(
                f"EVLOS observer latency must be < {limit:g} s",
                latency=evlos_latency,
                limit=limit,
            )
        return TmprRequirement(False, Robustness.NONE, TmprRationale.EVLOS_WITH_DECONFLICTION)
    robustness = Robustness(data["bvlos_robustness_by_residual_arc"][residual.residual])
    return TmprRequirement(robustness is not Robustness.NONE, robustness, TmprRationale.DAA_REQUIRED)


def determine_sail(final_grc: GrcResult, residual: ArcResult, table: Optional[dict[str, Any]] = None) -> SailResult:
    """SAIL from the final GRC row and residual ARC column."""
    data = table or load_table(SAIL_TABLE)
    if not final_grc.assessable:
        raise NotAssessableError("final GRC is not assessable", cell=final_grc.na_cell)
    if final_grc.final is None:
        raise InputError("final GRC has not been determined; apply ground mitigations first")
    if final_grc.category_c_referral or final_grc.final > int(data["category_c_above"]):
        raise CategoryCReferral(
            f"final GRC {final_grc.final} is a Category C operation outside this methodology",
            final_grc=final_grc.final,
        )
    col = data["columns"].index(residual.residual)
    for row in data["rows"]:
        if final_grc.final <= int(row["grc_max"]):
            return SailResult(sail=row["sail"][col])
    raise CategoryCReferral(f"final GRC {final_grc.final} exceeds the table", final_grc=final_grc.final)


def adjacent_area_extent(max_speed: float, table: Optional[dict[str, Any]] = None) -> float:
    """Ground distance reachable from the buffer boundary at max speed.

    The extent spans the configured duration (three minutes) of flight
    outward from the ground-risk-buffer boundary.
    """
    if max_speed < 0:
        raise InputError("max speed must be >= 0", max_speed=max_speed)
    data = table or load_table(TMPR_MAP)
    return max_speed * float(data["adjacent_area_duration_s"])


def containment_verdict(
    adjacent_airspace: ArcResult,
    features: tuple[Any, ...],
    claims: tuple[MitigationClaim, ...],
    extent_m: float = 0.0,
) -> ContainmentVerdict:
    """Containment requirement for the adjacent area and airspace.

    Enhanced containment is required next to ARC-d airspace or assemblies of
    people. The probability bound is always attached as a requirement;
    evidence from mitigation claims is recorded, never adjudicated.
    """
    feature_values = {getattr(f, "value", f) for f in features}
    enhanced = adjacent_airspace.initial == "ARC-d" or "assembly" in feature_values
    seen: set[str] = set()
    refs: list[str] = []
    for claim in claims:
        if claim.robustness.effective is Robustness.NONE:
            continue
        for ref in claim.evidence_refs:
            if ref not in seen:
                seen.add(ref)
                refs.append(ref)
    satisfied_by = tuple(refs)
    return ContainmentVerdict(
        adjacent_area_extent_m=extent_m,
        adjacent_airspace_arc=adjacent_airspace.initial,
        enhanced_required=enhanced,
        probability_bound_required=PROBABILITY_BOUND_TEXT,
        satisfied_by=satisfied_by,
    )
