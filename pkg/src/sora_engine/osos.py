"""Operational safety objectives: catalog, per-SAIL requirements, evidence tracking.

The default catalog ships the twelve SAIL II objectives; other SAIL rows come
from a user-supplied catalog file. An entry that does not mention a SAIL is
treated as optional at that SAIL -- requirements are never invented.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Any, Optional, Union

from .engine import SAIL_ORDER, SailResult
from .model import Robustness, RobustnessLevel
from .tables import OSO_CATALOG, load_table


class ThreatCategory(str, Enum):
    TECHNICAL_ISSUE = "technical-issue"
    EXTERNAL_SYSTEMS = "external-systems-deterioration"
    HUMAN_ERROR = "human-error"
    ADVERSE_CONDITIONS = "adverse-conditions"


class OsoState(str, Enum):
    OPEN = "open"
    SATISFIED = "satisfied"
    INSUFFICIENT = "insufficient"


class CatalogError(ValueError):
    """Raised when a catalog file violates its invariants."""


class RequirementLevel(str, Enum):
    OPTIONAL = "optional"
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"


_REQUIRED_RANK = {
    RequirementLevel.OPTIONAL: 0,
    RequirementLevel.LOW: 1,
    RequirementLevel.MEDIUM: 2,
    RequirementLevel.HIGH: 3,
}


@dataclass(frozen=True)
class OsoCatalogEntry:
    oso_id: str
    title: str
    threat_category: ThreatCategory
    required_robustness_by_sail: dict[str, RequirementLevel]

    def requirement_at(self, sail: str) -> RequirementLevel:
        return self.required_robustness_by_sail.get(sail, RequirementLevel.OPTIONAL)

    def to_dict(self) -> dict[str, Any]:
        return {
            "oso_id": self.oso_id,
            "title": self.title,
            "threat_category": self.threat_category.value,
            "required_robustness_by_sail": {k: v.value for k, v in self.required_robustness_by_sail.items()},
        }


@dataclass(frozen=True)
class OsoCatalog:
    catalog_version: int
    entries: tuple[OsoCatalogEntry, ...]
    notes: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "catalog_version": self.catalog_version,
            "notes": self.notes,
            "entries": [e.to_dict() for e in self.entries],
        }


@dataclass(frozen=True)
class OsoStatus:
    oso_id: str
    title: str
    required: RequirementLevel
    claimed: RobustnessLevel
    evidence_refs: tuple[str, ...]
    state: OsoState

    def to_dict(self) -> dict[str, Any]:
        return {
            "oso_id": self.oso_id,
            "title": self.title,
            "required": self.required.value,
            "claimed": self.claimed.to_dict(),
            "evidence_refs": list(self.evidence_refs),
            "state": self.state.value,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "OsoStatus":
        return cls(
            oso_id=data["oso_id"],
            title=data["title"],
            required=RequirementLevel(data["required"]),
            claimed=RobustnessLevel.from_dict(data["claimed"]),
            evidence_refs=tuple(data.get("evidence_refs", ())),
            state=OsoState(data["state"]),
        )


def load_catalog(data: Optional[Union[dict[str, Any], str, Path]] = None) -> OsoCatalog:
    """Load a catalog from a mapping or file path; None loads the default."""
    if data is None or isinstance(data, (str, Path)):
        raw = load_table(OSO_CATALOG, path=data)
    else:
        raw = data
    entries: list[OsoCatalogEntry] = []
    seen_ids: set[str] = set()
    for i, entry in enumerate(raw.get("entries", [])):
        oso_id = entry.get("oso_id")
        if not oso_id or not isinstance(oso_id, str):
            raise CatalogError(f"entries[{i}]: missing oso_id")
        if oso_id in seen_ids:
            raise CatalogError(f"entries[{i}]: duplicate oso_id {oso_id!r}")
        seen_ids.add(oso_id)
        by_sail: dict[str, RequirementLevel] = {}
        for sail, level in entry.get("required_robustness_by_sail", {}).items():
            if sail not in SAIL_ORDER:
                raise CatalogError(f"entries[{i}]: unknown SAIL {sail!r}")
            if level is None:
                raise CatalogError(f"entries[{i}]: SAIL {sail} mentioned without a value")
            try:
                by_sail[sail] = RequirementLevel(level)
            except ValueError:
                raise CatalogError(f"entries[{i}]: bad robustness level {level!r} for SAIL {sail}") from None
        try:
            threat = ThreatCategory(entry.get("threat_category"))
        except ValueError:
            raise CatalogError(f"entries[{i}]: unknown threat category {entry.get('threat_category')!r}") from None
        entries.append(
            OsoCatalogEntry(
                oso_id=oso_id,
                title=str(entry.get("title", oso_id)),
                threat_category=threat,
                required_robustness_by_sail=by_sail,
            )
        )
    return OsoCatalog(
        catalog_version=int(raw.get("catalog_version", 1)),
        entries=tuple(entries),
        notes=str(raw.get("notes", "")),
    )


def _status_state(required: RequirementLevel, claimed: RobustnessLevel, refs: tuple[str, ...]) -> OsoState:
    if claimed.effective is Robustness.NONE and not refs:
        return OsoState.OPEN
    if refs and claimed.effective.rank >= _REQUIRED_RANK[required]:
        return OsoState.SATISFIED
    return OsoState.INSUFFICIENT


def required_osos(sail: SailResult, catalog: Optional[OsoCatalog] = None) -> tuple[OsoStatus, ...]:
    """One open status per catalog entry whose requirement at this SAIL is not optional."""
    if sail.sail not in SAIL_ORDER:
        raise ValueError(f"no OSO path exists for {sail.sail!r}")
    cat = catalog or load_catalog()
    statuses = []
    for entry in cat.entries:
        required = entry.requirement_at(sail.sail)
        if required is RequirementLevel.OPTIONAL:
            continue
        statuses.append(
            OsoStatus(
                oso_id=entry.oso_id,
                title=entry.title,
                required=required,
                claimed=RobustnessLevel(),
                evidence_refs=(),
                state=OsoState.OPEN,
            )
        )
    return tuple(statuses)


def record_evidence(status: OsoStatus, claim: RobustnessLevel, refs: tuple[str, ...]) -> OsoStatus:
    """Attach a robustness claim and evidence; the state is recomputed, never stored."""
    return replace(
        status,
        claimed=claim,
        evidence_refs=tuple(refs),
        state=_status_state(status.required, claim, tuple(refs)),
    )


def compliance_summary(statuses: tuple[OsoStatus, ...]) -> dict[str, Any]:
    """Counts plus the identifiers still needing work; complete when all satisfied."""
    satisfied = [s.oso_id for s in statuses if s.state is OsoState.SATISFIED]
    open_ids = [s.oso_id for s in statuses if s.state is OsoState.OPEN]
    insufficient = [s.oso_id for s in statuses if s.state is OsoState.INSUFFICIENT]
    return {
        "total": len(statuses),
        "satisfied": len(satisfied),
        "open": open_ids,
        "insufficient": insufficient,
        "complete": len(satisfied) == len(statuses),
    }
