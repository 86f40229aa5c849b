"""Step state machine over the risk engine: sessions, evaluation, what-if.

The assessment is always re-derived from the operation spec; the only user
inputs are spec fields, mitigation claims, and safety-objective evidence.
Sessions carry an append-only, hash-chained history whose deltas replay from
the initial spec to the current snapshot.
"""

from __future__ import annotations

import re
import uuid
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from typing import Any, Optional

from .canon import sha256_hex
from .engine import (
    ArcResult,
    CategoryGate,
    ContainmentVerdict,
    EngineError,
    GateOutcome,
    GrcResult,
    SailResult,
    TmprRequirement,
    adjacent_area_extent,
    apply_air_mitigations,
    apply_ground_mitigations,
    classify_category,
    containment_verdict,
    determine_sail,
    initial_arc,
    intrinsic_grc,
    tmpr_requirement,
)
from .model import (
    OperationSpec,
    RobustnessLevel,
    ValidationReport,
    spec_from_dict,
    validate_operation_spec,
)
from .osos import OsoCatalog, OsoStatus, load_catalog, record_evidence, required_osos

SESSION_FORMAT = 1

_SESSION_ID_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_-]{0,63}$")

SNAPSHOT_AREAS = ("gate", "grc", "arc", "tmpr", "sail", "osos", "containment", "halt")


class SpecInvalidError(ValueError):
    """The document cannot be mapped onto the operation-spec structure."""

    def __init__(self, report: ValidationReport):
        super().__init__("operation spec is structurally invalid")
        self.report = report


class DeltaRejected(ValueError):
    """A what-if delta produced an invalid spec; findings explain why."""

    def __init__(self, report: ValidationReport):
        super().__init__("what-if delta failed validation")
        self.report = report


class HistoryIntegrityError(ValueError):
    """The persisted history hash chain does not verify."""


@dataclass(frozen=True)
class AssessmentSnapshot:
    gate: Optional[CategoryGate] = None
    grc: Optional[GrcResult] = None
    arc: Optional[ArcResult] = None
    tmpr: Optional[TmprRequirement] = None
    sail: Optional[SailResult] = None
    osos: Optional[tuple[OsoStatus, ...]] = None
    containment: Optional[ContainmentVerdict] = None
    documents: tuple[dict[str, Any], ...] = ()
    halt: Optional[dict[str, Any]] = None

    @property
    def complete(self) -> bool:
        return self.halt is None and self.containment is not None

    def core_dict(self) -> dict[str, Any]:
        """Assessment content only; the basis of the snapshot hash.

        Rendered-document references are derived artifacts of this content, so
        they stay outside the hash.
        """
        return {
            "gate": self.gate.to_dict() if self.gate else None,
            "grc": self.grc.to_dict() if self.grc else None,
            "arc": self.arc.to_dict() if self.arc else None,
            "tmpr": self.tmpr.to_dict() if self.tmpr else None,
            "sail": self.sail.to_dict() if self.sail else None,
            "osos": [s.to_dict() for s in self.osos] if self.osos is not None else None,
            "containment": self.containment.to_dict() if self.containment else None,
            "halt": self.halt,
        }

    def to_dict(self) -> dict[str, Any]:
        data = self.core_dict()
        data["documents"] = [dict(d) for d in self.documents]
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "AssessmentSnapshot":
        osos = data.get("osos")
        return cls(
            gate=CategoryGate.from_dict(data["gate"]) if data.get("gate") else None,
            grc=GrcResult.from_dict(data["grc"]) if data.get("grc") else None,
            arc=ArcResult.from_dict(data["arc"]) if data.get("arc") else None,
            tmpr=TmprRequirement.from_dict(data["tmpr"]) if data.get("tmpr") else None,
            sail=SailResult.from_dict(data["sail"]) if data.get("sail") else None,
            osos=tuple(OsoStatus.from_dict(s) for s in osos) if osos is not None else None,
            containment=ContainmentVerdict.from_dict(data["containment"]) if data.get("containment") else None,
            documents=tuple(dict(d) for d in data.get("documents", ())),
            halt=data.get("halt"),
        )

    def hash(self) -> str:
        return sha256_hex(self.core_dict())


@dataclass(frozen=True)
class HistoryEntry:
    seq: int
    timestamp: str
    step: int
    delta: dict[str, Any]
    snapshot_hash: str
    prev_hash: Optional[str]
    entry_hash: str

    @staticmethod
    def compute_hash(
        seq: int,
        timestamp: str,
        step: int,
        delta: dict[str, Any],
        snapshot_hash: str,
        prev_hash: Optional[str],
    ) -> str:
        return sha256_hex(
            {
                "seq": seq,
                "timestamp": timestamp,
                "step": step,
                "delta": delta,
                "snapshot_hash": snapshot_hash,
                "prev_hash": prev_hash,
            }
        )

    @classmethod
    def make(
        cls,
        seq: int,
        timestamp: str,
        step: int,
        delta: dict[str, Any],
        snapshot_hash: str,
        prev_hash: Optional[str],
    ) -> "HistoryEntry":
        return cls(
            seq=seq,
            timestamp=timestamp,
            step=step,
            delta=delta,
            snapshot_hash=snapshot_hash,
            prev_hash=prev_hash,
            entry_hash=cls.compute_hash(seq, timestamp, step, delta, snapshot_hash, prev_hash),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "seq": self.seq,
            "timestamp": self.timestamp,
            "step": self.step,
            "delta": self.delta,
            "snapshot_hash": self.snapshot_hash,
            "prev_hash": self.prev_hash,
            "entry_hash": self.entry_hash,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "HistoryEntry":
        return cls(
            seq=data["seq"],
            timestamp=data["timestamp"],
            step=data["step"],
            delta=data["delta"],
            snapshot_hash=data["snapshot_hash"],
            prev_hash=data.get("prev_hash"),
            entry_hash=data["entry_hash"],
        )


@dataclass
class Session:
    session_id: str
    created_at: str
    initial_spec: dict[str, Any]
    spec: OperationSpec
    findings: ValidationReport
    step_cursor: int
    snapshot: AssessmentSnapshot
    oso_evidence: dict[str, dict[str, Any]] = field(default_factory=dict)
    history: list[HistoryEntry] = field(default_factory=list)
    catalog: Optional[dict[str, Any]] = None
    # head of the persisted record this session was loaded from; None for new
    base_head: Optional[str] = None

    @property
    def head_hash(self) -> Optional[str]:
        return self.history[-1].entry_hash if self.history else None

    def loaded_catalog(self) -> OsoCatalog:
        return load_catalog(self.catalog) if self.catalog is not None else load_catalog()

    def to_dict(self) -> dict[str, Any]:
        return {
            "session_format": SESSION_FORMAT,
            "session_id": self.session_id,
            "created_at": self.created_at,
            "initial_spec": self.initial_spec,
            "spec": self.spec.to_dict(),
            "findings": self.findings.to_dict(),
            "step_cursor": self.step_cursor,
            "snapshot": self.snapshot.to_dict(),
            "oso_evidence": self.oso_evidence,
            "history": [e.to_dict() for e in self.history],
            "catalog": self.catalog,
        }


def _now_iso() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _new_session_id() -> str:
    return uuid.uuid4().hex[:12]


def valid_session_id(session_id: str) -> bool:
    return bool(_SESSION_ID_RE.match(session_id))


def evaluate_spec(
    spec: OperationSpec,
    findings: ValidationReport,
    oso_evidence: Optional[dict[str, dict[str, Any]]] = None,
    catalog: Optional[OsoCatalog] = None,
) -> AssessmentSnapshot:
    """Run the full step sequence; a step error halts with a partial snapshot."""
    gate = classify_category(spec.category_assertions)
    if gate.outcome is not GateOutcome.PROCEED:
        return AssessmentSnapshot(
            gate=gate,
            halt={"step": 0, "code": "gate", "detail": f"category gate: {gate.outcome.value}"},
        )
    if not findings.ok:
        return AssessmentSnapshot(
            gate=gate,
            halt={
                "step": 1,
                "code": "validation",
                "detail": "operation spec has validation errors",
            },
        )

    fields: dict[str, Any] = {"gate": gate}

    def halted(step: int, exc: EngineError) -> AssessmentSnapshot:
        return AssessmentSnapshot(**fields, halt={"step": step, "code": exc.code, "detail": str(exc)})

    # step 2: intrinsic ground risk
    grc = intrinsic_grc(spec.uav, spec.scenario)
    fields["grc"] = grc
    if not grc.assessable:
        return AssessmentSnapshot(
            **fields,
            halt={
                "step": 2,
                "code": "not-assessable",
                "detail": f"ground risk not assessable for {grc.na_cell}",
            },
        )

    # step 3: final ground risk
    try:
        grc = apply_ground_mitigations(grc, spec.ground_claims())
        fields["grc"] = grc
    except EngineError as exc:
        return halted(3, exc)

    # step 4: initial air risk
    try:
        arc = initial_arc(spec.airspace)
        fields["arc"] = arc
    except EngineError as exc:
        return halted(4, exc)

    # step 5: residual air risk
    try:
        arc = apply_air_mitigations(arc, spec.air_claims(), spec.airspace)
        fields["arc"] = arc
    except EngineError as exc:
        return halted(5, exc)

    # step 6: tactical mitigation requirement
    try:
        tmpr = tmpr_requirement(arc, spec.scenario, spec.evlos_observer_latency)
        fields["tmpr"] = tmpr
    except EngineError as exc:
        return halted(6, exc)

    # step 7: SAIL
    try:
        sail = determine_sail(grc, arc)
        fields["sail"] = sail
    except EngineError as exc:
        return halted(7, exc)

    # step 8: safety objectives, with recorded evidence merged in
    statuses = list(required_osos(sail, catalog))
    evidence = oso_evidence or {}
    for i, status in enumerate(statuses):
        record = evidence.get(status.oso_id)
        if record:
            statuses[i] = record_evidence(
                status,
                RobustnessLevel.from_dict(record["claim"]),
                tuple(record.get("evidence_refs", ())),
            )
    fields["osos"] = tuple(statuses)

    # step 9: adjacent area and containment; the adjacent airspace is the
    # surrounding (non-segregated) classification of the declared context
    try:
        extent = adjacent_area_extent(spec.uav.v_cruise)
        adjacent_context = replace(spec.airspace, atypical_segregated=False)
        adjacent = initial_arc(adjacent_context)
        containment = containment_verdict(
            adjacent,
            spec.adjacent_area_features,
            spec.mitigation_claims,
            extent_m=extent,
        )
        fields["containment"] = containment
    except EngineError as exc:
        return halted(9, exc)

    return AssessmentSnapshot(**fields)


def _cursor_for(snapshot: AssessmentSnapshot) -> int:
    if snapshot.halt is not None:
        return int(snapshot.halt["step"])
    return 10


def create_session(
    data: dict[str, Any],
    session_id: Optional[str] = None,
    created_at: Optional[str] = None,
    catalog: Optional[dict[str, Any]] = None,
) -> Session:
    """New session from a raw spec document, evaluated as far as it will go."""
    spec, parse_report = spec_from_dict(data)
    if spec is None:
        raise SpecInvalidError(parse_report)
    sid = session_id or _new_session_id()
    if not valid_session_id(sid):
        raise ValueError(f"invalid session id: {sid!r}")
    findings = parse_report.merged(validate_operation_spec(spec))
    cat = load_catalog(catalog) if catalog is not None else None
    snapshot = evaluate_spec(spec, findings, {}, cat)
    timestamp = created_at or _now_iso()
    session = Session(
        session_id=sid,
        created_at=timestamp,
        initial_spec=spec.to_dict(),
        spec=spec,
        findings=findings,
        step_cursor=_cursor_for(snapshot),
        snapshot=snapshot,
        catalog=catalog,
    )
    session.history.append(
        HistoryEntry.make(0, timestamp, session.step_cursor, {}, snapshot.hash(), None)
    )
    return session


def evaluate_all(session: Session) -> AssessmentSnapshot:
    """Re-derive the snapshot from the session's current spec.

    Appends a history entry only when the result differs from the recorded
    head, so repeated evaluation of an unchanged session is a no-op.
    """
    snapshot = evaluate_spec(session.spec, session.findings, session.oso_evidence, _session_catalog(session))
    _commit(session, snapshot, delta={}, timestamp=None)
    return session.snapshot


def _session_catalog(session: Session) -> Optional[OsoCatalog]:
    return load_catalog(session.catalog) if session.catalog is not None else None


def _commit(
    session: Session,
    snapshot: AssessmentSnapshot,
    delta: dict[str, Any],
    timestamp: Optional[str],
    force: bool = False,
) -> None:
    new_hash = snapshot.hash()
    head = session.history[-1] if session.history else None
    if not force and head is not None and head.snapshot_hash == new_hash and not delta:
        session.snapshot = replace(snapshot, documents=session.snapshot.documents)
        return
    documents = session.snapshot.documents if head is not None and head.snapshot_hash == new_hash else ()
    session.snapshot = replace(snapshot, documents=documents)
    session.step_cursor = _cursor_for(snapshot)
    session.history.append(
        HistoryEntry.make(
            seq=len(session.history),
            timestamp=timestamp or _now_iso(),
            step=session.step_cursor,
            delta=delta,
            snapshot_hash=new_hash,
            prev_hash=head.entry_hash if head else None,
        )
    )


def update_spec(session: Session, new_spec: dict[str, Any], timestamp: Optional[str] = None) -> Session:
    """Replace the spec document, re-evaluate, and append to history."""
    spec, parse_report = spec_from_dict(new_spec)
    if spec is None:
        raise SpecInvalidError(parse_report)
    findings = parse_report.merged(validate_operation_spec(spec))
    snapshot = evaluate_spec(spec, findings, session.oso_evidence, _session_catalog(session))
    session.spec = spec
    session.findings = findings
    _commit(session, snapshot, delta={"spec_replace": spec.to_dict()}, timestamp=timestamp, force=True)
    return session


def record_session_evidence(
    session: Session,
    oso_id: str,
    claim: RobustnessLevel,
    evidence_refs: tuple[str, ...],
    timestamp: Optional[str] = None,
) -> Session:
    """Attach evidence for one safety objective and re-evaluate."""
    if session.snapshot.osos is None or all(s.oso_id != oso_id for s in session.snapshot.osos):
        raise KeyError(oso_id)
    record = {"claim": claim.to_dict(), "evidence_refs": list(evidence_refs)}
    session.oso_evidence[oso_id] = record
    snapshot = evaluate_spec(session.spec, session.findings, session.oso_evidence, _session_catalog(session))
    _commit(session, snapshot, delta={"oso_evidence": {oso_id: record}}, timestamp=timestamp, force=True)
    return session


def attach_documents(session: Session, refs: list[dict[str, Any]]) -> None:
    """Record rendered-document references on the snapshot (outside the hash)."""
    existing = {d["doc_id"]: d for d in session.snapshot.documents}
    for ref in refs:
        existing[ref["doc_id"]] = ref
    ordered = tuple(existing[k] for k in sorted(existing))
    session.snapshot = replace(session.snapshot, documents=ordered)


def merge_delta(base: Any, delta: Any) -> Any:
    """Recursive merge: objects merge per key, everything else replaces.

    A null value sets the field to null (clearing optional fields); lists
    replace wholesale.
    """
    if isinstance(base, dict) and isinstance(delta, dict):
        merged = dict(base)
        for key, value in delta.items():
            if key in merged and isinstance(merged[key], dict) and isinstance(value, dict):
                merged[key] = merge_delta(merged[key], value)
            else:
                merged[key] = value
        return merged
    return delta


def _flatten(value: Any, prefix: str, out: dict[str, Any]) -> None:
    if isinstance(value, dict):
        for key in sorted(value):
            _flatten(value[key], f"{prefix}.{key}" if prefix else key, out)
    elif isinstance(value, list):
        for i, item in enumerate(value):
            _flatten(item, f"{prefix}[{i}]", out)
        if not value:
            out[prefix] = []
    else:
        out[prefix] = value


def diff_snapshots(base: AssessmentSnapshot, variant: AssessmentSnapshot) -> dict[str, Any]:
    """Field-level diff of two snapshots plus the top-level areas touched."""
    flat_base: dict[str, Any] = {}
    flat_variant: dict[str, Any] = {}
    _flatten(base.core_dict(), "", flat_base)
    _flatten(variant.core_dict(), "", flat_variant)
    changed: dict[str, dict[str, Any]] = {}
    for path in sorted(set(flat_base) | set(flat_variant)):
        b = flat_base.get(path)
        v = flat_variant.get(path)
        if b != v:
            changed[path] = {"base": b, "variant": v}
    areas = sorted({path.split(".")[0].split("[")[0] for path in changed})
    return {
        "changed": changed,
        "changed_areas": areas,
        "base_hash": base.hash(),
        "variant_hash": variant.hash(),
    }


def what_if(session: Session, delta: dict[str, Any]) -> dict[str, Any]:
    """Evaluate a hypothetical spec change without mutating the session."""
    merged = merge_delta(session.spec.to_dict(), delta)
    spec, parse_report = spec_from_dict(merged)
    if spec is None:
        raise DeltaRejected(parse_report)
    findings = parse_report.merged(validate_operation_spec(spec))
    if not findings.ok:
        raise DeltaRejected(findings)
    variant = evaluate_spec(spec, findings, session.oso_evidence, _session_catalog(session))
    report = diff_snapshots(session.snapshot, variant)
    report["delta"] = delta
    return report


def verify_history(history: list[HistoryEntry]) -> None:
    """Recompute the hash chain; raise HistoryIntegrityError on any break."""
    prev: Optional[str] = None
    for i, entry in enumerate(history):
        expected = HistoryEntry.compute_hash(
            entry.seq, entry.timestamp, entry.step, entry.delta, entry.snapshot_hash, entry.prev_hash
        )
        if entry.entry_hash != expected:
            raise HistoryIntegrityError(f"history entry {i} hash mismatch")
        if entry.prev_hash != prev:
            raise HistoryIntegrityError(f"history entry {i} breaks the chain")
        if entry.seq != i:
            raise HistoryIntegrityError(f"history entry {i} has wrong sequence number {entry.seq}")
        prev = entry.entry_hash
    return None


def replay_history(session: Session) -> str:
    """Re-apply every history delta from the initial spec; returns the final hash.

    The result must equal the head entry's snapshot hash; a mismatch means the
    recorded deltas no longer explain the snapshot.
    """
    spec_dict = dict(session.initial_spec)
    evidence: dict[str, dict[str, Any]] = {}
    catalog = _session_catalog(session)
    last_hash = ""
    for entry in session.history:
        delta = entry.delta
        if "spec_replace" in delta:
            spec_dict = delta["spec_replace"]
        if "oso_evidence" in delta:
            evidence.update(delta["oso_evidence"])
        spec, parse_report = spec_from_dict(spec_dict)
        if spec is None:
            raise HistoryIntegrityError("replayed spec no longer parses")
        findings = parse_report.merged(validate_operation_spec(spec))
        last_hash = evaluate_spec(spec, findings, evidence, catalog).hash()
    return last_hash


def session_from_dict(data: dict[str, Any]) -> Session:
    """Rebuild a session from its persisted form, verifying integrity."""
    if data.get("session_format") != SESSION_FORMAT:
        raise ValueError(f"unsupported session format: {data.get('session_format')!r}")
    spec, parse_report = spec_from_dict(data["spec"])
    if spec is None:
        raise ValueError("persisted session spec does not parse")
    findings = parse_report.merged(validate_operation_spec(spec))
    history = [HistoryEntry.from_dict(e) for e in data.get("history", [])]
    verify_history(history)
    snapshot = AssessmentSnapshot.from_dict(data["snapshot"])
    if history and history[-1].snapshot_hash != snapshot.hash():
        raise HistoryIntegrityError("snapshot does not match the history head")
    session = Session(
        session_id=data["session_id"],
        created_at=data["created_at"],
        initial_spec=data["initial_spec"],
        spec=spec,
        findings=findings,
        step_cursor=data["step_cursor"],
        snapshot=snapshot,
        oso_evidence=dict(data.get("oso_evidence", {})),
        history=history,
        catalog=data.get("catalog"),
    )
    session.base_head = session.head_hash
    return session


def session_payload(session: Session) -> dict[str, Any]:
    """The canonical session view shared by the CLI and the API."""
    return {
        "session_id": session.session_id,
        "created_at": session.created_at,
        "step_cursor": session.step_cursor,
        "head_hash": session.head_hash,
        "findings": session.findings.to_dict(),
        "spec": session.spec.to_dict(),
        "snapshot": session.snapshot.to_dict(),
        "history": [e.to_dict() for e in session.history],
    }


def summary_line(session: Session) -> str:
    """One-line human assessment summary."""
    snap = session.snapshot
    if snap.halt is not None:
        return f"halted at step {snap.halt['step']}: {snap.halt['code']} ({snap.halt['detail']})"
    grc = snap.grc.final if snap.grc else "?"
    arc = snap.arc.residual if snap.arc else "?"
    sail = snap.sail.sail if snap.sail else "?"
    return f"GRC {grc} / {arc} / SAIL {sail}"
