"""Document rendering for the supporting-document suite.

Templates live in an embedded, exportable JSON registry. Rendering is pure
text substitution: placeholders are dotted paths into the operation spec, the
assessment snapshot, or a small set of derived scalars, so identical inputs
produce byte-identical artifacts. Output is markdown with stable section
markers of the form '## [section-id] Title'.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Any, Optional

from .canon import sha256_hex
from .model import Finding, MitigationKind, OperationSpec, Severity, ValidationReport
from .tables import DOC_TEMPLATES, load_table

if TYPE_CHECKING:
    from .workflow import AssessmentSnapshot

_SECTION_RE = re.compile(r"^## \[([a-z0-9-]+)\] ", re.MULTILINE)
_PLACEHOLDER_RE = re.compile(r"\{([a-z_][a-z0-9_]*(?:\.[a-z0-9_]+)*)\}")

LOGBOOK_COLUMNS = (
    "date",
    "time",
    "uav_label",
    "configuration_version",
    "battery_labels",
    "takeoff_mass_kg",
    "payload",
    "mission",
    "crew",
    "resting_times",
    "incidence",
    "comments",
)

_LOGBOOK_MANDATORY = (
    "date",
    "time_start",
    "time_end",
    "uav_label",
    "configuration_version",
    "battery_labels",
    "takeoff_mass_kg",
    "payload",
    "mission",
    "crew",
    "resting_times",
    "incidence",
)


class RenderError(ValueError):
    """A placeholder could not be resolved; path names the binding."""

    def __init__(self, path: str):
        super().__init__(f"unresolved placeholder: {path}")
        self.path = path


@dataclass(frozen=True)
class TemplateSection:
    id: str
    title: str
    lines: tuple[str, ...]


@dataclass(frozen=True)
class DocumentTemplate:
    doc_id: str
    title: str
    sections: tuple[TemplateSection, ...]

    @property
    def required_sections(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.sections)

    @property
    def placeholders(self) -> tuple[str, ...]:
        found: list[str] = []
        for section in self.sections:
            for line in section.lines:
                for match in _PLACEHOLDER_RE.finditer(line):
                    if match.group(1) not in found:
                        found.append(match.group(1))
        return tuple(found)


@dataclass(frozen=True)
class DocumentArtifact:
    doc_id: str
    rendered: str
    section_inventory: tuple[str, ...]
    source_snapshot_hash: str

    @property
    def filename(self) -> str:
        return f"{self.doc_id}-{self.source_snapshot_hash[:12]}.md"

    def to_ref(self) -> dict[str, Any]:
        return {
            "doc_id": self.doc_id,
            "filename": self.filename,
            "source_snapshot_hash": self.source_snapshot_hash,
        }


def load_registry(path: Optional[str] = None) -> dict[str, DocumentTemplate]:
    """Template registry keyed by doc_id; exactly one template per document kind."""
    raw = load_table(DOC_TEMPLATES, path=path)
    registry: dict[str, DocumentTemplate] = {}
    for entry in raw["templates"]:
        sections = tuple(
            TemplateSection(id=s["id"], title=s["title"], lines=tuple(s["lines"]))
            for s in entry["sections"]
        )
        template = DocumentTemplate(doc_id=entry["doc_id"], title=entry["title"], sections=sections)
        if template.doc_id in registry:
            raise ValueError(f"duplicate template for {template.doc_id}")
        if not sections:
            raise ValueError(f"template {template.doc_id} has no sections")
        registry[template.doc_id] = template
    return registry


def _format_value(value: Any) -> str:
    if value is None:
        return "n/a"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:g}"
    if isinstance(value, (list, tuple)):
        return ", ".join(_format_value(v) for v in value)
    return str(value)


def _resolve(context: dict[str, Any], path: str) -> str:
    node: Any = context
    for part in path.split("."):
        if not isinstance(node, dict) or part not in node:
            raise RenderError(path)
        node = node[part]
    if isinstance(node, dict):
        raise RenderError(path)
    return _format_value(node)


def _derived_bindings(spec: OperationSpec, snapshot: Optional["AssessmentSnapshot"]) -> dict[str, Any]:
    derived: dict[str, Any] = {
        "crew_roles": [c.role for c in spec.crew_roles],
        "flight_radius": spec.volume.flight_geography.effective_radius(),
    }
    if snapshot is not None:
        if snapshot.grc is not None and snapshot.grc.deltas:
            derived["grc_deltas"] = ", ".join(f"{d:+d}" for d in snapshot.grc.deltas)
        if snapshot.arc is not None:
            derived["air_claim_count"] = len(
                [
                    c
                    for c in snapshot.arc.reduction_claims
                    if c.kind is MitigationKind.AIR_OPERATIONAL_RESTRICTION
                ]
            )
        if snapshot.osos is not None:
            derived["oso_count"] = len(snapshot.osos)
            derived["oso_satisfied"] = sum(1 for s in snapshot.osos if s.state.value == "satisfied")
            derived["oso_open"] = sum(1 for s in snapshot.osos if s.state.value != "satisfied")
    return derived


def render_document(
    template: DocumentTemplate,
    spec: OperationSpec,
    snapshot: Optional["AssessmentSnapshot"] = None,
) -> DocumentArtifact:
    """Render one document deterministically from the spec and snapshot."""
    snap_dict = snapshot.core_dict() if snapshot is not None else None
    source_hash = sha256_hex({"spec": spec.to_dict(), "snapshot": snap_dict})
    context = {
        "spec": spec.to_dict(),
        "snapshot": snap_dict or {},
        "derived": _derived_bindings(spec, snapshot),
    }

    def substitute(match: re.Match[str]) -> str:
        return _resolve(context, match.group(1))

    out: list[str] = [f"# {template.title}", "", f"document: {template.doc_id}", f"source: {source_hash}", ""]
    for section in template.sections:
        out.append(f"## [{section.id}] {section.title}")
        out.append("")
        for line in section.lines:
            out.append(_PLACEHOLDER_RE.sub(substitute, line))
        out.append("")
    rendered = "\n".join(out)
    return DocumentArtifact(
        doc_id=template.doc_id,
        rendered=rendered,
        section_inventory=section_inventory(rendered),
        source_snapshot_hash=source_hash,
    )


def section_inventory(rendered: str) -> tuple[str, ...]:
    """Section ids present in a rendered artifact, in order of appearance."""
    return tuple(_SECTION_RE.findall(rendered))


def validate_completeness(
    artifacts: list[DocumentArtifact],
    required: Optional[list[str]] = None,
    registry: Optional[dict[str, DocumentTemplate]] = None,
) -> ValidationReport:
    """Error finding per missing document and per missing required section."""
    reg = registry or load_registry()
    required_ids = list(required) if required is not None else list(reg)
    by_id = {a.doc_id: a for a in artifacts}
    findings: list[Finding] = []
    for doc_id in required_ids:
        artifact = by_id.get(doc_id)
        if artifact is None:
            findings.append(Finding(Severity.ERROR, doc_id, "required document is missing"))
            continue
        template = reg.get(doc_id)
        if template is None:
            findings.append(Finding(Severity.WARNING, doc_id, "no template registered for this document"))
            continue
        present = set(section_inventory(artifact.rendered))
        for section_id in template.required_sections:
            if section_id not in present:
                findings.append(
                    Finding(Severity.ERROR, f"{doc_id}.{section_id}", "required section is missing")
                )
    return ValidationReport(tuple(findings))


def render_logbook_entry(fields: dict[str, Any]) -> str:
    """One appended logbook row; all twelve columns, comments optional."""
    missing = [name for name in _LOGBOOK_MANDATORY if name not in fields or fields[name] in (None, "")]
    if missing:
        raise ValueError(f"missing mandatory logbook fields: {', '.join(missing)}")
    values = dict(fields)
    values["time"] = f"{values.pop('time_start')}-{values.pop('time_end')}"
    values.setdefault("comments", "")
    cells = [_format_value(values.get(col, "")) for col in LOGBOOK_COLUMNS]
    return "| " + " | ".join(cells) + " |"


def write_artifact(artifact: DocumentArtifact, out_dir: Path) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / artifact.filename
    path.write_text(artifact.rendered, encoding="utf-8")
    return path
