"""HTTP service: a thin adapter over the session store and pure engine.

Every response body is reproducible by a CLI invocation against the same
store. No state lives in the process; mutating calls are serialized by the
store's last-writer check and may carry an If-Match precondition holding the
history head hash.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Optional, Union

from fastapi import FastAPI, Header, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .docgen import RenderError, load_registry, render_document, write_artifact
from .engine import EngineError
from .model import RobustnessLevel, ValidationReport
from .osos import compliance_summary, load_catalog
from .store import SessionNotFound, SessionStore, WriteConflict
from .tables import tables_bundle
from .workflow import (
    DeltaRejected,
    Session,
    SpecInvalidError,
    attach_documents,
    create_session,
    evaluate_all,
    record_session_evidence,
    session_payload,
    update_spec,
    what_if,
)


class ApiError(Exception):
    """Transport error carrying the stable machine code taxonomy."""

    def __init__(
        self,
        status: int,
        code: str,
        detail: str,
        findings: Optional[ValidationReport] = None,
    ):
        super().__init__(detail)
        self.status = status
        self.code = code
        self.detail = detail
        self.findings = findings

    def body(self) -> dict[str, Any]:
        payload: dict[str, Any] = {"status": self.status, "code": self.code, "detail": self.detail}
        if self.findings is not None:
            payload["findings"] = self.findings.to_dict()
        return payload


class CreateSessionBody(BaseModel):
    spec: dict[str, Any]
    session_id: Optional[str] = None
    catalog: Optional[dict[str, Any]] = None


class SpecBody(BaseModel):
    spec: dict[str, Any]


class WhatIfBody(BaseModel):
    delta: dict[str, Any] = Field(default_factory=dict)


class EvidenceBody(BaseModel):
    claim: dict[str, str]
    evidence_refs: list[str] = Field(default_factory=list)


def create_app(store_dir: Union[str, Path, None] = None, ui_dir: Union[str, Path, None] = None) -> FastAPI:
    app = FastAPI(title="sora-engine", version="0.1.0")
    store = SessionStore(store_dir)
    artifacts_dir = store.directory / "artifacts"

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(status_code=exc.status, content=exc.body())

    def _load(session_id: str) -> Session:
        try:
            return store.load(session_id)
        except SessionNotFound:
            raise ApiError(404, "not-found", f"session not found: {session_id}") from None
        except ValueError as exc:
            raise ApiError(404, "not-found", str(exc)) from None

    def _save(session: Session) -> None:
        try:
            store.save(session)
        except WriteConflict as exc:
            raise ApiError(
                409,
                "conflict",
                f"session was modified concurrently (current head: {exc.current_head})",
            ) from None

    def _check_precondition(session: Session, if_match: Optional[str]) -> None:
        if if_match is not None and if_match != (session.head_hash or ""):
            raise ApiError(
                409, "conflict", f"history head moved (current head: {session.head_hash})"
            )

    @app.post("/sessions", status_code=201)
    def post_session(body: CreateSessionBody) -> JSONResponse:
        try:
            session = create_session(body.spec, session_id=body.session_id, catalog=body.catalog)
        except SpecInvalidError as exc:
            raise ApiError(422, "validation", "operation spec is structurally invalid", exc.report) from None
        except ValueError as exc:
            raise ApiError(422, "validation", str(exc)) from None
        _save(session)
        return JSONResponse(status_code=201, content=session_payload(session))

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict[str, Any]:
        return session_payload(_load(session_id))

    @app.put("/sessions/{session_id}/spec")
    def put_spec(
        session_id: str, body: SpecBody, if_match: Optional[str] = Header(default=None)
    ) -> dict[str, Any]:
        session = _load(session_id)
        _check_precondition(session, if_match)
        try:
            update_spec(session, body.spec)
        except SpecInvalidError as exc:
            raise ApiError(422, "validation", "operation spec is structurally invalid", exc.report) from None
        _save(session)
        return session_payload(session)

    @app.post("/sessions/{session_id}/evaluate")
    def post_evaluate(session_id: str) -> dict[str, Any]:
        session = _load(session_id)
        evaluate_all(session)
        if session.head_hash != session.base_head:
            _save(session)
        return session_payload(session)

    @app.post("/sessions/{session_id}/whatif")
    def post_whatif(session_id: str, body: WhatIfBody) -> dict[str, Any]:
        session = _load(session_id)
        try:
            return what_if(session, body.delta)
        except DeltaRejected as exc:
            raise ApiError(422, "validation", "what-if delta failed validation", exc.report) from None

    @app.get("/sessions/{session_id}/osos")
    def get_osos(session_id: str) -> dict[str, Any]:
        session = _load(session_id)
        statuses = session.snapshot.osos or ()
        return {
            "osos": [s.to_dict() for s in statuses],
            "summary": compliance_summary(tuple(statuses)),
        }

    @app.put("/sessions/{session_id}/osos/{oso_id}/evidence")
    def put_evidence(
        session_id: str,
        oso_id: str,
        body: EvidenceBody,
        if_match: Optional[str] = Header(default=None),
    ) -> dict[str, Any]:
        session = _load(session_id)
        _check_precondition(session, if_match)
        try:
            claim = RobustnessLevel.from_dict(body.claim)
        except (KeyError, ValueError) as exc:
            raise ApiError(422, "validation", f"bad robustness claim: {exc}") from None
        try:
            record_session_evidence(session, oso_id, claim, tuple(body.evidence_refs))
        except KeyError:
            raise ApiError(404, "not-found", f"no such safety objective in this assessment: {oso_id}") from None
        _save(session)
        return session_payload(session)

    @app.post("/sessions/{session_id}/documents/{doc_id}")
    def post_document(session_id: str, doc_id: str) -> dict[str, Any]:
        session = _load(session_id)
        registry = load_registry()
        template = registry.get(doc_id)
        if template is None:
            raise ApiError(404, "not-found", f"unknown document kind: {doc_id}")
        snapshot = session.snapshot if session.snapshot.complete else None
        try:
            artifact = render_document(template, session.spec, snapshot)
        except RenderError as exc:
            raise ApiError(422, "validation", str(exc)) from None
        write_artifact(artifact, artifacts_dir / session.session_id)
        attach_documents(session, [artifact.to_ref()])
        _save(session)
        return {
            "artifact": artifact.to_ref(),
            "rendered": artifact.rendered,
            "section_inventory": list(artifact.section_inventory),
        }

    @app.get("/catalog")
    def get_catalog() -> dict[str, Any]:
        return load_catalog().to_dict()

    @app.get("/tables")
    def get_tables() -> dict[str, Any]:
        return tables_bundle()

    @app.exception_handler(EngineError)
    async def _engine_error(_request: Request, exc: EngineError) -> JSONResponse:
        error = ApiError(422, exc.code, str(exc))
        return JSONResponse(status_code=error.status, content=error.body())

    ui_path = Path(ui_dir) if ui_dir else Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if ui_path.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(ui_path), html=True), name="ui")

    return app
