"""Command-line interface: validate, assess, whatif, docs, catalog, serve.

Exit codes are stable: 0 success, 1 validation errors / rejected delta,
2 usage or path errors, 3 evaluation halt (not-assessable cell, Category C
referral, latency violation). Every command supports --format json, and the
JSON bodies match the API's responses for the same store.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional

from .canon import pretty_json
from .docgen import load_registry, render_document, validate_completeness, write_artifact
from .model import SpecParseError, ValidationReport
from .osos import CatalogError, load_catalog
from .store import SessionNotFound, SessionStore, WriteConflict
from .workflow import (
    DeltaRejected,
    SpecInvalidError,
    create_session,
    evaluate_all,
    attach_documents,
    session_payload,
    summary_line,
    what_if,
)

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2
EXIT_HALT = 3


def _print_findings(report: ValidationReport, stderr: bool = False) -> None:
    for f in report.findings:
        print(f"{f.severity.value}: {f.path}: {f.message}", file=sys.stderr if stderr else sys.stdout)


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise SystemExit(_usage_error(f"file not found: {path}"))
    except json.JSONDecodeError as exc:
        raise SystemExit(_usage_error(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}"))


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _store(args: argparse.Namespace) -> SessionStore:
    return SessionStore(args.store)


def cmd_validate(args: argparse.Namespace) -> int:
    data = _load_json(args.spec)
    from .model import spec_from_dict, validate_operation_spec

    spec, report = spec_from_dict(data)
    if spec is not None:
        report = report.merged(validate_operation_spec(spec))
    if args.format == "json":
        print(pretty_json(report.to_dict()), end="")
    else:
        _print_findings(report)
        if not report.findings:
            print("ok: no findings")
    return EXIT_OK if report.ok else EXIT_FINDINGS


def cmd_assess(args: argparse.Namespace) -> int:
    store = _store(args)
    if args.session and not args.spec:
        try:
            session = store.load(args.session)
        except SessionNotFound:
            return _usage_error(f"session not found: {args.session}")
        evaluate_all(session)
        if session.head_hash != session.base_head:
            store.save(session)
    else:
        if not args.spec:
            return _usage_error("assess requires --spec or --session")
        data = _load_json(args.spec)
        catalog = _load_json(args.catalog) if args.catalog else None
        try:
            session = create_session(data, session_id=args.session, catalog=catalog)
        except SpecInvalidError as exc:
            _print_findings(exc.report, stderr=True)
            return EXIT_FINDINGS
        except ValueError as exc:
            return _usage_error(str(exc))
        try:
            store.save(session)
        except WriteConflict:
            return _usage_error(f"session already exists: {session.session_id}")

    if args.report:
        from .report import write_report

        write_report(session, Path(args.report))

    if args.format == "json":
        print(pretty_json(session_payload(session)), end="")
    else:
        print(summary_line(session))
        print(f"session: {session.session_id}")
        if not session.findings.ok:
            _print_findings(session.findings)
    if session.snapshot.halt is not None and session.snapshot.halt["code"] != "gate":
        return EXIT_HALT
    return EXIT_OK


def cmd_whatif(args: argparse.Namespace) -> int:
    store = _store(args)
    try:
        session = store.load(args.session)
    except SessionNotFound:
        return _usage_error(f"session not found: {args.session}")
    delta = _load_json(args.delta)
    try:
        diff = what_if(session, delta)
    except DeltaRejected as exc:
        _print_findings(exc.report, stderr=True)
        return EXIT_FINDINGS
    if args.format == "json":
        print(pretty_json(diff), end="")
    else:
        if not diff["changed"]:
            print("no change")
        else:
            print("changed areas: " + ", ".join(diff["changed_areas"]))
            for path, values in diff["changed"].items():
                print(f"  {path}: {values['base']!r} -> {values['variant']!r}")
    return EXIT_OK


def cmd_docs(args: argparse.Namespace) -> int:
    if args.export_templates:
        from .tables import DOC_TEMPLATES, load_table

        Path(args.export_templates).write_text(
            pretty_json(load_table(DOC_TEMPLATES)), encoding="utf-8"
        )
        print(args.export_templates)
        return EXIT_OK
    if not args.session:
        return _usage_error("docs requires --session (or --export-templates)")
    store = _store(args)
    try:
        session = store.load(args.session)
    except SessionNotFound:
        return _usage_error(f"session not found: {args.session}")
    registry = load_registry()
    doc_ids = args.doc if args.doc else list(registry)
    unknown = [d for d in doc_ids if d not in registry]
    if unknown:
        return _usage_error(f"unknown document kinds: {', '.join(unknown)}")
    out_dir = Path(args.out) if args.out else Path("documents")
    artifacts = []
    for doc_id in doc_ids:
        snapshot = session.snapshot if session.snapshot.complete else None
        try:
            artifact = render_document(registry[doc_id], session.spec, snapshot)
        except Exception as exc:
            print(f"error rendering {doc_id}: {exc}", file=sys.stderr)
            return EXIT_HALT
        artifacts.append(artifact)
        write_artifact(artifact, out_dir)
    attach_documents(session, [a.to_ref() for a in artifacts])
    store.save(session)
    report = validate_completeness(artifacts, required=doc_ids, registry=registry)
    if args.figures:
        from .report import render_volume_figure

        render_volume_figure(session, out_dir / "operational-volume.png")
    if args.format == "json":
        print(
            pretty_json(
                {
                    "out_dir": str(out_dir),
                    "artifacts": [a.to_ref() for a in artifacts],
                    "completeness": report.to_dict(),
                }
            ),
            end="",
        )
    else:
        for artifact in artifacts:
            print(str(out_dir / artifact.filename))
        _print_findings(report)
    return EXIT_OK if report.ok else EXIT_FINDINGS


def cmd_catalog(args: argparse.Namespace) -> int:
    if args.export:
        catalog = load_catalog()
        Path(args.export).write_text(pretty_json(catalog.to_dict()), encoding="utf-8")
        print(args.export)
        return EXIT_OK
    if args.check:
        data = _load_json(args.check)
        try:
            catalog = load_catalog(data)
        except CatalogError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FINDINGS
        print(f"ok: {len(catalog.entries)} entries")
        return EXIT_OK
    catalog = load_catalog()
    if args.format == "json":
        print(pretty_json(catalog.to_dict()), end="")
    else:
        for entry in catalog.entries:
            sails = ", ".join(f"{k}:{v.value}" for k, v in sorted(entry.required_robustness_by_sail.items()))
            print(f"{entry.oso_id} [{entry.threat_category.value}] {sails}")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .api import create_app

    app = create_app(store_dir=args.store)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sora", description="UAV flight-authorization risk assessment")
    parser.add_argument("--store", help="session store directory (default: $SORA_ENGINE_HOME)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate an operation spec file")
    p.add_argument("--spec", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("assess", help="evaluate a spec and persist the session")
    p.add_argument("--spec")
    p.add_argument("--session", help="session id to create or re-evaluate")
    p.add_argument("--catalog", help="safety-objective catalog file")
    p.add_argument("--report", help="write assessment-summary.csv and figures to this directory")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_assess)

    p = sub.add_parser("whatif", help="diff a hypothetical spec change against a session")
    p.add_argument("--session", required=True)
    p.add_argument("--delta", required=True, help="JSON file with a partial spec change")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_whatif)

    p = sub.add_parser("docs", help="render supporting documents for a session")
    p.add_argument("--session")
    p.add_argument("--doc", action="append", help="document kind (repeatable; default: all)")
    p.add_argument("--out", help="output directory (default: ./documents)")
    p.add_argument("--figures", action="store_true", help="also render the operational-volume figure")
    p.add_argument("--export-templates", help="write the embedded template registry to this path")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_docs)

    p = sub.add_parser("catalog", help="inspect, export, or check safety-objective catalogs")
    p.add_argument("--export", help="write the default catalog to this path")
    p.add_argument("--check", help="validate a catalog file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("serve", help="run the HTTP API service")
    p.add_argument("--port", type=int, default=8008)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except SpecParseError as exc:
        return _usage_error(str(exc))
    except WriteConflict as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FINDINGS


if __name__ == "__main__":
    sys.exit(main())
