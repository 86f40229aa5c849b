"""Record live API responses into test/fixtures for the wizard tests.

Run from the repository root after installing the Python package:

    python3 frontend/scripts/record-fixtures.py
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

REPO_ROOT = Path(__file__).resolve().parents[2]
sys.path.insert(0, str(REPO_ROOT / "tests"))

from conftest import FIXTURE_SPEC, REMOVE_TETHER_DELTA  # noqa: E402

from sora_engine.api import create_app  # noqa: E402

FIXTURES = REPO_ROOT / "frontend" / "test" / "fixtures"


def dump(name: str, payload: object) -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / name).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"recorded {name}")


def main() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        app = create_app(store_dir=tmp)
        with TestClient(app) as client:
            dump("fixture-spec.json", FIXTURE_SPEC)
            dump("remove-tether-delta.json", REMOVE_TETHER_DELTA)

            created = client.post(
                "/sessions", json={"spec": FIXTURE_SPEC, "session_id": "wizard-fixture"}
            )
            assert created.status_code == 201, created.text
            dump("create-session.json", created.json())

            dump("tables.json", client.get("/tables").json())
            dump("catalog.json", client.get("/catalog").json())
            dump("osos.json", client.get("/sessions/wizard-fixture/osos").json())

            whatif = client.post(
                "/sessions/wizard-fixture/whatif", json={"delta": REMOVE_TETHER_DELTA}
            )
            assert whatif.status_code == 200, whatif.text
            dump("whatif-remove-tether.json", whatif.json())

            empty = client.post("/sessions/wizard-fixture/whatif", json={"delta": {}})
            dump("whatif-empty.json", empty.json())

            evidence = client.put(
                "/sessions/wizard-fixture/osos/meteorological-assessment/evidence",
                json={
                    "claim": {"integrity": "low", "assurance": "low"},
                    "evidence_refs": ["preflight-environment#environment-items"],
                },
            )
            assert evidence.status_code == 200, evidence.text
            dump("evidence-recorded.json", evidence.json())

            document = client.post("/sessions/wizard-fixture/documents/operational-manual")
            assert document.status_code == 200, document.text
            dump("document-operational-manual.json", document.json())

            na_spec = json.loads(json.dumps(FIXTURE_SPEC))
            na_spec["scenario"]["overflown_area"] = "assembly-of-people"
            halted = client.post("/sessions", json={"spec": na_spec, "session_id": "wizard-na"})
            assert halted.status_code == 201, halted.text
            dump("create-session-na.json", halted.json())


if __name__ == "__main__":
    main()
