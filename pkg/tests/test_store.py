from __future__ import annotations

import json

import pytest

from sora_engine.store import SessionNotFound, SessionStore, WriteConflict
from sora_engine.workflow import HistoryIntegrityError, update_spec


@pytest.fixture
def store(tmp_path):
    return SessionStore(tmp_path / "sessions")


class TestRoundTrip:
    def test_save_load_save_is_byte_identical(self, store, fixture_session):
        path = store.save(fixture_session)
        first = path.read_bytes()
        loaded = store.load("fixture")
        store.save(loaded)
        assert path.read_bytes() == first

    def test_loaded_session_matches(self, store, fixture_session):
        store.save(fixture_session)
        loaded = store.load("fixture")
        assert loaded.snapshot.hash() == fixture_session.snapshot.hash()
        assert loaded.spec == fixture_session.spec
        assert loaded.history == fixture_session.history

    def test_list_ids(self, store, fixture_session):
        assert store.list_ids() == []
        store.save(fixture_session)
        assert store.list_ids() == ["fixture"]


class TestFailureModes:
    def test_unknown_id_not_found(self, store):
        with pytest.raises(SessionNotFound):
            store.load("missing")

    def test_invalid_id_rejected(self, store):
        with pytest.raises(ValueError):
            store.load("../escape")

    def test_tampered_history_is_an_integrity_error(self, store, fixture_session):
        path = store.save(fixture_session)
        data = json.loads(path.read_text(encoding="utf-8"))
        data["history"][0]["timestamp"] = "1999-01-01T00:00:00Z"
        path.write_text(json.dumps(data), encoding="utf-8")
        with pytest.raises(HistoryIntegrityError):
            store.load("fixture")

    def test_tampered_snapshot_is_an_integrity_error(self, store, fixture_session):
        path = store.save(fixture_session)
        data = json.loads(path.read_text(encoding="utf-8"))
        data["snapshot"]["sail"] = {"sail": "VI"}
        path.write_text(json.dumps(data), encoding="utf-8")
        with pytest.raises(HistoryIntegrityError):
            store.load("fixture")


class TestConcurrency:
    def test_stale_writer_is_rejected(self, store, fixture_session):
        store.save(fixture_session)
        first = store.load("fixture")
        second = store.load("fixture")

        spec = first.spec.to_dict()
        spec["uav"]["v_cruise"] = 3.0
        update_spec(first, spec)
        store.save(first)

        spec2 = second.spec.to_dict()
        spec2["uav"]["v_cruise"] = 4.0
        update_spec(second, spec2)
        with pytest.raises(WriteConflict):
            store.save(second)

    def test_refreshed_writer_succeeds(self, store, fixture_session):
        store.save(fixture_session)
        session = store.load("fixture")
        spec = session.spec.to_dict()
        spec["uav"]["v_cruise"] = 3.0
        update_spec(session, spec)
        store.save(session)
        again = store.load("fixture")
        assert again.spec.uav.v_cruise == 3.0

    def test_duplicate_create_is_a_conflict(self, store, fixture_session, fixture_spec):
        from sora_engine.workflow import create_session

        store.save(fixture_session)
        duplicate = create_session(fixture_spec, session_id="fixture")
        with pytest.raises(WriteConflict):
            store.save(duplicate)
