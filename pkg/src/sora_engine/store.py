"""Single-directory session store: one JSON document per session.

Writes are atomic (temp file + rename) and guarded by a last-writer check on
the history head hash, so a stale writer is rejected instead of silently
clobbering another writer's entries. Loading verifies the hash chain.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Optional, Union

from .canon import pretty_json
from .workflow import Session, session_from_dict, valid_session_id

import json

DEFAULT_HOME_ENV = "SORA_ENGINE_HOME"


class SessionNotFound(KeyError):
    def __init__(self, session_id: str):
        super().__init__(session_id)
        self.session_id = session_id


class WriteConflict(RuntimeError):
    """Another writer advanced the session since this copy was loaded."""

    def __init__(self, session_id: str, current_head: Optional[str]):
        super().__init__(f"session {session_id} was modified concurrently")
        self.session_id = session_id
        self.current_head = current_head


def default_store_dir() -> Path:
    override = os.environ.get(DEFAULT_HOME_ENV)
    if override:
        return Path(override)
    return Path.home() / ".sora-engine" / "sessions"


class SessionStore:
    def __init__(self, directory: Union[str, Path, None] = None):
        self.directory = Path(directory) if directory is not None else default_store_dir()
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, session_id: str) -> Path:
        if not valid_session_id(session_id):
            raise ValueError(f"invalid session id: {session_id!r}")
        return self.directory / f"{session_id}.json"

    def exists(self, session_id: str) -> bool:
        return self._path(session_id).exists()

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.directory.glob("*.json"))

    def load(self, session_id: str) -> Session:
        path = self._path(session_id)
        if not path.exists():
            raise SessionNotFound(session_id)
        data = json.loads(path.read_text(encoding="utf-8"))
        return session_from_dict(data)

    def _current_head(self, session_id: str) -> Optional[str]:
        path = self._path(session_id)
        if not path.exists():
            return None
        data = json.loads(path.read_text(encoding="utf-8"))
        history = data.get("history", [])
        return history[-1]["entry_hash"] if history else None

    def save(self, session: Session) -> Path:
        """Persist the session; rejects the write if the stored head moved.

        A new session (base_head None) may only create; a loaded session may
        only overwrite the head it was loaded at.
        """
        path = self._path(session.session_id)
        if path.exists():
            current = self._current_head(session.session_id)
            if session.base_head != current:
                raise WriteConflict(session.session_id, current)
        elif session.base_head is not None:
            raise WriteConflict(session.session_id, None)
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(pretty_json(session.to_dict()), encoding="utf-8")
        os.replace(tmp, path)
        session.base_head = session.head_hash
        return path
