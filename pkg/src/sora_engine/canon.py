"""Canonical JSON serialization and hashing.

Every hash in the engine (snapshot hashes, history chain, document source
digests) is SHA-256 over the compact canonical form: sorted keys, no
whitespace, ASCII-escaped. Persisted files use the indented canonical form,
which is equally deterministic but diff-friendly.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any


def canonical_json(obj: Any) -> str:
    """Compact canonical rendering used for hashing."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def pretty_json(obj: Any) -> str:
    """Indented canonical rendering used for files and CLI output."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def sha256_hex(obj: Any) -> str:
    """SHA-256 hex digest of the compact canonical form."""
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()
