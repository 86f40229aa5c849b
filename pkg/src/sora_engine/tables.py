"""Embedded decision-table data.

Tables are versioned JSON files under sora_engine/data so that guideline
revisions replace data, not code. Loaders cache per path; pass an explicit
path to substitute a revised table.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Union

_DATA_PACKAGE = "sora_engine"

GRC_TABLE = "grc_table.json"
GROUND_MITIGATIONS = "ground_mitigations.json"
ARC_TABLE = "arc_table.json"
SAIL_TABLE = "sail_table.json"
TMPR_MAP = "tmpr_map.json"
OSO_CATALOG = "oso_catalog.json"
DOC_TEMPLATES = "doc_templates.json"


@lru_cache(maxsize=None)
def _load_embedded(name: str) -> dict[str, Any]:
    text = resources.files(_DATA_PACKAGE).joinpath("data", name).read_text(encoding="utf-8")
    return json.loads(text)


def load_table(name: str, path: Optional[Union[str, Path]] = None) -> dict[str, Any]:
    """Load a named embedded table, or a replacement file if path is given."""
    if path is not None:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    return _load_embedded(name)


def tables_bundle() -> dict[str, Any]:
    """All decision-table data in one mapping (service/UI display surface)."""
    return {
        "grc": load_table(GRC_TABLE),
        "ground_mitigations": load_table(GROUND_MITIGATIONS),
        "arc": load_table(ARC_TABLE),
        "sail": load_table(SAIL_TABLE),
        "tmpr": load_table(TMPR_MAP),
    }
