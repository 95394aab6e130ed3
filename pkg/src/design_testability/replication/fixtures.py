"""Published result tables, transcribed verbatim and guarded by a checksum."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Any, Mapping, Optional

from ..exceptions import FixtureCorruption

FIXTURE_FILE = "paper_fixtures.json"
FIXTURE_SHA256 = "9b49af83dccb19d7f5753b961854bacf9ef49ec7c371fe9127e954d604327b85"


def _freeze(obj):
    if isinstance(obj, dict):
        return MappingProxyType({k: _freeze(v) for k, v in obj.items()})
    if isinstance(obj, list):
        return tuple(_freeze(v) for v in obj)
    return obj


@dataclass(frozen=True)
class PublishedTables:
    table1: Mapping[str, Any]
    table2: Mapping[str, Any]
    training: Mapping[str, Any]
    table3: Mapping[str, Any]
    table4: Mapping[str, Any]
    table5: Mapping[str, Any]
    sha256: str

    @property
    def table4_rows(self):
        return self.table4["rows"]

    @property
    def table3_groups(self):
        return self.table3["groups"]


def fixture_bytes(path: Optional[Path] = None) -> bytes:
    if path is not None:
        return Path(path).read_bytes()
    return resources.files(__package__).joinpath(FIXTURE_FILE).read_bytes()


def load_fixtures(path=None) -> PublishedTables:
    """Load the fixture document, refusing anything whose checksum differs."""
    raw = fixture_bytes(path)
    digest = hashlib.sha256(raw).hexdigest()
    if digest != FIXTURE_SHA256:
        raise FixtureCorruption(
            f"fixture checksum mismatch for {path or FIXTURE_FILE}: "
            f"expected {FIXTURE_SHA256}, got {digest}"
        )
    doc = json.loads(raw.decode("utf-8"))
    return PublishedTables(
        **{k: _freeze(doc[k]) for k in ("table1", "table2", "training", "table3", "table4", "table5")},
        sha256=digest,
    )
