"""
Single-file persistent store for count tables.

Layout (JSON)::

    {"format_version": 1, "checksum": "<sha256 of payload>", "payload": {"tables": {...}}}

The checksum covers the canonical (sorted-key, compact) encoding of
``payload``. Tables are keyed ``"<kind>:<n>:<r>"``.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from ..counting import CountTable
from ..exceptions import CacheError
from .export import table_from_json_obj, table_to_json_obj

__all__ = ["FORMAT_VERSION", "CacheFile", "cache_key", "default_cache_path",
           "save_cache", "load_cache"]

FORMAT_VERSION = 1
ENV_VAR = "EULERIAN_LAB_CACHE"


def cache_key(kind: str, n: int, r: int | None = None) -> str:
    return f"{kind}:{n}:{'' if r is None else r}"


def default_cache_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "eulerian_lab" / "tables.json"


@dataclass
class CacheFile:
    tables: dict[str, CountTable] = field(default_factory=dict)
    format_version: int = FORMAT_VERSION


def _checksum(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def save_cache(path, tables: dict[str, CountTable]) -> Path:
    path = Path(path)
    payload = {"tables": {k: table_to_json_obj(t) for k, t in sorted(tables.items())}}
    doc = {"format_version": FORMAT_VERSION, "checksum": _checksum(payload), "payload": payload}
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(json.dumps(doc, sort_keys=True) + "\n", encoding="utf-8")
        tmp.replace(path)
    except OSError as exc:
        raise CacheError(f"cannot write cache {path}: {exc}") from exc
    return path


def load_cache(path) -> CacheFile:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise CacheError(f"cannot read cache {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CacheError(f"cache {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "payload" not in doc:
        raise CacheError(f"cache {path} has no payload")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise CacheError(f"cache {path} has format version {version}, expected {FORMAT_VERSION}")
    if doc.get("checksum") != _checksum(doc["payload"]):
        raise CacheError(f"cache {path} failed its checksum")
    try:
        tables = {k: table_from_json_obj(v) for k, v in doc["payload"]["tables"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise CacheError(f"cache {path} has a malformed table: {exc}") from exc
    return CacheFile(tables, version)
