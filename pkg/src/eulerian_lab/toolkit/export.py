"""CSV / JSON serialization of count tables and verification reports."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from ..counting import CountTable

__all__ = [
    "table_to_json_obj", "table_from_json_obj", "table_to_json", "table_to_csv",
    "export_table", "report_to_json",
]


def table_to_json_obj(table: CountTable) -> dict:
    entries = []
    for key, value in sorted(table.entries.items()):
        row = dict(zip(table.index, key))
        row["value"] = str(value)
        entries.append(row)
    return {"kind": table.kind, "method": table.method, "index": list(table.index),
            "params": table.params, "entries": entries}


def table_from_json_obj(obj: dict) -> CountTable:
    index = tuple(obj["index"])
    entries = {tuple(int(e[name]) for name in index): int(e["value"]) for e in obj["entries"]}
    return CountTable(obj["kind"], index, entries, obj.get("method", "enumeration"),
                      dict(obj.get("params", {})))


def table_to_json(table: CountTable) -> str:
    return json.dumps(table_to_json_obj(table), indent=2) + "\n"


def table_to_csv(table: CountTable) -> str:
    """
    Dense row-major CSV: the last index becomes the columns, every other
    index combination present in the table becomes one row; gaps are 0.
    """
    *row_names, col_name = table.index
    cols = sorted({key[-1] for key in table.entries})
    col_range = range(min(cols), max(cols) + 1) if cols else range(0)
    rows: dict[tuple, dict[int, int]] = {}
    for key, v in table.entries.items():
        rows.setdefault(key[:-1], {})[key[-1]] = v
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(row_names + [f"{col_name}={c}" for c in col_range])
    for rk in sorted(rows):
        w.writerow(list(rk) + [rows[rk].get(c, 0) for c in col_range])
    return buf.getvalue()


def export_table(table: CountTable, fmt: str = "csv", destination=None) -> str:
    """Render ``table`` as csv or json; write it to ``destination`` when given."""
    if fmt == "csv":
        text = table_to_csv(table)
    elif fmt == "json":
        text = table_to_json(table)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if destination is not None:
        path = Path(destination)
        try:
            path.write_text(text, encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc}") from exc
    return text


def report_to_json(reports) -> str:
    if not isinstance(reports, (list, tuple)):
        reports = [reports]
    return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
