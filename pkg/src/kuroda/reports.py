"""Report serialization: JSON-ready conversion, aligned text, CSV rows.

Exact rationals are serialized as ``"p/q"`` strings (plain ``"n"`` for
integers), never as floats, so values survive round trips.  Ordering is
deterministic everywhere: dicts render in insertion order, which report
builders keep canonical.
"""

from __future__ import annotations

import csv
import dataclasses
import enum
import io
import json
from fractions import Fraction

import numpy as np


def jsonable(obj):
    """Recursively convert report objects to JSON-compatible data."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in items]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def render_json(data) -> str:
    return json.dumps(jsonable(data), indent=2)


def _is_scalar(value) -> bool:
    return not isinstance(value, (dict, list))


def _render_table(rows: list[dict], indent: str) -> list[str]:
    headers = list(rows[0].keys())
    cells = [[_scalar_text(r.get(h)) for h in headers] for r in rows]
    widths = [
        max(len(h), *(len(row[i]) for row in cells)) for i, h in enumerate(headers)
    ]
    lines = [indent + "  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    for row in cells:
        lines.append(indent + "  ".join(c.ljust(w) for c, w in zip(row, widths)))
    return lines


def _scalar_text(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.10g}"
    if isinstance(value, list):
        return "[" + ", ".join(_scalar_text(v) for v in value) + "]"
    return str(value)


def render_text(data, indent: int = 0) -> str:
    """Readable aligned rendering of a jsonable report."""
    data = jsonable(data)
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(data, dict):
        for key, value in data.items():
            if isinstance(value, dict):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(value, indent + 1))
            elif isinstance(value, list) and value and all(
                isinstance(v, dict) for v in value
            ):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_table(value, "  " * (indent + 1)))
            else:
                lines.append(f"{pad}{key}: {_scalar_text(value)}")
        return "\n".join(lines)
    if isinstance(data, list):
        if data and all(isinstance(v, dict) for v in data):
            return "\n".join(_render_table(data, pad))
        return "\n".join(f"{pad}{_scalar_text(v)}" for v in data)
    return f"{pad}{_scalar_text(data)}"


def render_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(rows[0].keys()))
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _scalar_text(jsonable(v)) for k, v in row.items()})
    return buffer.getvalue()


def emit_report(data, fmt: str, out=None, csv_rows: list[dict] | None = None) -> str:
    """Render a report in the requested format and write it (stdout or file)."""
    if fmt == "json":
        text = render_json(data)
    elif fmt == "text":
        text = render_text(data)
    elif fmt == "csv":
        if csv_rows is None:
            raise ValueError("this report has no CSV row form")
        text = render_csv(csv_rows)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if out is None:
        print(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    return text
