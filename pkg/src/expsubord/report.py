"""Report serialization: JSON (17 significant digits), CSV and Markdown."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict
from datetime import datetime, timezone
from pathlib import Path

TIMESTAMP_KEY = "generated_at"
FIELDS = ("theorem", "branch", "claimed", "empirical_min", "empirical_max", "attained_by", "verdict", "gap")


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g") if x != int(x) or abs(x) >= 1e17 else format(x, ".1f")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """``json.dumps`` with every float written to 17 significant digits.

    NaN and infinities become ``null``.  Key order is preserved.
    """
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return json.dumps(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, complex):
        return dumps([obj.real, obj.imag], indent, _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return dumps(obj.item(), indent, _level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def report_dict(result, timestamp: bool = True) -> dict:
    d = {
        "config": result.config.to_dict(),
        "reports": [asdict(r) for r in result.reports],
        "discrepancies": result.discrepancies,
    }
    if timestamp:
        d[TIMESTAMP_KEY] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return d


def to_json(result, timestamp: bool = True) -> str:
    return dumps(report_dict(result, timestamp)) + "\n"


def _cell(v) -> str:
    if isinstance(v, float):
        return _fmt_float(v) if math.isfinite(v) else ""
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v, separators=(",", ":"))
    return "" if v is None else str(v)


def to_csv(result) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")  # RFC 4180
    w.writerow(FIELDS)
    for r in result.reports:
        d = asdict(r)
        w.writerow([_cell(d[k]) for k in FIELDS])
    return buf.getvalue()


def _md_num(v) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_md_num(x) for x in v) + "]"
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def to_markdown(result) -> str:
    lines = [
        "| theorem | branch | claimed | empirical min | empirical max | gap | verdict |",
        "|---|---|---|---|---|---|---|",
    ]
    for r in result.reports:
        lines.append(
            f"| {r.theorem} | {r.branch} | {_md_num(r.claimed)} | {_md_num(r.empirical_min)} | "
            f"{_md_num(r.empirical_max)} | {_md_num(r.gap)} | {r.verdict} |"
        )
    if result.discrepancies:
        lines += ["", "Discrepancies:", ""]
        for d in result.discrepancies:
            lines.append(f"- `{d['id']}` ({d.get('kind', '')}): {d.get('note', d.get('computed', ''))}")
    return "\n".join(lines) + "\n"


def render(result, fmt: str) -> str:
    if fmt == "json":
        return to_json(result)
    if fmt == "csv":
        return to_csv(result)
    if fmt == "md":
        return to_markdown(result)
    raise ValueError(f"unknown format {fmt!r}")


def write_report(result, path, fmt: str = "json") -> Path:
    p = Path(path)
    try:
        p.write_text(render(result, fmt), encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write report to {p}: {exc}") from exc
    return p
