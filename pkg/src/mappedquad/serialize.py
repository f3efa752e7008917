"""CSV / JSON writers with a ``#`` metadata header.

Floats are written with 17 significant digits so that output round-trips and
is byte-identical across runs with the same inputs.
"""

from __future__ import annotations

import functools
import io
import json
import math
import subprocess
from pathlib import Path

__all__ = ["fmt", "build_id", "write_table", "rule_rows", "rule_table"]

_COL_SEP = ","


def fmt(v) -> str:
    """Deterministic text form of a table cell."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int,)) and not isinstance(v, bool):
        return str(v)
    if hasattr(v, "item"):
        return fmt(v.item())
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".17g")
    return str(v)


def _json_value(v):
    if hasattr(v, "item"):
        v = v.item()
    if isinstance(v, float) and not math.isfinite(v):
        return fmt(v)
    return v


@functools.lru_cache(maxsize=1)
def build_id() -> str:
    """Package version plus ``git describe`` of the source tree when available."""
    from . import __version__

    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty", "--tags"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True, text=True, timeout=5, check=True,
        ).stdout.strip()
    except (OSError, subprocess.SubprocessError):
        out = ""
    return f"{__version__}+{out}" if out else __version__


def write_table(columns, rows, meta, fmt_name="csv", extra=None) -> str:
    """Render a table as CSV (``#`` header) or JSON; returns the text.

    ``meta`` is an ordered mapping written as ``# key=value`` lines;
    ``extra`` (JSON only, or ``# key=value`` lines for CSV) holds summaries.
    """
    if fmt_name == "json":
        doc = {
            "config": {k: _json_value(v) for k, v in meta.items()},
            "columns": list(columns),
            "rows": [{c: _json_value(v) for c, v in zip(columns, r)} for r in rows],
        }
        if extra:
            doc.update({k: ({kk: _json_value(vv) for kk, vv in v.items()} if isinstance(v, dict)
                            else _json_value(v)) for k, v in extra.items()})
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"
    if fmt_name != "csv":
        raise ValueError(f"unknown format {fmt_name!r}")
    buf = io.StringIO()
    for k, v in meta.items():
        buf.write(f"# {k}={fmt(v)}\n")
    for k, v in (extra or {}).items():
        if isinstance(v, dict):
            for kk, vv in v.items():
                buf.write(f"# {k}.{kk}={fmt(vv)}\n")
        else:
            buf.write(f"# {k}={fmt(v)}\n")
    buf.write(_COL_SEP.join(columns) + "\n")
    for r in rows:
        buf.write(_COL_SEP.join(fmt(v) for v in r) + "\n")
    return buf.getvalue()


def rule_rows(rule):
    return [(i, float(x), float(w)) for i, (x, w) in enumerate(zip(rule.x, rule.weights))]


def rule_table(rule, fmt_name="csv", meta=None, diagnostics=None) -> str:
    """Serialise a quadrature rule: columns ``i, x_i, w_i``; header with alpha, n, m, mode."""
    head = {
        "alpha": None if rule.alpha is None else rule.alpha.alpha,
        "n": rule.degree,
        "m": rule.m,
        "mode": rule.mode,
    }
    head.update(meta or {})
    extra = {"diagnostics": diagnostics.as_dict()} if diagnostics is not None else None
    return write_table(("i", "x_i", "w_i"), rule_rows(rule), head, fmt_name, extra)
