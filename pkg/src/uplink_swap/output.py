"""CSV / JSON result tables."""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Optional, Sequence, Union

from .sweep import SweepResult

METRIC_COLUMNS = ("eta_a", "eta_w", "P_gw", "F_ic", "P_S", "eta_tot", "F")
ERROR_COLUMN = "error"
SIG_DIGITS = 12


def fmt_number(x: float) -> str:
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    return f"{x:.{SIG_DIGITS}g}"


def header(axis_names: Sequence[str]) -> list[str]:
    return [*axis_names, *METRIC_COLUMNS, ERROR_COLUMN]


def table(result: SweepResult) -> list[dict[str, Any]]:
    """One dict per row with numbers rounded to 12 significant digits."""
    rows = []
    for r in result.rows:
        row: dict[str, Any] = {name: float(fmt_number(v)) for name, v in zip(result.axis_names, r.point)}
        metrics = r.metrics.as_row() if r.metrics is not None else {}
        for col in METRIC_COLUMNS:
            row[col] = float(fmt_number(float(metrics[col]))) if col in metrics else None
        row[ERROR_COLUMN] = r.error
        rows.append(row)
    return rows


def render(result: SweepResult, fmt: str = "csv") -> str:
    if not result.rows:
        raise ValueError("refusing to emit an empty result table")
    rows = table(result)
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown output format {fmt!r}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = header(result.axis_names)
    w.writerow(cols)
    for row in rows:
        w.writerow(["" if row[c] is None else (fmt_number(row[c]) if c != ERROR_COLUMN else row[c]) for c in cols])
    return buf.getvalue()


def emit_results(result: SweepResult, fmt: str = "csv", path: Optional[Union[str, Path]] = None) -> str:
    """Render the table and write it to ``path`` (stdout is the caller's business when None)."""
    text = render(result, fmt)
    if path is not None:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write results to {path}: {exc.strerror or exc}") from exc
    return text
