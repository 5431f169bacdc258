"""Report emission.

Writes each result table as a tab-separated file (or JSON lines), a
``metadata.txt`` with the run's configuration hash and input digests, and a
``plotdata/`` directory with the aligned series behind every figure.  Floats
are rendered with %.6g and the prediction-variance / fit ranks are recomputed
from the *formatted* values — two runs that emit identical text therefore
carry identical ranks, with ties broken by measure name.
"""
from __future__ import annotations

import json
from pathlib import Path

from ..errors import IoError
from .evaluate import EvaluationReport
from .io import write_series_csv

FLOAT_FMT = "%.6g"

TABLE_COLUMNS = {
    # documented public format: exactly these four columns
    "table1": (
        "measure",
        "mean_ratio",
        "variance_ratio",
        "turning_point_ratio",
    ),
    "table2": (
        "measure",
        "stat_no_trend",
        "reject_no_trend",
        "stat_trend",
        "reject_trend",
        "window_start",
        "window_end",
    ),
    "table3": (
        "measure",
        "stat_no_intercept",
        "reject_no_intercept",
        "stat_intercept",
        "reject_intercept",
        "lags_no_intercept",
        "lags_intercept",
        "window_start",
        "window_end",
    ),
    "table4": (
        "horizon",
        "measure",
        "variance",
        "rank",
        "window_start",
        "window_end",
    ),
    "table5": (
        "horizon",
        "measure",
        "stat_no_trend",
        "reject_no_trend",
        "stat_trend",
        "reject_trend",
        "window_start",
        "window_end",
    ),
    "table6": (
        "horizon",
        "measure",
        "stat_no_intercept",
        "reject_no_intercept",
        "stat_intercept",
        "reject_intercept",
        "window_start",
        "window_end",
    ),
    "table7": (
        "horizon",
        "measure",
        "alpha",
        "alpha_se",
        "beta",
        "beta_se",
        "f_test_prob",
        "r_squared",
        "rank",
        "rho",
        "nobs",
        "window_start",
        "window_end",
    ),
}


def format_cell(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return FLOAT_FMT % value
    return str(value)


def _add_ranks(rows, value_key, descending=False):
    """Attach 1-based ranks per horizon, computed from formatted values."""
    by_horizon: dict = {}
    for row in rows:
        by_horizon.setdefault(row.get("horizon"), []).append(row)
    for group in by_horizon.values():
        keyed = []
        for row in group:
            v = float(format_cell(row[value_key]))
            keyed.append((-v if descending else v, row["measure"], row))
        keyed.sort(key=lambda t: (t[0], t[1]))
        for rank, (_, _, row) in enumerate(keyed, start=1):
            row["rank"] = rank


def _emit_table(path: Path, name: str, rows, fmt: str) -> None:
    columns = TABLE_COLUMNS[name]
    if fmt == "jsonl":
        with open(path, "w") as fh:
            for row in rows:
                obj = {c: format_cell(row.get(c)) for c in columns}
                fh.write(json.dumps(obj, sort_keys=False) + "\n")
        return
    lines = ["\t".join(columns)]
    for row in rows:
        lines.append("\t".join(format_cell(row.get(c)) for c in columns))
    path.write_text("\n".join(lines) + "\n")


def emit_report(report: EvaluationReport, out_dir, fmt: str = "tsv") -> list:
    """Write every table, the metadata file and the plot data; return paths."""
    out = Path(out_dir)
    if fmt not in ("tsv", "jsonl"):
        raise ValueError(f"unknown report format: {fmt!r}")

    _add_ranks(report.table4, "variance")
    _add_ranks(report.table7, "r_squared", descending=True)

    ext = "tsv" if fmt == "tsv" else "jsonl"
    written = []
    try:
        out.mkdir(parents=True, exist_ok=True)
        for name in sorted(TABLE_COLUMNS):
            rows = getattr(report, name)
            path = out / f"{name}.{ext}"
            _emit_table(path, name, rows, fmt)
            written.append(path)

        meta_path = out / "metadata.txt"
        meta_lines = [f"{k}={report.metadata[k]}" for k in report.metadata]
        meta_path.write_text("\n".join(meta_lines) + "\n")
        written.append(meta_path)

        plot_dir = out / "plotdata"
        plot_dir.mkdir(exist_ok=True)
        if report.parent is not None:
            p = plot_dir / "parent.csv"
            write_series_csv(p, report.parent)
            written.append(p)
        for name in report.measure_order:
            p = plot_dir / f"{name}.csv"
            write_series_csv(p, report.measures[name])
            written.append(p)
    except OSError as exc:
        raise IoError(f"report emission failed: {exc}") from exc
    return written
