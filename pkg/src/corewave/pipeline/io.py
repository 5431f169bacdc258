"""CSV ingestion for monthly series and component panels."""
from __future__ import annotations

import csv
import os
from pathlib import Path

import numpy as np

from ..errors import (
    EmptyFile,
    MalformedRow,
    NonContiguousDates,
    WeightSumOutOfRange,
)
from ..series import ComponentPanel, MonthlySeries, index_to_date, month_index


def _parse_month(token: str, line_no: int) -> int:
    """Accept YYYY-MM or YYYY-MM-DD; returns the serial month index."""
    parts = token.strip().split("-")
    if len(parts) not in (2, 3):
        raise MalformedRow(f"line {line_no}: bad date {token!r}", line_no)
    try:
        year, month = int(parts[0]), int(parts[1])
    except ValueError:
        raise MalformedRow(f"line {line_no}: bad date {token!r}", line_no) from None
    if not 1 <= month <= 12:
        raise MalformedRow(f"line {line_no}: month out of range in {token!r}", line_no)
    return month_index(year, month)


def _read_rows(path: str | Path, expected_header: list[str]):
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyFile(f"{path}: empty file") from None
        if [h.strip().lower() for h in header] != expected_header:
            raise MalformedRow(
                f"{path}: expected header {','.join(expected_header)}", 1
            )
        rows = list(reader)
    if not rows:
        raise EmptyFile(f"{path}: no data rows")
    return rows


def load_series_csv(path: str | Path) -> MonthlySeries:
    """Load a `date,value` CSV into a contiguous MonthlySeries."""
    rows = _read_rows(path, ["date", "value"])
    months, values = [], []
    for i, row in enumerate(rows, start=2):
        if len(row) != 2:
            raise MalformedRow(f"line {i}: expected 2 fields, got {len(row)}", i)
        months.append(_parse_month(row[0], i))
        try:
            values.append(float(row[1]))
        except ValueError:
            raise MalformedRow(f"line {i}: bad value {row[1]!r}", i) from None
    for prev, cur in zip(months, months[1:]):
        if cur != prev + 1:
            y, m = index_to_date(cur)
            raise NonContiguousDates(f"gap or duplicate at {y:04d}-{m:02d}")
    return MonthlySeries(index_to_date(months[0]), np.array(values))


def load_panel_csv(path: str | Path) -> ComponentPanel:
    """Load a long-format `date,component,inflation,weight` CSV into a panel.

    Months must be contiguous, every month must carry the same component set,
    and weights must sum to 1 within [0.999, 1.001] per month (renormalized).
    """
    rows = _read_rows(path, ["date", "component", "inflation", "weight"])
    cells: dict[int, dict[str, tuple[float, float]]] = {}
    component_order: list[str] = []
    for i, row in enumerate(rows, start=2):
        if len(row) != 4:
            raise MalformedRow(f"line {i}: expected 4 fields, got {len(row)}", i)
        m = _parse_month(row[0], i)
        cid = row[1].strip()
        if not cid:
            raise MalformedRow(f"line {i}: empty component id", i)
        try:
            infl, w = float(row[2]), float(row[3])
        except ValueError:
            raise MalformedRow(f"line {i}: bad numeric field", i) from None
        month_cells = cells.setdefault(m, {})
        if cid in month_cells:
            y, mo = index_to_date(m)
            raise MalformedRow(
                f"line {i}: duplicate ({y:04d}-{mo:02d}, {cid})", i
            )
        month_cells[cid] = (infl, w)
        if cid not in component_order:
            component_order.append(cid)

    months = sorted(cells)
    for prev, cur in zip(months, months[1:]):
        if cur != prev + 1:
            y, mo = index_to_date(cur)
            raise NonContiguousDates(f"gap at {y:04d}-{mo:02d}")
    n, k = len(months), len(component_order)
    inflation = np.empty((n, k))
    weights = np.empty((n, k))
    for r, m in enumerate(months):
        month_cells = cells[m]
        if set(month_cells) != set(component_order):
            y, mo = index_to_date(m)
            missing = sorted(set(component_order) - set(month_cells))
            raise MalformedRow(f"{y:04d}-{mo:02d}: missing components {missing}")
        for c, cid in enumerate(component_order):
            inflation[r, c], weights[r, c] = month_cells[cid]
    sums = weights.sum(axis=1)
    bad = np.where((sums < 0.999) | (sums > 1.001))[0]
    if bad.size:
        y, mo = index_to_date(months[bad[0]])
        raise WeightSumOutOfRange(
            f"weights for {y:04d}-{mo:02d} sum to {sums[bad[0]]:.6f}"
        )
    weights = weights / sums[:, None]
    return ComponentPanel(
        start=index_to_date(months[0]),
        component_ids=component_order,
        inflation=inflation,
        weights=weights,
    )


def write_series_csv(path: str | Path, series: MonthlySeries, fmt: str = "%.6g") -> None:
    """Write a MonthlySeries as a `date,value` CSV (6 significant digits)."""
    lines = ["date,value"]
    base = series.start_index
    for i, v in enumerate(series.values):
        y, m = index_to_date(base + i)
        lines.append(f"{y:04d}-{m:02d},{fmt % v}")
    Path(path).write_text("\n".join(lines) + "\n")


def archive_dir() -> Path:
    """The archived-data directory (COREWAVE_DATA_DIR overrides the packaged one)."""
    env = os.environ.get("COREWAVE_DATA_DIR")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent.parent / "data"
