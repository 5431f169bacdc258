"""Monthly time-series containers.

A :class:`MonthlySeries` is a contiguous run of monthly observations with a
(year, month) start date.  A :class:`ComponentPanel` holds per-month component
inflation rates together with nonnegative weights that sum to one each month.
Both are intentionally plain: values are numpy arrays, dates are integers, and
all alignment is done by month index arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import Misaligned, WeightSumOutOfRange


def month_index(year: int, month: int) -> int:
    """Serial month number (year*12 + month-1), used for date arithmetic."""
    return year * 12 + (month - 1)


def index_to_date(idx: int) -> tuple[int, int]:
    """Inverse of :func:`month_index`."""
    return idx // 12, idx % 12 + 1


def format_month(year: int, month: int) -> str:
    return f"{year:04d}-{month:02d}"


@dataclass(frozen=True)
class MonthlySeries:
    """Contiguous monthly real-valued series with a start date.

    Parameters
    ----------
    start : (int, int)
        (year, month) of the first observation, month in 1..12.
    values : array_like
        Observation values; stored as a float64 numpy array.
    """

    start: tuple[int, int]
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size < 1:
            raise ValueError("values must be a nonempty 1-D array")
        if not np.all(np.isfinite(vals)):
            raise ValueError("values must be finite")
        y, m = self.start
        if not (1900 <= y <= 2100 and 1 <= m <= 12):
            raise ValueError(f"start date out of range: {self.start}")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return self.values.size

    @property
    def start_index(self) -> int:
        return month_index(*self.start)

    @property
    def end_index(self) -> int:
        """Serial month of the last observation."""
        return self.start_index + len(self) - 1

    def date_of(self, i: int) -> tuple[int, int]:
        """Date of observation i (0-based)."""
        return index_to_date(self.start_index + i)

    def shift_start(self, months: int) -> "MonthlySeries":
        """Same values, start date moved by `months` (used by horizon logic)."""
        return MonthlySeries(index_to_date(self.start_index + months), self.values)

    def window(self, start: tuple[int, int], end: tuple[int, int]) -> "MonthlySeries":
        """Restrict to the inclusive [start, end] date window."""
        lo = month_index(*start)
        hi = month_index(*end)
        if lo < self.start_index or hi > self.end_index or hi < lo:
            raise Misaligned(
                f"window {format_month(*start)}..{format_month(*end)} outside "
                f"series {format_month(*self.start)}..{format_month(*index_to_date(self.end_index))}"
            )
        a = lo - self.start_index
        return MonthlySeries(start, self.values[a : a + hi - lo + 1])

    def align_with(self, other: "MonthlySeries") -> tuple["MonthlySeries", "MonthlySeries"]:
        """Trim both series to their common date window."""
        lo = max(self.start_index, other.start_index)
        hi = min(self.end_index, other.end_index)
        if hi < lo:
            raise Misaligned("series do not overlap")
        w = index_to_date(lo), index_to_date(hi)
        return self.window(*w), other.window(*w)


def require_aligned(a: MonthlySeries, b: MonthlySeries) -> None:
    """Raise Misaligned unless a and b share start date and length."""
    if a.start != b.start or len(a) != len(b):
        raise Misaligned(
            f"series misaligned: {format_month(*a.start)} x{len(a)} vs "
            f"{format_month(*b.start)} x{len(b)}"
        )


@dataclass
class ComponentPanel:
    """Per-month component inflation rates with weights summing to one.

    `inflation` and `weights` are (months x components) float arrays; `start`
    dates the first row.  Weights must be nonnegative and each row must sum to
    1 within 1e-9 (construction renormalizes from anything within 1e-3, the
    CSV loader's documented tolerance).
    """

    start: tuple[int, int]
    component_ids: list[str]
    inflation: np.ndarray
    weights: np.ndarray
    _renormalized: bool = field(default=False, repr=False)

    def __post_init__(self):
        self.inflation = np.asarray(self.inflation, dtype=float)
        self.weights = np.asarray(self.weights, dtype=float)
        if self.inflation.shape != self.weights.shape:
            raise ValueError("inflation and weights shapes differ")
        if self.inflation.ndim != 2:
            raise ValueError("panel matrices must be 2-D (months x components)")
        if self.inflation.shape[1] != len(self.component_ids):
            raise ValueError("component_ids length does not match matrix width")
        if len(set(self.component_ids)) != len(self.component_ids):
            raise ValueError("duplicate component ids")
        if not (np.all(np.isfinite(self.inflation)) and np.all(np.isfinite(self.weights))):
            raise ValueError("panel contains non-finite values")
        if np.any(self.weights < 0):
            raise ValueError("weights must be nonnegative")
        sums = self.weights.sum(axis=1)
        bad = np.where(np.abs(sums - 1.0) > 1e-3)[0]
        if bad.size:
            y, m = index_to_date(month_index(*self.start) + int(bad[0]))
            raise WeightSumOutOfRange(
                f"weights for {format_month(y, m)} sum to {sums[bad[0]]:.6f}"
            )
        if np.any(np.abs(sums - 1.0) > 1e-9):
            self.weights = self.weights / sums[:, None]
            self._renormalized = True

    @property
    def n_months(self) -> int:
        return self.inflation.shape[0]

    @property
    def n_components(self) -> int:
        return self.inflation.shape[1]

    def dates(self) -> list[tuple[int, int]]:
        base = month_index(*self.start)
        return [index_to_date(base + i) for i in range(self.n_months)]
