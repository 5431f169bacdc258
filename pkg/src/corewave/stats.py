"""Descriptive statistics for screening and summary tables.

Jarque-Bera normality (classical n-denominator moment form), turning-point
counting on run-compressed series, and the three summary ratios (means,
variances, turning points) used to compare a core series against its parent.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats as sps

from .errors import DegenerateSeries, TooFewObservations, ZeroDenominator
from .series import MonthlySeries, require_aligned


@dataclass(frozen=True)
class JBResult:
    statistic: float
    p_value: float
    n: int
    skewness: float
    kurtosis: float


@dataclass(frozen=True)
class SummaryRatios:
    mean_ratio: float
    variance_ratio: float
    turning_point_ratio: float


def jarque_bera(series) -> JBResult:
    """Jarque-Bera normality test.

    statistic = n/6 * (S^2 + (K-3)^2 / 4) with skewness S and kurtosis K from
    n-denominator (population-moment) estimators; p-value from the chi2(2)
    survival function.
    """
    x = np.asarray(series, dtype=float)
    n = x.size
    if n < 8:
        raise TooFewObservations(f"jarque_bera needs n >= 8, got {n}")
    c = x - x.mean()
    m2 = np.mean(c * c)
    if m2 <= 0:
        raise DegenerateSeries("zero sample variance")
    m3 = np.mean(c**3)
    m4 = np.mean(c**4)
    skew = m3 / m2**1.5
    kurt = m4 / m2**2
    stat = n / 6.0 * (skew * skew + (kurt - 3.0) ** 2 / 4.0)
    return JBResult(
        statistic=float(stat),
        p_value=float(sps.chi2.sf(stat, 2)),
        n=n,
        skewness=float(skew),
        kurtosis=float(kurt),
    )


def count_turning_points(series) -> int:
    """Number of strict local extrema after compressing equal-value runs.

    Consecutive equal values collapse to a single point first, so a flat
    plateau contributes at most one turning point.  A turning point is then
    an interior point of the compressed series where the first difference
    changes sign.
    """
    x = np.asarray(series, dtype=float)
    if x.size < 3:
        raise TooFewObservations(f"count_turning_points needs n >= 3, got {x.size}")
    keep = np.empty(x.size, dtype=bool)
    keep[0] = True
    keep[1:] = x[1:] != x[:-1]
    compressed = x[keep]
    if compressed.size < 3:
        return 0
    signs = np.sign(np.diff(compressed))
    return int(np.sum(signs[1:] != signs[:-1]))


def summary_ratios(core: MonthlySeries, parent: MonthlySeries) -> SummaryRatios:
    """Core-over-parent ratios of mean, variance (n-1), and turning points."""
    require_aligned(core, parent)
    pm = parent.values.mean()
    pv = parent.values.var(ddof=1)
    ptp = count_turning_points(parent.values)
    if pm == 0 or pv == 0 or ptp == 0:
        raise ZeroDenominator("parent mean, variance, or turning-point count is zero")
    return SummaryRatios(
        mean_ratio=float(core.values.mean() / pm),
        variance_ratio=float(core.values.var(ddof=1) / pv),
        turning_point_ratio=count_turning_points(core.values) / ptp,
    )
