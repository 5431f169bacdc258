"""Evaluation test battery: OLS, unit-root tests, cointegration, and the
prediction regression with AR(1) errors.

Critical values for the Dickey-Fuller and residual-based (Engle-Granger)
cointegration tests come from plain-text tables shipped with the package,
generated once by simulating the null distributions (200,000 replications per
sample-size bracket) and interpolated linearly in 1/n between brackets.  The
`gen-critical-values` CLI subcommand regenerates them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
from scipy import linalg as sla
from scipy import stats as sps

from .errors import (
    CoreEqualsParent,
    DimensionMismatch,
    HorizonTooLarge,
    NonConvergence,
    RankDeficient,
    TooFewObservations,
)
from .series import MonthlySeries, require_aligned

SIGNIFICANCE_LEVELS = (0.01, 0.05, 0.10)
N_BRACKETS = (25, 50, 100, 250, 500, 1000)
TABLE_SPECS = ("nc", "c", "eg2", "eg2t")
DEFAULT_MAX_LAG = 12


# --- OLS kernel --------------------------------------------------------------

@dataclass
class RegressionResult:
    coefficients: np.ndarray
    standard_errors: np.ndarray
    residuals: np.ndarray
    r_squared: float
    nobs: int
    rho: float | None = None
    xtx_inv: np.ndarray = field(default=None, repr=False)
    s2: float = field(default=float("nan"), repr=False)


def ols(y, X, intercept: bool = True) -> RegressionResult:
    """Least squares via QR with classical standard errors.

    With `intercept` a column of ones is prepended.  R-squared is centered
    when an intercept is fitted and uncentered otherwise.
    """
    y = np.asarray(y, dtype=float)
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if intercept:
        X = np.column_stack([np.ones(X.shape[0]), X])
    n, k = X.shape
    if y.ndim != 1 or y.size != n:
        raise DimensionMismatch(f"y has {y.size} rows, X has {n}")
    if n <= k:
        raise DimensionMismatch(f"need more observations ({n}) than regressors ({k})")
    if np.linalg.cond(X) >= 1e12:
        raise RankDeficient("regressor matrix condition number >= 1e12")
    Q, R = np.linalg.qr(X)
    beta = sla.solve_triangular(R, Q.T @ y)
    resid = y - X @ beta
    ssr = float(resid @ resid)
    s2 = ssr / (n - k)
    r_inv = sla.solve_triangular(R, np.eye(k))
    xtx_inv = r_inv @ r_inv.T
    se = np.sqrt(s2 * np.diag(xtx_inv))
    if intercept:
        tss = float(np.sum((y - y.mean()) ** 2))
    else:
        tss = float(y @ y)
    r2 = 1.0 - ssr / tss if tss > 0 else 0.0
    return RegressionResult(
        coefficients=beta,
        standard_errors=se,
        residuals=resid,
        r_squared=float(r2),
        nobs=n,
        xtx_inv=xtx_inv,
        s2=s2,
    )


# --- critical-value tables ----------------------------------------------------

_TABLE_CACHE: dict[str, dict[str, dict[int, dict[float, float]]]] = {}


def _parse_table_text(text: str) -> dict[str, dict[int, dict[float, float]]]:
    table: dict[str, dict[int, dict[float, float]]] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        spec, n_s, sig_s, val_s = line.split()
        table.setdefault(spec, {}).setdefault(int(n_s), {})[float(sig_s)] = float(val_s)
    return table


def load_critical_values(path: str | Path | None = None):
    """Load the critical-value tables (packaged file by default)."""
    cache_key = str(path) if path is not None else "<packaged>"
    if cache_key in _TABLE_CACHE:
        return _TABLE_CACHE[cache_key]
    if path is not None:
        text = Path(path).read_text()
    else:
        text = (
            resources.files("corewave").joinpath("tables/critical_values.txt").read_text()
        )
    table = _parse_table_text(text)
    _TABLE_CACHE[cache_key] = table
    return table


def critical_values_for(spec: str, n: int, table=None) -> dict[float, float]:
    """Critical values at 1/5/10% for a test spec and sample size.

    Interpolates linearly in 1/n between tabulated brackets; clamps outside.
    """
    table = table if table is not None else load_critical_values()
    rows = table[spec]
    ns = sorted(rows)
    out = {}
    for sig in SIGNIFICANCE_LEVELS:
        if n <= ns[0]:
            out[sig] = rows[ns[0]][sig]
        elif n >= ns[-1]:
            out[sig] = rows[ns[-1]][sig]
        else:
            hi = next(b for b in ns if b >= n)
            lo = ns[ns.index(hi) - 1]
            w = (1.0 / n - 1.0 / lo) / (1.0 / hi - 1.0 / lo)
            out[sig] = (1 - w) * rows[lo][sig] + w * rows[hi][sig]
    return out


# --- unit-root tests ----------------------------------------------------------

@dataclass
class UnitRootResult:
    statistic: float
    critical_values: dict
    lags_used: int
    spec: str
    reject_at: float | None
    nobs: int = 0


def _adf_regression(x: np.ndarray, lags: int, intercept: bool) -> tuple[RegressionResult, int]:
    """Fit the ADF regression with a fixed lag order on the maximal sample."""
    dx = np.diff(x)
    i0 = lags
    y = dx[i0:]
    cols = [x[i0 : x.size - 1]]
    for p in range(1, lags + 1):
        cols.append(dx[i0 - p : dx.size - p])
    X = np.column_stack(cols)
    res = ols(y, X, intercept=intercept)
    return res, y.size


def _adf_stat(series, spec: str, lag_rule) -> tuple[float, int, int]:
    x = np.asarray(series, dtype=float)
    if isinstance(lag_rule, int):
        max_lag = lag_rule
        auto = False
    else:
        rule, max_lag = lag_rule
        if rule != "aic":
            raise ValueError(f"unknown lag rule: {rule!r}")
        auto = True
    if x.size < max_lag + 10:
        raise TooFewObservations(
            f"ADF needs n >= lags + 10 = {max_lag + 10}, got {x.size}"
        )
    intercept = spec == "intercept"
    if auto:
        # choose the lag order by AIC on the common (max-lag-trimmed) sample,
        # then refit that order on the maximal sample
        dx = np.diff(x)
        i0 = max_lag
        y = dx[i0:]
        n_eff = y.size
        base_cols = [x[i0 : x.size - 1]]
        lag_cols = [dx[i0 - p : dx.size - p] for p in range(1, max_lag + 1)]
        best_lag, best_aic = 0, math.inf
        for p in range(0, max_lag + 1):
            X = np.column_stack(base_cols + lag_cols[:p])
            res = ols(y, X, intercept=intercept)
            ssr = float(res.residuals @ res.residuals)
            k = X.shape[1] + (1 if intercept else 0)
            aic = n_eff * math.log(ssr / n_eff) + 2 * k
            if aic < best_aic - 1e-12:
                best_lag, best_aic = p, aic
        lags = best_lag
    else:
        lags = max_lag
    res, nobs = _adf_regression(x, lags, intercept)
    slot = 1 if intercept else 0
    stat = float(res.coefficients[slot] / res.standard_errors[slot])
    return stat, lags, nobs


def _reject_level(stat: float, cvs: dict) -> float | None:
    for sig in SIGNIFICANCE_LEVELS:
        if stat < cvs[sig]:
            return sig
    return None


def adf_test(series, spec: str = "intercept", lag_rule=("aic", DEFAULT_MAX_LAG),
             table=None) -> UnitRootResult:
    """Augmented Dickey-Fuller t-ratio test of a unit root.

    spec: "no_intercept" or "intercept".  lag_rule: an int for fixed lags, or
    ("aic", max_lag) to select 0..max_lag by AIC (the default, max 12).
    """
    if spec not in ("no_intercept", "intercept"):
        raise ValueError(f"unknown ADF spec: {spec!r}")
    stat, lags, nobs = _adf_stat(series, spec, lag_rule)
    cvs = critical_values_for("c" if spec == "intercept" else "nc", nobs, table)
    return UnitRootResult(
        statistic=stat,
        critical_values=cvs,
        lags_used=lags,
        spec=spec,
        reject_at=_reject_level(stat, cvs),
        nobs=nobs,
    )


# --- cointegration -------------------------------------------------------------

@dataclass
class CointegrationResult:
    unit_root: UnitRootResult
    first_stage: RegressionResult
    degenerate: bool = False


def cointegration_test(y: MonthlySeries, x: MonthlySeries,
                       deterministic_trend: bool = False,
                       lag_rule=("aic", DEFAULT_MAX_LAG),
                       table=None) -> CointegrationResult:
    """Residual-based two-stage test of the no-cointegration null.

    First stage regresses y on x with an intercept (plus a linear trend when
    requested); the second stage applies the no-intercept unit-root t-test to
    the residuals against critical values tabulated for exactly this two-step
    procedure on two independent random walks.  Exactly collinear inputs are
    reported degenerate and count as rejection (a perfect stationary — zero —
    combination exists).
    """
    require_aligned(y, x)
    n = len(y)
    if n < 30:
        raise TooFewObservations(f"cointegration test needs n >= 30, got {n}")
    cols = [x.values]
    if deterministic_trend:
        cols.append(np.arange(n, dtype=float))
    first = ols(y.values, np.column_stack(cols), intercept=True)
    resid = first.residuals
    spec_key = "eg2t" if deterministic_trend else "eg2"
    if float(resid @ resid) / n < 1e-12:
        cvs = critical_values_for(spec_key, n, table)
        unit = UnitRootResult(
            statistic=float("-inf"),
            critical_values=cvs,
            lags_used=0,
            spec="no_intercept",
            reject_at=SIGNIFICANCE_LEVELS[0],
            nobs=n,
        )
        return CointegrationResult(unit_root=unit, first_stage=first, degenerate=True)
    stat, lags, nobs = _adf_stat(resid, "no_intercept", lag_rule)
    cvs = critical_values_for(spec_key, nobs, table)
    unit = UnitRootResult(
        statistic=stat,
        critical_values=cvs,
        lags_used=lags,
        spec="no_intercept",
        reject_at=_reject_level(stat, cvs),
        nobs=nobs,
    )
    return CointegrationResult(unit_root=unit, first_stage=first)


# --- prediction tests -----------------------------------------------------------

def prediction_error_variance(core: MonthlySeries, parent: MonthlySeries, H: int) -> float:
    """Sample variance (n-1) of core_t minus parent inflation H months ahead."""
    require_aligned(core, parent)
    if H < 1:
        raise HorizonTooLarge("horizon must be >= 1")
    n = len(core)
    if n - H < 2:
        raise HorizonTooLarge(f"horizon {H} leaves fewer than 2 of {n} observations")
    diff = core.values[: n - H] - parent.values[H:]
    return float(diff.var(ddof=1))


@dataclass
class PredictionTestResult:
    alpha: float
    alpha_se: float
    beta: float
    beta_se: float
    f_test_prob: float
    r_squared: float
    horizon: int
    rho: float = 0.0
    nobs: int = 0
    iterations: int = 0


def _wald_alpha0_beta_neg1(res: RegressionResult) -> float:
    """p-value of the joint restriction alpha = 0, beta = -1 (F(2, n-k))."""
    b = res.coefficients
    diff = np.array([b[0] - 0.0, b[1] - (-1.0)])
    V = res.s2 * res.xtx_inv[:2, :2]
    stat = float(diff @ np.linalg.solve(V, diff)) / 2.0
    dof = res.nobs - res.coefficients.size
    return float(sps.f.sf(stat, 2, dof))


def cogley_regression(core: MonthlySeries, parent: MonthlySeries, H: int,
                      force_rho: float | None = None) -> PredictionTestResult:
    """Prediction regression with AR(1) errors by iterated Cochrane-Orcutt.

    Estimates  parent_{t+H} - parent_t = alpha + beta (parent_t - core_t) + u
    with u following an AR(1); rho is re-estimated from the lag-1 regression
    of the untransformed residuals until it changes by less than 1e-8 (at most
    200 iterations).  Standard errors, R-squared and the Wald F-test of
    {alpha = 0, beta = -1} all come from the quasi-differenced regression.

    With force_rho = 0 no observation is dropped and the result coincides
    with plain OLS on the untransformed equation.
    """
    require_aligned(core, parent)
    n = len(core)
    if n - H < 10:
        raise HorizonTooLarge(f"horizon {H} leaves too few of {n} observations")
    x = parent.values[: n - H] - core.values[: n - H]
    y = parent.values[H:] - parent.values[: n - H]
    if x.var() <= 1e-12:
        raise CoreEqualsParent("core equals parent; prediction gap is degenerate")

    def transformed_fit(rho: float) -> RegressionResult:
        if rho == 0.0:
            return ols(y, x, intercept=True)
        ys = y[1:] - rho * y[:-1]
        X = np.column_stack([np.full(ys.size, 1.0 - rho), x[1:] - rho * x[:-1]])
        res = ols(ys, X, intercept=False)
        # the (1 - rho) column spans the constant, so R^2 is measured
        # against the mean of the quasi-differenced dependent variable
        tss = float(np.sum((ys - ys.mean()) ** 2))
        ssr = float(res.residuals @ res.residuals)
        res.r_squared = 1.0 - ssr / tss if tss > 0 else 0.0
        return res

    if force_rho is not None:
        res = transformed_fit(float(force_rho))
        rho, iterations = float(force_rho), 0
    else:
        rho, iterations = 0.0, 0
        res = transformed_fit(0.0)
        for iterations in range(1, 201):
            alpha, beta = res.coefficients[0], res.coefficients[1]
            u = y - alpha - beta * x
            rho_new = float(u[1:] @ u[:-1] / (u[:-1] @ u[:-1]))
            if abs(rho_new - rho) < 1e-8:
                rho = rho_new
                break
            rho = rho_new
            res = transformed_fit(rho)
        else:
            raise NonConvergence(
                "Cochrane-Orcutt did not converge in 200 iterations",
                iterations=200,
                best_point=(float(res.coefficients[0]), float(res.coefficients[1]), rho),
            )
        res = transformed_fit(rho)

    return PredictionTestResult(
        alpha=float(res.coefficients[0]),
        alpha_se=float(res.standard_errors[0]),
        beta=float(res.coefficients[1]),
        beta_se=float(res.standard_errors[1]),
        f_test_prob=_wald_alpha0_beta_neg1(res),
        r_squared=res.r_squared,
        horizon=H,
        rho=rho,
        nobs=res.nobs,
        iterations=iterations,
    )


# --- critical-value table generation ---------------------------------------------

def _df_tstats_nc(walks: np.ndarray) -> np.ndarray:
    """t-ratios of the no-intercept DF regression, batched over rows."""
    x = walks[:, :-1]
    dx = np.diff(walks, axis=1)
    sxx = np.einsum("ij,ij->i", x, x)
    sxy = np.einsum("ij,ij->i", x, dx)
    rho = sxy / sxx
    resid = dx - rho[:, None] * x
    dof = x.shape[1] - 1
    s2 = np.einsum("ij,ij->i", resid, resid) / dof
    return rho / np.sqrt(s2 / sxx)


def _df_tstats_c(walks: np.ndarray) -> np.ndarray:
    """t-ratios of the intercept DF regression, batched over rows."""
    x = walks[:, :-1]
    dx = np.diff(walks, axis=1)
    xc = x - x.mean(axis=1, keepdims=True)
    yc = dx - dx.mean(axis=1, keepdims=True)
    sxx = np.einsum("ij,ij->i", xc, xc)
    rho = np.einsum("ij,ij->i", xc, yc) / sxx
    resid = yc - rho[:, None] * xc
    dof = x.shape[1] - 2
    s2 = np.einsum("ij,ij->i", resid, resid) / dof
    return rho / np.sqrt(s2 / sxx)


def _eg_residuals(y: np.ndarray, x: np.ndarray, trend: bool) -> np.ndarray:
    """Residuals of batched first-stage regressions y ~ 1 + x (+ t)."""
    B, n = y.shape
    if trend:
        # batched 3x3 normal equations for [1, x_i, t]
        t = np.arange(n, dtype=float)
        sx = x.sum(axis=1)
        sxx = np.einsum("ij,ij->i", x, x)
        sxt = x @ t
        sy = y.sum(axis=1)
        sxy = np.einsum("ij,ij->i", x, y)
        sty = y @ t
        G = np.empty((B, 3, 3))
        G[:, 0, 0] = n
        G[:, 0, 1] = G[:, 1, 0] = sx
        G[:, 0, 2] = G[:, 2, 0] = t.sum()
        G[:, 1, 1] = sxx
        G[:, 1, 2] = G[:, 2, 1] = sxt
        G[:, 2, 2] = float(t @ t)
        rhs = np.stack([sy, sxy, sty], axis=1)
        beta = np.linalg.solve(G, rhs[:, :, None])[:, :, 0]
        return y - beta[:, 0:1] - beta[:, 1:2] * x - beta[:, 2:3] * t[None, :]
    xm = x.mean(axis=1, keepdims=True)
    ym = y.mean(axis=1, keepdims=True)
    xc = x - xm
    b = np.einsum("ij,ij->i", xc, y - ym) / np.einsum("ij,ij->i", xc, xc)
    return (y - ym) - b[:, None] * xc


def generate_critical_value_tables(out_path: str | Path, reps: int = 200_000,
                                   seed: int = 20020131,
                                   brackets=N_BRACKETS) -> Path:
    """Simulate the null distributions and write the critical-value table.

    For each sample-size bracket: "nc"/"c" tabulate the Dickey-Fuller t-ratio
    on driftless Gaussian random walks; "eg2"/"eg2t" tabulate the same t-ratio
    applied to residuals of a first-stage regression between two independent
    random walks (intercept, and intercept plus linear trend).  Quantiles at
    1/5/10% over `reps` replications per bracket.
    """
    rng = np.random.default_rng(seed)
    lines = [
        "# Dickey-Fuller / residual-cointegration critical values, version 1",
        f"# simulated: {reps} replications per bracket, seed {seed}",
        "# columns: spec n significance value",
    ]
    chunk = max(1, min(reps, 20_000))
    for spec in TABLE_SPECS:
        for n in brackets:
            stats_parts = []
            done = 0
            while done < reps:
                b = min(chunk, reps - done)
                if spec in ("nc", "c"):
                    walks = rng.standard_normal((b, n + 1)).cumsum(axis=1)
                    stats_parts.append(
                        _df_tstats_nc(walks) if spec == "nc" else _df_tstats_c(walks)
                    )
                else:
                    y = rng.standard_normal((b, n)).cumsum(axis=1)
                    x = rng.standard_normal((b, n)).cumsum(axis=1)
                    resid = _eg_residuals(y, x, trend=spec == "eg2t")
                    stats_parts.append(_df_tstats_nc(resid))
                done += b
            stats = np.concatenate(stats_parts)
            for sig in SIGNIFICANCE_LEVELS:
                val = float(np.quantile(stats, sig))
                lines.append(f"{spec} {n} {sig:.2f} {val:.4f}")
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text("\n".join(lines) + "\n")
    return out_path
