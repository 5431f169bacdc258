"""Regression, unit-root and cointegration tests, prediction diagnostics."""
import numpy as np
import pytest
from scipy import stats as sps

from corewave.econometrics import (
    adf_test,
    cogley_regression,
    cointegration_test,
    critical_values_for,
    load_critical_values,
    ols,
    prediction_error_variance,
)
from corewave.errors import (
    CoreEqualsParent,
    DimensionMismatch,
    HorizonTooLarge,
    RankDeficient,
    TooFewObservations,
)
from corewave.series import MonthlySeries


# ---------------------------------------------------------------- ols

def test_ols_exact_line():
    x = np.arange(10.0)
    res = ols(2.0 * x, x)
    assert abs(res.coefficients[0]) < 1e-10
    assert abs(res.coefficients[1] - 2.0) < 1e-10
    assert abs(res.r_squared - 1.0) < 1e-12
    assert np.max(np.abs(res.residuals)) < 1e-10


def test_ols_five_point_hand_oracle():
    x = np.array([0.0, 1.0, 2.0, 3.0, 4.0])
    y = np.array([1.1, 1.9, 3.2, 3.8, 5.1])
    X = np.column_stack([np.ones(5), x])
    xtx = X.T @ X
    beta = np.linalg.solve(xtx, X.T @ y)
    resid = y - X @ beta
    s2 = float(resid @ resid) / (5 - 2)
    se = np.sqrt(s2 * np.diag(np.linalg.inv(xtx)))
    r2 = 1.0 - float(resid @ resid) / float(np.sum((y - y.mean()) ** 2))

    res = ols(y, x)
    assert np.max(np.abs(res.coefficients - beta)) < 1e-10
    assert np.max(np.abs(res.standard_errors - se)) < 1e-10
    assert abs(res.r_squared - r2) < 1e-12
    assert res.nobs == 5


def test_ols_matches_lstsq_on_planted_model():
    rng = np.random.default_rng(17)
    X = rng.normal(size=(200, 3))
    y = 1.0 + X @ np.array([0.5, -2.0, 0.1]) + rng.normal(size=200)
    res = ols(y, X)
    full = np.column_stack([np.ones(200), X])
    beta = np.linalg.lstsq(full, y, rcond=None)[0]
    assert np.max(np.abs(res.coefficients - beta)) < 1e-10


def test_ols_uncentered_r_squared_without_intercept():
    rng = np.random.default_rng(23)
    x = rng.normal(size=50) + 5.0
    y = 2.0 * x + rng.normal(size=50)
    res = ols(y, x, intercept=False)
    ssr = float(res.residuals @ res.residuals)
    assert abs(res.r_squared - (1.0 - ssr / float(y @ y))) < 1e-12


def test_ols_error_paths():
    x = np.arange(20.0)
    with pytest.raises(RankDeficient):
        ols(x, np.column_stack([x, x]))
    with pytest.raises(DimensionMismatch):
        ols(x[:10], x)
    with pytest.raises(DimensionMismatch):
        ols(np.ones(3), np.ones((3, 3)))


# ---------------------------------------------------------------- critical values

def test_critical_value_table_shape_and_order():
    table = load_critical_values()
    assert set(table) == {"c", "nc", "eg2", "eg2t"}
    for spec in table:
        cvs = critical_values_for(spec, 100, table)
        assert cvs[0.01] < cvs[0.05] < cvs[0.10] < 0


def test_critical_values_interpolate_and_clamp():
    lo = critical_values_for("c", 100)[0.05]
    hi = critical_values_for("c", 250)[0.05]
    mid = critical_values_for("c", 175)[0.05]
    assert min(lo, hi) <= mid <= max(lo, hi)
    assert abs(mid - lo) > 1e-12 or abs(hi - lo) < 1e-9
    assert critical_values_for("c", 5)[0.05] == critical_values_for("c", 25)[0.05]
    assert critical_values_for("c", 10**6)[0.05] == critical_values_for("c", 1000)[0.05]


def test_shipped_tables_match_published_asymptotics():
    # Dickey-Fuller 5% points at n = 100: about -2.89 (intercept), -1.94
    # (none); two-variable residual test about -3.4
    assert abs(critical_values_for("c", 100)[0.05] - (-2.89)) < 0.05
    assert abs(critical_values_for("nc", 100)[0.05] - (-1.94)) < 0.05
    assert abs(critical_values_for("eg2", 100)[0.05] - (-3.37)) < 0.08


# ---------------------------------------------------------------- ADF

def test_adf_affine_invariance():
    rng = np.random.default_rng(5)
    x = np.cumsum(rng.normal(size=300))
    base = adf_test(x, "intercept", lag_rule=2)
    moved = adf_test(2.5 * x + 3.0, "intercept", lag_rule=2)
    assert abs(base.statistic - moved.statistic) < 1e-8
    nc = adf_test(x, "no_intercept", lag_rule=2)
    nc_scaled = adf_test(4.0 * x, "no_intercept", lag_rule=2)
    assert abs(nc.statistic - nc_scaled.statistic) < 1e-8


def test_adf_rejects_white_noise_and_keeps_random_walk():
    rng = np.random.default_rng(3)
    noise = adf_test(rng.normal(size=400), "intercept", lag_rule=0)
    assert noise.reject_at == 0.01
    assert noise.statistic < -10

    walk = np.cumsum(np.random.default_rng(0).normal(size=400))
    kept = adf_test(walk, "intercept", lag_rule=0)
    assert kept.reject_at is None


def test_adf_bookkeeping_and_lag_selection():
    rng = np.random.default_rng(8)
    e = rng.normal(size=600)
    inc = np.empty(600)
    inc[0] = e[0]
    for t in range(1, 600):
        inc[t] = 0.8 * inc[t - 1] + e[t]
    walk = np.cumsum(inc)
    picked = adf_test(walk, "intercept", lag_rule=("aic", 12))
    assert picked.lags_used >= 1

    fixed = adf_test(walk, "intercept", lag_rule=3)
    assert fixed.lags_used == 3
    assert fixed.nobs == 600 - 1 - 3
    assert fixed.spec == "intercept"


def test_adf_input_validation():
    with pytest.raises(ValueError):
        adf_test(np.arange(100.0), "trend")
    with pytest.raises(TooFewObservations):
        adf_test(np.arange(15.0), "intercept", lag_rule=("aic", 12))


# ---------------------------------------------------------------- cointegration

def _series(values):
    return MonthlySeries((1960, 1), values)


def test_cointegration_detects_planted_relation():
    rng = np.random.default_rng(200)
    x = np.cumsum(rng.normal(size=300))
    u = np.zeros(300)
    e = rng.normal(size=300)
    for t in range(1, 300):
        u[t] = 0.5 * u[t - 1] + e[t]
    res = cointegration_test(_series(2.0 * x + u), _series(x), lag_rule=0)
    assert res.unit_root.reject_at == 0.01
    assert not res.degenerate
    assert abs(res.first_stage.coefficients[1] - 2.0) < 0.1


def test_cointegration_keeps_null_on_independent_walks():
    rng = np.random.default_rng(303)
    a = np.cumsum(rng.normal(size=300))
    b = np.cumsum(rng.normal(size=300))
    res = cointegration_test(_series(a), _series(b), lag_rule=0)
    assert res.unit_root.reject_at is None


def test_cointegration_scale_invariance_and_trend_path():
    rng = np.random.default_rng(41)
    x = np.cumsum(rng.normal(size=200))
    y = 1.5 * x + rng.normal(size=200)
    base = cointegration_test(_series(y), _series(x), lag_rule=1)
    scaled = cointegration_test(_series(7.0 * y), _series(0.5 * x), lag_rule=1)
    assert abs(base.unit_root.statistic - scaled.unit_root.statistic) < 1e-8

    trended = cointegration_test(_series(y), _series(x), deterministic_trend=True, lag_rule=1)
    assert trended.unit_root.critical_values != base.unit_root.critical_values


def test_cointegration_degenerate_pair_rejects():
    rng = np.random.default_rng(52)
    x = np.cumsum(rng.normal(size=120))
    res = cointegration_test(_series(x), _series(x))
    assert res.degenerate
    assert res.unit_root.reject_at == 0.01
    assert res.unit_root.statistic == float("-inf")


def test_cointegration_needs_thirty_observations():
    x = np.arange(29.0)
    with pytest.raises(TooFewObservations):
        cointegration_test(_series(x), _series(x + 1.0))


# ---------------------------------------------------------------- prediction tests

def test_prediction_error_variance_zero_for_perfect_foresight():
    rng = np.random.default_rng(61)
    v = rng.normal(size=120)
    parent = _series(v)
    core = _series(np.concatenate([v[12:], rng.normal(size=12)]))
    assert prediction_error_variance(core, parent, 12) == 0.0


def test_prediction_error_variance_hand_value():
    parent = _series(np.array([1.0, 2.0, 4.0, 8.0]))
    core = _series(np.array([3.0, 5.0, 0.0, 0.0]))
    expected = np.var([3.0 - 4.0, 5.0 - 8.0], ddof=1)
    assert abs(prediction_error_variance(core, parent, 2) - expected) < 1e-12


def test_prediction_error_variance_horizon_bounds():
    parent = _series(np.arange(20.0))
    core = _series(np.arange(20.0) + 1.0)
    with pytest.raises(HorizonTooLarge):
        prediction_error_variance(core, parent, 0)
    with pytest.raises(HorizonTooLarge):
        prediction_error_variance(core, parent, 19)


def _cogley_pair(rng, n=400, H=12):
    """Series pair whose prediction regression satisfies alpha=0, beta=-1
    exactly in sample: the H-ahead change equals -(gap) + noise made exactly
    orthogonal to the gap."""
    m = n - H
    g = rng.normal(size=m)
    u0 = rng.normal(scale=0.5, size=m)
    Z = np.column_stack([np.ones(m), g])
    u = u0 - Z @ np.linalg.lstsq(Z, u0, rcond=None)[0]
    pi = np.empty(n)
    pi[:H] = rng.normal(size=H)
    for t in range(H, n):
        pi[t] = pi[t - H] - g[t - H] + u[t - H]
    core = np.empty(n)
    core[:m] = pi[:m] - g
    core[m:] = pi[m:] - rng.normal(size=H)
    return _series(core), _series(pi)


def test_cogley_exact_null_gives_unit_probability():
    core, parent = _cogley_pair(np.random.default_rng(71))
    res = cogley_regression(core, parent, 12, force_rho=0.0)
    assert abs(res.alpha) < 1e-10
    assert abs(res.beta + 1.0) < 1e-10
    assert res.f_test_prob > 0.99
    # the feasible iterated version only perturbs the estimates slightly
    feasible = cogley_regression(core, parent, 12)
    assert feasible.f_test_prob > 0.90
    assert abs(feasible.beta + 1.0) < 0.1


def test_cogley_force_rho_zero_is_plain_ols():
    rng = np.random.default_rng(83)
    parent = _series(np.cumsum(rng.normal(size=240)) * 0.1 + 3.0)
    core = _series(parent.values + rng.normal(size=240) * 0.4)
    H = 18
    res = cogley_regression(core, parent, H, force_rho=0.0)

    m = 240 - H
    x = parent.values[:m] - core.values[:m]
    y = parent.values[H:] - parent.values[:m]
    X = np.column_stack([np.ones(m), x])
    beta = np.linalg.lstsq(X, y, rcond=None)[0]
    resid = y - X @ beta
    s2 = float(resid @ resid) / (m - 2)
    V = s2 * np.linalg.inv(X.T @ X)
    assert abs(res.alpha - beta[0]) < 1e-10
    assert abs(res.beta - beta[1]) < 1e-10
    assert abs(res.alpha_se - np.sqrt(V[0, 0])) < 1e-10
    r2 = 1.0 - float(resid @ resid) / float(np.sum((y - y.mean()) ** 2))
    assert abs(res.r_squared - r2) < 1e-12

    diff = np.array([beta[0], beta[1] + 1.0])
    stat = float(diff @ np.linalg.solve(V, diff)) / 2.0
    assert abs(res.f_test_prob - sps.f.sf(stat, 2, m - 2)) < 1e-10
    assert res.rho == 0.0 and res.iterations == 0


def test_cogley_recovers_error_autocorrelation():
    rng = np.random.default_rng(97)
    n, H = 400, 12
    m = n - H
    g = rng.normal(size=m)
    u = np.zeros(m)
    e = rng.normal(scale=0.3, size=m)
    for t in range(1, m):
        u[t] = 0.6 * u[t - 1] + e[t]
    pi = np.empty(n)
    pi[:H] = rng.normal(size=H)
    for t in range(H, n):
        pi[t] = pi[t - H] - g[t - H] + u[t - H]
    core = np.empty(n)
    core[:m] = pi[:m] - g
    core[m:] = pi[m:]
    res = cogley_regression(_series(core), _series(pi), H)
    assert res.iterations >= 1
    assert abs(res.rho - 0.6) < 0.15


def test_cogley_error_paths():
    rng = np.random.default_rng(101)
    parent = _series(rng.normal(size=100))
    with pytest.raises(CoreEqualsParent):
        cogley_regression(parent, parent, 12)
    core = _series(parent.values + rng.normal(size=100))
    with pytest.raises(HorizonTooLarge):
        cogley_regression(core, parent, 95)
