"""Candidate core-inflation estimators.

Every estimator returns a :class:`MonthlySeries` aligned on the monthly grid
of its input; estimators that consume observations before producing output
(year-on-year differencing, moving averages, one-step-ahead fits) start their
output later accordingly, and the pipeline supplies pre-sample data so that
all measures cover the common evaluation window.

Inflation is in percent throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import optimize, signal

from .errors import (
    AllExcluded,
    InvalidGain,
    InvalidTrim,
    NonConvergence,
    NonPositiveIndex,
    TooShort,
    UnknownComponent,
    WindowTooLarge,
)
from .series import ComponentPanel, MonthlySeries, index_to_date
from .wavelet import WaveletSpec, decompose, reconstruct_approximation

DEFAULT_GAIN = 0.125 / 3.0


@dataclass(frozen=True)
class SmootherConfig:
    """Exponential smoother settings.

    init: "first_observation", "presample_mean:<k>" (mean of the first k
    observations), or a numeric starting level.  burn_in is the number of
    leading smoothed values the evaluation window should discard; the
    smoother itself always returns the full-length series.
    """

    gain: float = DEFAULT_GAIN
    init: str | float = "first_observation"
    burn_in: int = 60

    def initial_level(self, values: np.ndarray) -> float:
        if isinstance(self.init, (int, float)):
            return float(self.init)
        if self.init == "first_observation":
            return float(values[0])
        if isinstance(self.init, str) and self.init.startswith("presample_mean:"):
            k = int(self.init.split(":", 1)[1])
            if k < 1:
                raise InvalidGain(f"presample_mean window must be >= 1, got {k}")
            return float(values[: min(k, values.size)].mean())
        raise InvalidGain(f"unknown smoother init: {self.init!r}")


def yoy_log_inflation(index: MonthlySeries) -> MonthlySeries:
    """Year-on-year log inflation, percent: 100 (ln P_t - ln P_{t-12}).

    Output starts 12 months after the index start, length n - 12.
    """
    p = index.values
    if np.any(p <= 0):
        raise NonPositiveIndex("price index must be strictly positive")
    if p.size < 13:
        raise TooShort(f"need >= 13 index observations, got {p.size}")
    logs = np.log(p)
    return MonthlySeries(
        index_to_date(index.start_index + 12), 100.0 * (logs[12:] - logs[:-12])
    )


def aggregate_excluding(panel: ComponentPanel, excluded) -> MonthlySeries:
    """Weighted mean inflation with some components' weights zeroed.

    Remaining weights are renormalized to sum to one each month; an empty
    exclusion set gives the headline weighted aggregate.
    """
    excluded = set(excluded)
    unknown = excluded - set(panel.component_ids)
    if unknown:
        raise UnknownComponent(f"not in panel: {sorted(unknown)}")
    mask = np.array([cid not in excluded for cid in panel.component_ids])
    if not mask.any():
        raise AllExcluded("every component excluded")
    w = panel.weights[:, mask]
    denom = w.sum(axis=1)
    values = (w * panel.inflation[:, mask]).sum(axis=1) / denom
    return MonthlySeries(panel.start, values)


def _sorted_panel(panel: ComponentPanel):
    """Per-month stable sort of components by inflation; returns (infl, w)."""
    order = np.argsort(panel.inflation, axis=1, kind="stable")
    rows = np.arange(panel.n_months)[:, None]
    return panel.inflation[rows, order], panel.weights[rows, order]


def weighted_median_core(panel: ComponentPanel) -> MonthlySeries:
    """Lower weighted median: inflation of the first component (in ascending
    stable order) at which cumulative weight reaches one half."""
    infl, w = _sorted_panel(panel)
    cum = np.cumsum(w, axis=1)
    idx = np.argmax(cum >= 0.5, axis=1)
    values = infl[np.arange(panel.n_months), idx]
    return MonthlySeries(panel.start, values)


def trimmed_mean_core(panel: ComponentPanel, trim: float) -> MonthlySeries:
    """Weighted mean after trimming `trim` percent of weight from each tail.

    The component straddling a cut keeps the pro-rated share of its weight
    inside [trim/100, 1 - trim/100]; retained weights are renormalized.
    """
    if not 0 <= trim < 50:
        raise InvalidTrim(f"trim must be in [0, 50) percent per tail, got {trim}")
    infl, w = _sorted_panel(panel)
    cum = np.cumsum(w, axis=1)
    lo = trim / 100.0
    hi = 1.0 - lo
    upper = np.minimum(cum, hi)
    lower = np.maximum(cum - w, lo)
    kept = np.clip(upper - lower, 0.0, None)
    values = (kept * infl).sum(axis=1) / kept.sum(axis=1)
    return MonthlySeries(panel.start, values)


def moving_average_core(parent: MonthlySeries, window: int) -> MonthlySeries:
    """Trailing moving average over the current and previous window-1 months.

    Output drops the first window - 1 months.
    """
    n = len(parent)
    if window < 1 or window > n:
        raise WindowTooLarge(f"window {window} exceeds series length {n}")
    kernel = np.full(window, 1.0 / window)
    values = np.convolve(parent.values, kernel, mode="valid")
    return MonthlySeries(index_to_date(parent.start_index + window - 1), values)


def exp_smooth_core(parent: MonthlySeries, cfg: SmootherConfig) -> MonthlySeries:
    """First-order exponential smoother: core_t = core_{t-1} + g (pi_t - core_{t-1}).

    Output has the parent's length and start; the initial level is a state
    before the first observation, so the first output already blends it with
    the first parent value.
    """
    if not 0 < cfg.gain <= 1:
        raise InvalidGain(f"gain must be in (0, 1], got {cfg.gain}")
    x = parent.values
    # core_t = (1-g) core_{t-1} + g pi_t is an IIR filter with pole (1-g)
    level0 = cfg.initial_level(x)
    g = cfg.gain
    values = signal.lfilter([g], [1.0, -(1.0 - g)], x, zi=np.array([(1 - g) * level0]))[0]
    return MonthlySeries(parent.start, values)


@dataclass
class Arma11Fit:
    """ARMA(1,1) conditional-sum-of-squares fit and its one-step fits."""

    core: MonthlySeries
    coefficients: dict = field(default_factory=dict)
    innovation_variance: float = float("nan")
    iterations: int = 0
    objective: float = float("nan")


def _arma11_css(params: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Residuals of pi_t = c + phi pi_{t-1} + theta eps_{t-1} + eps_t, eps_1 = 0."""
    c, phi, theta = params
    u = x[1:] - c - phi * x[:-1]
    return signal.lfilter([1.0], [1.0, theta], u)


def arma11_core(parent: MonthlySeries) -> Arma11Fit:
    """Fit an ARMA(1,1) by conditional sum of squares; core = one-step fits.

    Conditioning: the first observation is taken as given and the presample
    innovation is zero.  |phi| < 1 and |theta| < 1 are enforced through a
    tanh reparametrization; the simplex search starts from the fixed point
    (mean/2, 0.5, 0) so fits are reproducible.  The fitted series starts at
    the parent's second month.
    """
    x = parent.values
    if x.size < 50:
        raise TooShort(f"arma11_core needs >= 50 observations, got {x.size}")

    def unpack(raw):
        return np.array([raw[0], np.tanh(raw[1]), np.tanh(raw[2])])

    def objective(raw):
        eps = _arma11_css(unpack(raw), x)
        return float(eps @ eps)

    start = np.array([x.mean() * 0.5, np.arctanh(0.5), 0.0])
    res = optimize.minimize(
        objective,
        start,
        method="Nelder-Mead",
        options={"xatol": 1e-8, "fatol": 1e-8, "maxiter": 500, "maxfev": 2000},
    )
    params = unpack(res.x)
    if not res.success:
        raise NonConvergence(
            f"ARMA(1,1) search did not converge in {res.nit} iterations",
            iterations=int(res.nit),
            best_point=tuple(params),
        )
    eps = _arma11_css(params, x)
    fitted = x[1:] - eps
    c, phi, theta = params
    return Arma11Fit(
        core=MonthlySeries(index_to_date(parent.start_index + 1), fitted),
        coefficients={"c": float(c), "phi": float(phi), "theta": float(theta)},
        innovation_variance=float(eps @ eps / eps.size),
        iterations=int(res.nit),
        objective=float(res.fun),
    )


def wavelet_core(parent: MonthlySeries, spec: WaveletSpec) -> MonthlySeries:
    """Level-J wavelet approximation of the parent, aligned sample-for-sample."""
    dec = decompose(parent.values, spec)
    return MonthlySeries(parent.start, reconstruct_approximation(dec, spec.level))
