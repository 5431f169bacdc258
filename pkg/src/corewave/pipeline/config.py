"""Evaluation configuration: INI-style key=value files with sections.

Every default matches the headline experimental setup: evaluation window
1967-02..2002-01, horizons 12/18/24 months, trims 9% and 18% per tail, moving
averages over 37 and 19 months, smoother gain 0.125/3 with a 60-month burn-in,
and the six wavelet measures named in the summary tables.
"""
from __future__ import annotations

import configparser
import hashlib
import re
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConfigError
from ..estimators import SmootherConfig
from ..wavelet import WaveletSpec

DEFAULT_WAVELET_MEASURES = "db10-L4, sym5-L5, db2-L3, db3-L5, haar-L2, sym1-L4"

_WAVELET_NAME = re.compile(r"^(haar|db|sym)(\d*)-L(\d+)$")


def parse_wavelet_name(name: str) -> WaveletSpec:
    """Parse compact wavelet names like db10-L4, sym5-L5, haar-L2."""
    m = _WAVELET_NAME.match(name.strip())
    if not m:
        raise ConfigError(f"cannot parse wavelet name {name!r} (want e.g. db10-L4)")
    stem, order_s, level_s = m.groups()
    family = {"haar": "haar", "db": "daubechies", "sym": "symlet"}[stem]
    if stem == "haar":
        order = 1
        if order_s:
            raise ConfigError(f"haar takes no order: {name!r}")
    else:
        if not order_s:
            raise ConfigError(f"missing order in wavelet name {name!r}")
        order = int(order_s)
    return WaveletSpec(family, order, int(level_s))


def _parse_month_pair(text: str) -> tuple[int, int]:
    try:
        y, m = text.strip().split("-")
        pair = int(y), int(m)
    except ValueError:
        raise ConfigError(f"bad month {text!r}, want YYYY-MM") from None
    if not 1 <= pair[1] <= 12:
        raise ConfigError(f"month out of range in {text!r}")
    return pair


def _split_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


@dataclass
class EvaluationConfig:
    """Everything run_evaluation needs, resolved and validated."""

    archive: Path
    parent_index: str = "cpi_index.csv"
    panel: str | None = "components_panel.csv"
    published_cores: dict = field(default_factory=dict)
    excluded_components: dict = field(default_factory=dict)
    sample_start: tuple[int, int] = (1967, 2)
    sample_end: tuple[int, int] = (2002, 1)
    horizons: list[int] = field(default_factory=lambda: [12, 18, 24])
    primary_horizon: int = 18
    trim_levels: list[float] = field(default_factory=lambda: [9.0, 18.0])
    ma_windows: list[int] = field(default_factory=lambda: [37, 19])
    smoother: SmootherConfig = field(default_factory=SmootherConfig)
    wavelet_measures: list[WaveletSpec] = field(
        default_factory=lambda: [
            parse_wavelet_name(n) for n in _split_list(DEFAULT_WAVELET_MEASURES)
        ]
    )
    selection: dict = field(default_factory=dict)
    seed: int = 0

    def resolve(self, name: str) -> Path:
        p = Path(name)
        return p if p.is_absolute() else self.archive / p

    def content_hash(self) -> str:
        """Stable hash of the configuration for report metadata."""
        parts = []
        for key in sorted(self.__dict__):
            if key == "archive":
                continue
            parts.append(f"{key}={self.__dict__[key]!r}")
        return hashlib.sha256("\n".join(parts).encode()).hexdigest()[:16]


_SELECTION_DEFAULTS = {
    "families": "haar,daubechies,symlet",
    "max_order": "10",
    "symlet_max_order": "8",
    "max_level": "10",
    "min_p": "0.01",
    "screen_next_level": "false",
    "entropy_kind": "shannon",
    # wider than the screening function's own 0.10 default: inflation-like
    # series concentrate energy into the approximation monotonically with
    # depth, so a tight band around the minimum would exclude every level
    # that survives the normality screen
    "entropy_tolerance": "0.75",
    "similarity_threshold": "0.995",
}


def load_config(path: str | Path | None, archive: Path, seed: int = 0) -> EvaluationConfig:
    """Parse an INI config file; None loads pure defaults."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    if path is not None:
        read = parser.read(Path(path))
        if not read:
            raise ConfigError(f"config file not found: {path}")

    cfg = EvaluationConfig(archive=archive, seed=seed)
    get = parser.get

    if parser.has_section("data"):
        cfg.parent_index = get("data", "parent_index", fallback=cfg.parent_index)
        cfg.panel = get("data", "panel", fallback=cfg.panel) or None
        for key in ("ex_food_energy", "ex_energy", "ex_food"):
            opt = f"published_{key}"
            if parser.has_option("data", opt):
                cfg.published_cores[f"cpi_{key}"] = get("data", opt)
            excl = f"excluded_{key}"
            if parser.has_option("data", excl):
                cfg.excluded_components[f"cpi_{key}"] = _split_list(get("data", excl))
    else:
        cfg.published_cores = {
            "cpi_ex_food_energy": "cpi_ex_food_energy.csv",
            "cpi_ex_energy": "cpi_ex_energy.csv",
            "cpi_ex_food": "cpi_ex_food.csv",
        }

    if parser.has_section("sample"):
        cfg.sample_start = _parse_month_pair(get("sample", "start", fallback="1967-02"))
        cfg.sample_end = _parse_month_pair(get("sample", "end", fallback="2002-01"))

    if parser.has_section("evaluation"):
        try:
            if parser.has_option("evaluation", "horizons"):
                cfg.horizons = [int(h) for h in _split_list(get("evaluation", "horizons"))]
            if parser.has_option("evaluation", "primary_horizon"):
                cfg.primary_horizon = parser.getint("evaluation", "primary_horizon")
            if parser.has_option("evaluation", "trim_levels"):
                cfg.trim_levels = [float(t) for t in _split_list(get("evaluation", "trim_levels"))]
            if parser.has_option("evaluation", "ma_windows"):
                cfg.ma_windows = [int(w) for w in _split_list(get("evaluation", "ma_windows"))]
            gain = parser.getfloat("evaluation", "smoother_gain",
                                   fallback=cfg.smoother.gain)
            init_s = get("evaluation", "smoother_init", fallback=cfg.smoother.init)
            try:
                init: str | float = float(init_s)
            except (TypeError, ValueError):
                init = init_s
            burn = parser.getint("evaluation", "smoother_burn_in",
                                 fallback=cfg.smoother.burn_in)
            cfg.smoother = SmootherConfig(gain=gain, init=init, burn_in=burn)
        except ValueError as exc:
            raise ConfigError(f"bad [evaluation] value: {exc}") from None

    if parser.has_section("wavelets") and parser.has_option("wavelets", "measures"):
        cfg.wavelet_measures = [
            parse_wavelet_name(n) for n in _split_list(get("wavelets", "measures"))
        ]

    sel = dict(_SELECTION_DEFAULTS)
    if parser.has_section("selection"):
        for key in sel:
            if parser.has_option("selection", key):
                sel[key] = get("selection", key)
    try:
        cfg.selection = {
            "families": tuple(_split_list(sel["families"])),
            "max_order": int(sel["max_order"]),
            "symlet_max_order": int(sel["symlet_max_order"]),
            "max_level": int(sel["max_level"]),
            "min_p": float(sel["min_p"]),
            "screen_next_level": sel["screen_next_level"].strip().lower()
            in ("1", "true", "yes", "on"),
            "entropy_kind": sel["entropy_kind"].strip(),
            "entropy_tolerance": float(sel["entropy_tolerance"]),
            "similarity_threshold": float(sel["similarity_threshold"]),
        }
    except ValueError as exc:
        raise ConfigError(f"bad [selection] value: {exc}") from None

    for h in cfg.horizons:
        if h < 1:
            raise ConfigError(f"horizon must be >= 1, got {h}")
    if cfg.primary_horizon not in cfg.horizons:
        raise ConfigError(
            f"primary_horizon {cfg.primary_horizon} not among horizons {cfg.horizons}"
        )
    return cfg
