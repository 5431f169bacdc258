"""corewave: trend ("core") inflation extraction via wavelet multiresolution
analysis, comparator core-inflation estimators, and an evaluation battery of
trend-tracking and prediction tests."""

__version__ = "0.1.0"

from .series import ComponentPanel, MonthlySeries
from .wavelet import FilterBank, WaveletSpec, build_filter_bank, decompose

__all__ = [
    "ComponentPanel",
    "MonthlySeries",
    "FilterBank",
    "WaveletSpec",
    "build_filter_bank",
    "decompose",
    "__version__",
]
