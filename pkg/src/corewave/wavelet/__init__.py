"""Orthonormal wavelet filter banks and decimated multiresolution analysis."""

from .filters import FAMILIES, MAX_ORDER, FilterBank, WaveletSpec, build_filter_bank
from .transform import (
    BatchDecomposition,
    Decomposition,
    decompose,
    decompose_many,
    entropy,
    pyramid_lengths,
    reconstruct_approximation,
    reconstruct_approximation_many,
    reconstruct_details,
)

__all__ = [
    "FAMILIES",
    "MAX_ORDER",
    "FilterBank",
    "WaveletSpec",
    "build_filter_bank",
    "BatchDecomposition",
    "Decomposition",
    "decompose",
    "decompose_many",
    "entropy",
    "pyramid_lengths",
    "reconstruct_approximation",
    "reconstruct_approximation_many",
    "reconstruct_details",
]
