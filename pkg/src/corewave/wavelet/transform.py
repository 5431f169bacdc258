"""Decimated multiresolution analysis (Mallat pyramid).

Forward step: extend the signal by 2N-1 samples each side with half-point
symmetric reflection (edge sample repeated; reflection wraps with period 2n
when the extension is longer than the signal), convolve with the analysis
filters, and keep every second output of the valid center.  This yields the
pyramid length recursion len_j = floor((len_{j-1} + 2N - 1) / 2).

Inverse step: upsample coefficients by inserting zeros between samples
(length 2L-1), convolve with the reconstruction filters, and keep the n
samples starting at offset 2N-2 — one sample short of the analysis extension
length, which is where the two half-point-symmetric boundary surpluses cancel.
The offset was derived by requiring exact reconstruction across filter lengths
and signal lengths, including signals shorter than the filter.

Everything is written over (batch, n) arrays; the single-series functions wrap
a batch of one.  Operations are pure and thread-safe.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..errors import EmptyInput, LevelOutOfRange, NonFiniteInput, SignalTooShort
from .filters import FilterBank, WaveletSpec, build_filter_bank

EXTENSION_MODE = "half_point_symmetric"


def pyramid_lengths(n: int, order: int, level: int) -> list[int]:
    """Coefficient counts [len_1, ..., len_J] for a length-n signal."""
    lengths = []
    cur = n
    for _ in range(level):
        cur = (cur + 2 * order - 1) // 2
        lengths.append(cur)
    return lengths


def _reflect_indices(n: int, m: int) -> np.ndarray:
    """Column index map for half-point symmetric extension by m each side."""
    pos = np.arange(-m, n + m)
    period = 2 * n
    q = np.mod(pos, period)
    return np.where(q < n, q, period - 1 - q)


def _extend(x: np.ndarray, m: int) -> np.ndarray:
    """Extend a (B, n) batch symmetrically by m samples on both ends."""
    return x[:, _reflect_indices(x.shape[1], m)]


def _analysis_step(x: np.ndarray, bank: FilterBank) -> tuple[np.ndarray, np.ndarray]:
    """One forward step on a (B, n) batch -> (B, L) approx and detail."""
    lf = bank.length
    ext = _extend(x, lf - 1)
    windows = sliding_window_view(ext, lf, axis=1)[:, 1::2, :]
    a = windows @ bank.dec_low[::-1]
    d = windows @ bank.dec_high[::-1]
    return a, d


def _synthesis_step(
    a: np.ndarray, d: np.ndarray | None, bank: FilterBank, n_out: int
) -> np.ndarray:
    """One inverse step: (B, L) approx (+ optional detail) -> (B, n_out)."""
    lf = bank.length
    B, L = a.shape
    # upsampled length 2L-1, plus one leading zero so every window index is
    # in range, plus right padding up to the last window's reach
    width = max(2 * L, n_out + lf - 1)
    up = np.zeros((B, width))
    up[:, 1 : 2 * L : 2] = a
    windows = sliding_window_view(up, lf, axis=1)[:, :n_out, :]
    # correlation against the time-reversed reconstruction filter == the
    # analysis filter in natural order
    out = windows @ bank.dec_low
    if d is not None:
        up[:, 1 : 2 * L : 2] = d
        out = out + windows @ bank.dec_high
    return out


@dataclass
class BatchDecomposition:
    """Level-J pyramid for a batch of equal-length signals.

    `approx` is (B, len_J); `details[j-1]` is (B, len_j) for j = 1..J.
    """

    spec: WaveletSpec
    approx: np.ndarray
    details: list[np.ndarray]
    lengths: list[int]
    original_length: int
    extension_mode: str = EXTENSION_MODE

    @property
    def batch_size(self) -> int:
        return self.approx.shape[0]


@dataclass
class Decomposition:
    """Level-J pyramid output for a single signal."""

    spec: WaveletSpec
    approx: np.ndarray
    details: list[np.ndarray]
    lengths: list[int]
    original_length: int
    extension_mode: str = EXTENSION_MODE


def decompose_many(values: np.ndarray, spec: WaveletSpec) -> BatchDecomposition:
    """Decompose a (B, n) batch of signals with a shared spec."""
    x = np.asarray(values, dtype=float)
    if x.ndim != 2:
        raise ValueError("decompose_many expects a (batch, n) array")
    if x.shape[1] < 2:
        raise SignalTooShort(f"need at least 2 samples, got {x.shape[1]}")
    if not np.all(np.isfinite(x)):
        raise NonFiniteInput("signal contains NaN or infinity")
    bank = build_filter_bank(spec)
    details: list[np.ndarray] = []
    cur = x
    for _ in range(spec.level):
        cur, d = _analysis_step(cur, bank)
        details.append(d)
    lengths = [d.shape[1] for d in details]
    return BatchDecomposition(
        spec=spec,
        approx=cur,
        details=details,
        lengths=lengths,
        original_length=x.shape[1],
    )


def reconstruct_approximation_many(d: BatchDecomposition, j: int) -> np.ndarray:
    """Level-j approximation series, (B, original_length).

    Inverts the pyramid with detail coefficients at levels <= j zeroed;
    j = 0 reproduces the original signals.
    """
    if not 0 <= j <= d.spec.level:
        raise LevelOutOfRange(f"level {j} outside 0..{d.spec.level}")
    bank = build_filter_bank(d.spec)
    a = d.approx
    for lev in range(d.spec.level, 0, -1):
        n_out = d.lengths[lev - 2] if lev >= 2 else d.original_length
        det = d.details[lev - 1] if lev > j else None
        a = _synthesis_step(a, det, bank, n_out)
    return a


def decompose(values, spec: WaveletSpec) -> Decomposition:
    """Decompose one signal into a level-J pyramid.

    Parameters
    ----------
    values : array_like
        The signal, length >= 2, all finite.
    spec : WaveletSpec
        Wavelet family, order, and approximation depth J.
    """
    x = np.asarray(values, dtype=float)
    if x.ndim != 1:
        raise ValueError("decompose expects a 1-D signal")
    batch = decompose_many(x[None, :], spec)
    return Decomposition(
        spec=spec,
        approx=batch.approx[0],
        details=[det[0] for det in batch.details],
        lengths=batch.lengths,
        original_length=batch.original_length,
    )


def _as_batch(d: Decomposition) -> BatchDecomposition:
    return BatchDecomposition(
        spec=d.spec,
        approx=d.approx[None, :],
        details=[det[None, :] for det in d.details],
        lengths=d.lengths,
        original_length=d.original_length,
    )


def reconstruct_approximation(d: Decomposition, j: int) -> np.ndarray:
    """Level-j approximation A_j at full signal length (j = 0: original)."""
    return reconstruct_approximation_many(_as_batch(d), j)[0]


def reconstruct_details(d: Decomposition, j: int) -> np.ndarray:
    """Level-j detail series D_j = A_{j-1} - A_j at full signal length."""
    if not 1 <= j <= d.spec.level:
        raise LevelOutOfRange(f"level {j} outside 1..{d.spec.level}")
    batch = _as_batch(d)
    a_upper = reconstruct_approximation_many(batch, j - 1)[0]
    a_lower = reconstruct_approximation_many(batch, j)[0]
    return a_upper - a_lower


def entropy(coeffs, kind: str) -> float:
    """Coefficient-energy dispersion of a coefficient vector.

    shannon: -sum(s^2 ln s^2); log_energy: sum(ln s^2).  Zero coefficients
    contribute 0 to either sum (the s -> 0 limit convention).
    """
    s = np.asarray(coeffs, dtype=float).ravel()
    if s.size == 0:
        raise EmptyInput("entropy of an empty coefficient vector")
    if not np.all(np.isfinite(s)):
        raise NonFiniteInput("coefficients contain NaN or infinity")
    sq = s * s
    nz = sq > 0
    if kind == "shannon":
        return float(-np.sum(sq[nz] * np.log(sq[nz])))
    if kind == "log_energy":
        return float(np.sum(np.log(sq[nz])))
    raise ValueError(f"unknown entropy kind: {kind!r}")
