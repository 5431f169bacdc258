"""Decimated analysis/synthesis pyramid: oracles, identities, errors."""
import numpy as np
import pytest

from corewave.errors import (
    EmptyInput,
    LevelOutOfRange,
    NonFiniteInput,
    SignalTooShort,
)
from corewave.wavelet import (
    WaveletSpec,
    build_filter_bank,
    decompose,
    decompose_many,
    entropy,
    pyramid_lengths,
    reconstruct_approximation,
    reconstruct_approximation_many,
    reconstruct_details,
)
from corewave.wavelet.transform import EXTENSION_MODE


def half_point_extension(x, m):
    """Independent construction of the boundary rule, valid for m <= len(x)."""
    assert m <= x.size
    return np.concatenate([x[:m][::-1], x, x[::-1][:m]])


def analysis_matrix(n, filt):
    """One analysis step as an explicit matrix acting on the extended signal."""
    lf = filt.size
    m = lf - 1
    n_out = (n + m) // 2
    mat = np.zeros((n_out, n + 2 * m))
    for i in range(n_out):
        mat[i, 1 + 2 * i : 1 + 2 * i + lf] = filt[::-1]
    return mat


@pytest.mark.parametrize("family", ["daubechies", "symlet"])
@pytest.mark.parametrize("order", [1, 2, 3, 5, 8])
def test_single_step_matches_matrix_oracle(family, order):
    rng = np.random.default_rng(1000 + order)
    n = 16
    x = rng.normal(size=n)
    bank = build_filter_bank((family, order))
    ext = half_point_extension(x, bank.length - 1)
    a_expect = analysis_matrix(n, bank.dec_low) @ ext
    d_expect = analysis_matrix(n, bank.dec_high) @ ext
    dec = decompose(x, WaveletSpec(family, order, 1))
    assert np.max(np.abs(dec.approx - a_expect)) < 1e-10
    assert np.max(np.abs(dec.details[0] - d_expect)) < 1e-10


def test_single_step_matrix_oracle_wide_filter():
    # filter longer than half the signal, still shorter than the signal
    rng = np.random.default_rng(77)
    n = 33
    x = rng.normal(size=n)
    bank = build_filter_bank(("daubechies", 10))
    ext = half_point_extension(x, bank.length - 1)
    a_expect = analysis_matrix(n, bank.dec_low) @ ext
    dec = decompose(x, WaveletSpec("daubechies", 10, 1))
    assert dec.approx.size == (n + bank.length - 1) // 2
    assert np.max(np.abs(dec.approx - a_expect)) < 1e-10


def test_pyramid_lengths_recursion():
    for order in (1, 3, 10):
        lens = pyramid_lengths(420, order, 6)
        cur = 420
        for value in lens:
            cur = (cur + 2 * order - 1) // 2
            assert value == cur
    assert pyramid_lengths(64, 1, 6) == [32, 16, 8, 4, 2, 1]


def test_decomposition_bookkeeping():
    x = np.random.default_rng(3).normal(size=100)
    spec = WaveletSpec("symlet", 4, 3)
    d = decompose(x, spec)
    assert d.spec == spec
    assert d.original_length == 100
    assert d.lengths == pyramid_lengths(100, 4, 3)
    assert d.approx.size == d.lengths[-1]
    assert [det.size for det in d.details] == d.lengths
    assert d.extension_mode == EXTENSION_MODE == "half_point_symmetric"


def test_constant_signal_haar_two_levels():
    c = 3.5
    x = np.full(50, c)
    d = decompose(x, WaveletSpec("haar", 1, 2))
    assert np.max(np.abs(d.details[0])) < 1e-12
    assert np.max(np.abs(d.details[1])) < 1e-12
    # each analysis step scales a constant by sqrt(2)
    assert np.max(np.abs(d.approx - 2.0 * c)) < 1e-12


@pytest.mark.parametrize(
    "spec,n",
    [
        (WaveletSpec("haar", 1, 6), 64),
        (WaveletSpec("daubechies", 3, 4), 100),
        (WaveletSpec("symlet", 5, 5), 420),
        (WaveletSpec("daubechies", 10, 4), 420),
    ],
)
def test_perfect_reconstruction_and_additivity(spec, n):
    rng = np.random.default_rng(n + spec.order)
    x = rng.normal(size=n)
    batch = decompose_many(x[None, :], spec)
    roundtrip = reconstruct_approximation_many(batch, 0)
    assert roundtrip.shape == (1, n)
    assert np.max(np.abs(roundtrip[0] - x)) < 1e-8

    d = decompose(x, spec)
    total = reconstruct_approximation(d, spec.level).copy()
    for j in range(1, spec.level + 1):
        total += reconstruct_details(d, j)
    assert np.max(np.abs(total - x)) < 1e-8


def test_details_are_approximation_differences():
    x = np.random.default_rng(9).normal(size=200)
    d = decompose(x, WaveletSpec("daubechies", 2, 3))
    for j in range(1, 4):
        expected = reconstruct_approximation(d, j - 1) - reconstruct_approximation(d, j)
        assert np.max(np.abs(reconstruct_details(d, j) - expected)) < 1e-10


def test_batch_rows_match_individual_calls():
    rng = np.random.default_rng(11)
    xs = rng.normal(size=(3, 90))
    spec = WaveletSpec("daubechies", 4, 3)
    batch = decompose_many(xs, spec)
    for row in range(3):
        single = decompose(xs[row], spec)
        assert np.array_equal(batch.approx[row], single.approx)
        for j in range(3):
            assert np.array_equal(batch.details[j][row], single.details[j])
    full = reconstruct_approximation_many(batch, 0)
    assert np.max(np.abs(full - xs)) < 1e-8


@pytest.mark.parametrize("order", range(1, 11))
def test_interior_detail_kills_polynomials(order):
    """Degree order-1 polynomials vanish under the detail filter away from edges."""
    n = 120
    t = np.linspace(0.0, 1.0, n)
    rng = np.random.default_rng(order)
    coef = rng.uniform(-2, 2, size=order)  # degree order-1
    x = np.polynomial.polynomial.polyval(t, coef)
    bank = build_filter_bank(("daubechies", order))
    lf = bank.length
    m = lf - 1
    d = decompose(x, WaveletSpec("daubechies", order, 1))
    starts = 1 + 2 * np.arange(d.details[0].size) - m  # window start in signal index
    interior = (starts >= 0) & (starts + lf <= n)
    assert interior.sum() >= 10
    assert np.max(np.abs(d.details[0][interior])) < 1e-8


def test_haar_energy_preserved_on_dyadic_length():
    # dyadic length keeps every haar window interior, so the map is orthonormal
    rng = np.random.default_rng(64)
    x = rng.normal(size=64)
    d = decompose(x, WaveletSpec("haar", 1, 6))
    energy = float(d.approx @ d.approx) + sum(float(c @ c) for c in d.details)
    assert abs(energy - float(x @ x)) < 1e-8


def test_haar_first_detail_halves_white_noise_variance():
    rng = np.random.default_rng(4096)
    x = rng.normal(size=4096)
    d1 = reconstruct_details(decompose(x, WaveletSpec("haar", 1, 1)), 1)
    ratio = float(np.var(d1)) / float(np.var(x))
    assert 0.4 < ratio < 0.6


def test_decompose_input_validation():
    spec = WaveletSpec("haar", 1, 1)
    with pytest.raises(SignalTooShort):
        decompose(np.array([1.0]), spec)
    with pytest.raises(NonFiniteInput):
        decompose(np.array([1.0, np.nan, 2.0]), spec)
    with pytest.raises(ValueError):
        decompose(np.ones((2, 8)), spec)
    with pytest.raises(ValueError):
        decompose_many(np.ones(8), spec)


def test_reconstruction_level_bounds():
    d = decompose(np.random.default_rng(0).normal(size=60), WaveletSpec("haar", 1, 3))
    batch = decompose_many(np.random.default_rng(0).normal(size=(1, 60)), WaveletSpec("haar", 1, 3))
    with pytest.raises(LevelOutOfRange):
        reconstruct_approximation_many(batch, 4)
    with pytest.raises(LevelOutOfRange):
        reconstruct_approximation_many(batch, -1)
    with pytest.raises(LevelOutOfRange):
        reconstruct_details(d, 0)
    with pytest.raises(LevelOutOfRange):
        reconstruct_details(d, 4)


def test_entropy_hand_values():
    assert entropy([1.0, 0.0, 0.0], "shannon") == 0.0
    assert entropy([1.0, 1.0], "log_energy") == 0.0
    r = np.sqrt(0.5)
    assert abs(entropy([r, r], "shannon") - np.log(2.0)) < 1e-12
    # zeros are skipped rather than poisoning the log
    assert entropy([1.0, 0.0, 1.0], "log_energy") == 0.0


def test_entropy_errors():
    with pytest.raises(EmptyInput):
        entropy([], "shannon")
    with pytest.raises(NonFiniteInput):
        entropy([1.0, np.inf], "shannon")
    with pytest.raises(ValueError):
        entropy([1.0, 2.0], "renyi")
