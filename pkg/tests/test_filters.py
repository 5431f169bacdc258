"""Filter-bank construction: orthonormality, known coefficients, validation."""
import math

import numpy as np
import pytest

from corewave.errors import InvalidOrder, UnknownFamily
from corewave.wavelet import MAX_ORDER, WaveletSpec, build_filter_bank

SPOT_ORDERS = (1, 2, 3, 7, 10, 20)


def check_bank_invariants(bank, tol=1e-10):
    h = bank.dec_low
    g = bank.dec_high
    n2 = h.size
    assert n2 == 2 * bank.order
    assert abs(h.sum() - math.sqrt(2)) < tol
    assert abs(h @ h - 1.0) < tol
    # quadrature mirror: g[k] = (-1)^k h[2N-1-k]
    signs = (-1.0) ** np.arange(n2)
    assert np.max(np.abs(g - signs * h[::-1])) < tol
    # even-shift orthogonality
    for m in range(1, bank.order):
        assert abs(h[: n2 - 2 * m] @ h[2 * m :]) < tol
    # reconstruction filters are time-reverses
    assert np.array_equal(bank.rec_low, h[::-1])
    assert np.array_equal(bank.rec_high, g[::-1])


@pytest.mark.parametrize("family", ["daubechies", "symlet"])
@pytest.mark.parametrize("order", SPOT_ORDERS)
def test_bank_invariants_spot_orders(family, order):
    check_bank_invariants(build_filter_bank((family, order)))


def test_haar_coefficients_exact():
    bank = build_filter_bank(("haar", 1))
    r = math.sqrt(2) / 2
    assert np.max(np.abs(bank.dec_low - [r, r])) < 1e-15
    check_bank_invariants(bank)


def test_db2_matches_closed_form():
    # h = [(1+s), (3+s), (3-s), (1-s)] / (4 sqrt 2) with s = sqrt 3
    s = math.sqrt(3)
    expected = np.array([1 + s, 3 + s, 3 - s, 1 - s]) / (4 * math.sqrt(2))
    bank = build_filter_bank(("daubechies", 2))
    assert np.max(np.abs(bank.dec_low - expected)) < 1e-12
    # the familiar 7-decimal table
    table = [0.4829629, 0.8365163, 0.2241439, -0.1294095]
    assert np.max(np.abs(bank.dec_low - table)) < 1e-7


def test_db4_and_sym4_match_published_tables():
    """Spot-check against widely published filter tables (8 decimals)."""
    db4 = [
        0.23037781330885523, 0.7148465705525415, 0.6308807679295904,
        -0.02798376941698385, -0.18703481171888114, 0.030841381835986965,
        0.032883011666982945, -0.010597401784997278,
    ]
    sym4 = [
        0.0322231006040427, -0.012603967262037833, -0.09921954357684722,
        0.29785779560527736, 0.8037387518059161, 0.49761866763201545,
        -0.02963552764599851, -0.07576571478927333,
    ]
    assert np.max(np.abs(build_filter_bank(("daubechies", 4)).dec_low - db4)) < 1e-8
    assert np.max(np.abs(build_filter_bank(("symlet", 4)).dec_low - sym4)) < 1e-8


def test_haar_db1_sym1_identical():
    h = build_filter_bank(("haar", 1))
    assert h == build_filter_bank(("daubechies", 1))
    assert h == build_filter_bank(("symlet", 1))


def test_symlet_differs_from_daubechies_above_order_one():
    for order in (2, 4, 8):
        db = build_filter_bank(("daubechies", order))
        sy = build_filter_bank(("symlet", order))
        assert np.max(np.abs(db.dec_low - sy.dec_low)) > 1e-3


def test_symlet_is_nearer_symmetric():
    # energy center of the symlet sits closer to the filter midpoint
    for order in (4, 6, 8):
        mid = (2 * order - 1) / 2
        def offcenter(bank):
            k = np.arange(bank.length)
            return abs(float(k @ (bank.dec_low ** 2)) - mid)
        assert offcenter(build_filter_bank(("symlet", order))) < offcenter(
            build_filter_bank(("daubechies", order))
        )


def test_bank_accepts_spec_or_tuple_and_caches():
    spec = WaveletSpec("daubechies", 3, 5)
    a = build_filter_bank(spec)
    b = build_filter_bank(("daubechies", 3))
    assert a == b


def test_bank_arrays_are_write_protected():
    bank = build_filter_bank(("daubechies", 2))
    with pytest.raises(ValueError):
        bank.dec_low[0] = 0.0


def test_invalid_orders():
    for bad in (0, -1, MAX_ORDER + 1):
        with pytest.raises(InvalidOrder):
            build_filter_bank(("daubechies", bad))
    with pytest.raises(InvalidOrder):
        WaveletSpec("haar", 2, 1)  # haar has exactly one order
    with pytest.raises(InvalidOrder):
        WaveletSpec("daubechies", 2, 11)  # level cap
    with pytest.raises(InvalidOrder):
        WaveletSpec("daubechies", 2, 0)


def test_unknown_family():
    with pytest.raises(UnknownFamily):
        build_filter_bank(("coiflet", 2))
    with pytest.raises(UnknownFamily):
        WaveletSpec("meyer", 1, 1)


def test_spec_names():
    assert WaveletSpec("daubechies", 10, 4).name == "db10-L4"
    assert WaveletSpec("symlet", 5, 5).name == "sym5-L5"
    assert WaveletSpec("haar", 1, 2).name == "haar-L2"


def test_canonical_filter_key_merges_order_one():
    assert WaveletSpec("haar", 1, 3).canonical_filter_key() == ("daubechies", 1)
    assert WaveletSpec("symlet", 1, 3).canonical_filter_key() == ("daubechies", 1)
    assert WaveletSpec("symlet", 2, 3).canonical_filter_key() == ("symlet", 2)
