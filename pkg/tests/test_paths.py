"""Fractional Brownian paths and the benchmark coefficient families."""

import math

import numpy as np
import pytest

from tvpar.paths import PATH_GRID_SIZE, fbm_path, make_test_function
from tvpar.paths import _fgn_autocovariance


def test_fbm_starts_at_zero_and_validates_inputs():
    path = fbm_path(0.8, 256, seed=1)
    assert path[0] == 0.0
    assert len(path) == 257
    for bad in (0.0, 1.0, -0.2, 1.5):
        with pytest.raises(ValueError):
            fbm_path(bad, 256, seed=1)
    with pytest.raises(ValueError):
        fbm_path(0.5, 1, seed=1)


def test_fbm_reproducible_from_seed():
    a = fbm_path(0.7, 512, seed=42)
    b = fbm_path(0.7, 512, seed=42)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, fbm_path(0.7, 512, seed=43))


def test_fgn_autocovariance_closed_form():
    g = _fgn_autocovariance(0.8, [0, 1, 2])
    assert g[0] == pytest.approx(1.0)
    assert g[1] == pytest.approx(2**0.6 - 1.0)
    assert g[2] == pytest.approx(0.5 * (3**1.6 - 2 * 2**1.6 + 1))
    # H = 0.5 increments are uncorrelated
    g5 = _fgn_autocovariance(0.5, [1, 2, 3])
    assert np.allclose(g5, 0.0)


def test_wiener_increments_are_uncorrelated():
    path = fbm_path(0.5, 2**14, seed=12)
    inc = np.diff(path)
    rho = np.corrcoef(inc[:-1], inc[1:])[0, 1]
    assert abs(rho) < 0.05


def test_fbm_lag_one_increment_autocorrelation():
    path = fbm_path(0.8, 2**14, seed=11)
    inc = np.diff(path)
    rho = np.corrcoef(inc[:-1], inc[1:])[0, 1]
    assert abs(rho - (2**0.6 - 1.0)) < 0.05


def test_fbm_self_similar_increment_variance():
    # increments over 2^-10 spans have variance (2^-10)^(2H) within 10%
    hurst = 0.8
    path = fbm_path(hurst, 2**14, seed=19)
    step = 2**4  # 2^4 / 2^14 = 2^-10
    inc = path[step::step] - path[:-step:step]
    target = (2.0**-10) ** (2 * hurst)
    assert abs(np.var(inc) / target - 1.0) < 0.10


def test_make_test_function_cosine_closed_form():
    fam = make_test_function("cosine", 2, seed=0)
    assert fam.period == 2
    assert fam.smooth
    assert fam.rho == 2.0
    # season signs alternate: cos(2 pi s / 2) = -1, +1
    assert fam(1, 0.0) == pytest.approx(-0.9)
    assert fam(2, 0.0) == pytest.approx(0.9)
    assert abs(fam(1, 0.0)) == pytest.approx(0.9)
    assert fam(1, 0.5) == pytest.approx(-0.9 * math.cos(1.5))


@pytest.mark.parametrize("kind", ["wiener", "wiener-integral", "fbm"])
def test_path_kinds_attain_the_amplitude_exactly(kind):
    fam = make_test_function(kind, 2, seed=5)
    grid = np.linspace(0.0, 1.0, PATH_GRID_SIZE + 1)
    sups = [np.max(np.abs(np.asarray(fam(s, grid)))) for s in (1, 2)]
    assert max(sups) == pytest.approx(0.9, abs=1e-12)
    assert fam.alpha <= 0.9
    assert not fam.smooth


def test_path_kinds_stay_contractive_between_knots():
    fam = make_test_function("fbm", 3, seed=8)
    dense = np.linspace(0.0, 1.0, 50_001)
    for s in (1, 2, 3):
        assert np.max(np.abs(np.asarray(fam(s, dense)))) <= 0.9 + 1e-12


def test_make_test_function_validates_inputs():
    with pytest.raises(ValueError, match="unknown test function"):
        make_test_function("box", 2, seed=0)
    with pytest.raises(ValueError):
        make_test_function("fbm", 2, seed=0, hurst=1.2)
    with pytest.raises(ValueError):
        make_test_function("cosine", 0, seed=0)


def test_shared_path_across_seasons_differs_only_by_modulation():
    fam = make_test_function("wiener", 4, seed=9)
    grid = np.linspace(0.0, 1.0, 101)
    base = np.asarray(fam(4, grid))  # season T has modulation cos(2 pi) = 1
    m1 = math.cos(2 * math.pi / 4)
    assert np.allclose(np.asarray(fam(1, grid)), m1 * base, atol=1e-12)


def test_cholesky_fallback_when_embedding_fails(monkeypatch):
    # force a negative circulant eigenvalue to exercise the fallback
    real_fft = np.fft.fft

    def poisoned_fft(x, *args, **kwargs):
        out = real_fft(x, *args, **kwargs)
        out = np.asarray(out, dtype=complex).copy()
        out[0] = -1.0
        return out

    monkeypatch.setattr(np.fft, "fft", poisoned_fft)
    with pytest.warns(RuntimeWarning, match="Cholesky"):
        path = fbm_path(0.8, 128, seed=3)
    assert path[0] == 0.0
    assert len(path) == 129
    assert np.all(np.isfinite(path))
    monkeypatch.undo()
    clean = fbm_path(0.8, 128, seed=3)
    assert np.all(np.isfinite(clean))
