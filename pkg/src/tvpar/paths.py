"""Hölder-regular test coefficient functions built from random paths.

The Monte-Carlo experiments exercise coefficient functions of prescribed
roughness: a smooth cosine (twice differentiable), the integral of a
Wiener path, a fractional Brownian path with Hurst exponent ``H`` and a
raw Wiener path.  Each is modulated per season by ``cos(2 pi s / T)``
and scaled so the sampled sup-norm stays at or below 0.9, keeping the
family inside the contractive class.

Fractional Brownian motion is synthesised by circulant embedding of the
fractional Gaussian noise autocovariance (Davies-Harte), which is exact
in distribution, with a Cholesky fallback if the circulant eigenvalues
go negative.
"""

import math
import warnings

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.linalg import cholesky, toeplitz

from .process import CoefficientFamily
from .rng import derive_rng

__all__ = ["fbm_path", "make_test_function", "PATH_GRID_SIZE", "TEST_FUNCTION_KINDS"]

#: Synthesis grid for path-based coefficient functions (power of two).
PATH_GRID_SIZE = 2**14

#: Amplitude of every test coefficient function.
_AMPLITUDE = 0.9

TEST_FUNCTION_KINDS = ("cosine", "wiener-integral", "fbm", "wiener")


def _fgn_autocovariance(hurst, lags):
    k = np.asarray(lags, dtype=float)
    h2 = 2.0 * hurst
    return 0.5 * (
        np.abs(k + 1.0) ** h2 - 2.0 * np.abs(k) ** h2 + np.abs(k - 1.0) ** h2
    )


def fbm_path(hurst, grid_size, seed):
    """Sample fractional Brownian motion on ``{0, 1/m, ..., 1}``.

    Returns an array of length ``grid_size + 1`` starting at
    ``B_H(0) = 0``.  Exact in distribution: the increments are
    fractional Gaussian noise generated by circulant embedding of its
    autocovariance, cumulatively summed and rescaled by self-similarity.
    ``hurst = 0.5`` reduces to a scaled random-walk Wiener path.
    """
    hurst = float(hurst)
    if not 0.0 < hurst < 1.0:
        raise ValueError(f"Hurst exponent must lie in (0, 1), got {hurst!r}")
    m = int(grid_size)
    if m < 2:
        raise ValueError("grid_size must be at least 2")
    rng = derive_rng(seed)
    gamma = _fgn_autocovariance(hurst, np.arange(m + 1))
    circ = np.concatenate([gamma, gamma[-2:0:-1]])
    eig = np.fft.fft(circ).real
    tiny = -1e-9 * float(np.max(eig))
    if np.min(eig) < tiny:
        warnings.warn(
            f"circulant embedding failed for H={hurst:g}, m={m}; "
            "falling back to Cholesky synthesis",
            RuntimeWarning,
            stacklevel=2,
        )
        cov = toeplitz(gamma[:m])
        fgn = cholesky(cov, lower=True) @ rng.standard_normal(m)
    else:
        eig = np.clip(eig, 0.0, None)
        z = np.empty(2 * m, dtype=complex)
        z[0] = rng.standard_normal()
        z[m] = rng.standard_normal()
        pairs = rng.standard_normal((m - 1, 2))
        z[1:m] = (pairs[:, 0] + 1j * pairs[:, 1]) / math.sqrt(2.0)
        z[m + 1 :] = np.conj(z[1:m][::-1])
        fgn = math.sqrt(2 * m) * np.fft.ifft(np.sqrt(eig) * z).real[:m]
    path = np.empty(m + 1)
    path[0] = 0.0
    np.cumsum(fgn, out=path[1:])
    path[1:] *= m ** (-hurst)
    return path


def _interpolant(grid_t, values):
    values = np.asarray(values, dtype=float)

    def f(v, _t=grid_t, _y=values):
        return np.interp(np.asarray(v, dtype=float), _t, _y)

    return f


def make_test_function(kind, T, seed, hurst=0.8):
    """Build one of the benchmark coefficient families.

    ``kind`` selects the regularity class:

    - ``"cosine"``: ``0.9 cos(2 pi s / T) cos(3 u)``, twice
      differentiable (closed form, supports differentiation);
    - ``"wiener-integral"``: integral of a Wiener path (regularity 1.5);
    - ``"fbm"``: fractional Brownian path with exponent ``hurst``;
    - ``"wiener"``: a Wiener path (regularity 0.5).

    Each path kind is normalised by its own supremum, so the sampled
    sup-norm of every season is exactly 0.9.

    Path kinds are synthesised once on a ``2**14``-point grid from the
    given ``seed``, linearly interpolated, and shared across seasons;
    only the seasonal sign modulation differs.
    """
    T = int(T)
    if T < 1:
        raise ValueError("period must be positive")
    modulation = [math.cos(2.0 * math.pi * s / T) for s in range(1, T + 1)]

    if kind == "cosine":
        funcs = [
            (lambda v, m=m: _AMPLITUDE * m * np.cos(3.0 * np.asarray(v, dtype=float)))
            for m in modulation
        ]
        return CoefficientFamily(
            funcs, alpha=_AMPLITUDE, rho=2.0, smooth=True, label="cosine"
        )

    grid_t = np.linspace(0.0, 1.0, PATH_GRID_SIZE + 1)
    if kind == "wiener":
        w = fbm_path(0.5, PATH_GRID_SIZE, seed)
        base = w / np.max(np.abs(w))
        rho = 0.5
        label = f"wiener(seed={seed})"
    elif kind == "wiener-integral":
        w = fbm_path(0.5, PATH_GRID_SIZE, seed)
        integral = cumulative_trapezoid(w, grid_t, initial=0.0)
        base = integral / np.max(np.abs(integral))
        rho = 1.5
        label = f"wiener-integral(seed={seed})"
    elif kind == "fbm":
        if not 0.0 < hurst < 1.0:
            raise ValueError(f"Hurst exponent must lie in (0, 1), got {hurst!r}")
        b = fbm_path(hurst, PATH_GRID_SIZE, seed)
        base = b / np.max(np.abs(b))
        rho = hurst
        label = f"fbm(H={hurst:g},seed={seed})"
    else:
        raise ValueError(
            f"unknown test function kind {kind!r}; choose from {TEST_FUNCTION_KINDS}"
        )

    scaled = _AMPLITUDE * base
    funcs = []
    for m in modulation:
        funcs.append(_interpolant(grid_t, m * scaled))
    return CoefficientFamily(
        funcs, alpha=_AMPLITUDE, rho=rho, smooth=False, label=label
    )
