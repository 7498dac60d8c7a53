"""Kernel estimation of the periodic AR coefficient functions.

For season ``s`` and rescaled time ``u`` in (0, 1), the estimator is the
ratio of two kernel-weighted sums over the season's index set
``I_{n,s} = {s, s+T, ..., s+(n-1)T}``:

    a_hat_s(u) = N_hat / D_hat,
    N_hat = (1 / (n b_n)) sum_j K((j/(nT) - u) / b_n) X_j X_{j-1},
    D_hat = (1 / (n b_n)) sum_j K((j/(nT) - u) / b_n) X_{j-1}^2.

The module also provides plug-in asymptotic standard errors and
confidence intervals, the closed-form bias of the estimator at the
critical bandwidth rate ``b_n = c n^{-1/5}`` for twice-differentiable
coefficients, and a studentized test statistic for pointwise hypotheses
about a coefficient value.
"""

from dataclasses import dataclass, replace

import numpy as np
from scipy.stats import norm

from .kernels import KernelModel, effective_window
from .process import theoretical_gamma2

__all__ = [
    "DegenerateDenominator",
    "EstimateGrid",
    "TestResult",
    "GRID99",
    "estimate",
    "estimate_grid",
    "asymptotic_ci",
    "bias_mu",
    "test_statistic",
]

#: Default evaluation grid: 99 equispaced interior points 0.01 .. 0.99.
GRID99 = np.linspace(0.01, 0.99, 99)

#: Relative threshold below which a denominator counts as degenerate.
_DEGENERATE_REL = 1e-12

#: Cap applied to the full-period product of squared coefficient
#: estimates inside studentization, guarding against estimates that
#: transiently leave the stationarity region.
_PRODUCT_CLAMP = 1.0 - 1e-6


class DegenerateDenominator(ArithmeticError):
    """Raised when a kernel window holds no usable observations."""


def _degenerate_threshold(traj):
    return _DEGENERATE_REL * float(np.mean(traj.values**2))


def season_weights(traj, s, u, b_n, kernel):
    """Kernel weights over I_{n,s} at evaluation points ``u``.

    Returns ``(w, positions)`` where ``w`` has shape ``(len(u), n)`` and
    holds raw kernel values, zeroed outside the kernel's effective
    window.  ``positions`` are the rescaled times j/(nT) of the season.
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if np.any((u <= 0.0) | (u >= 1.0)):
        raise ValueError("evaluation points must lie strictly inside (0, 1)")
    if b_n <= 0.0:
        raise ValueError("bandwidth must be positive")
    js = traj.season_indices(s)
    pos = js / (traj.n * traj.period)
    dist = pos[None, :] - u[:, None]
    w = kernel((dist / b_n))
    window = effective_window(kernel, traj.n, b_n)
    w[np.abs(dist) > window] = 0.0
    return w, pos


def _season_sums(traj, s, u, b_n, kernel):
    """Numerators and denominators of the estimator at points ``u``."""
    w, _ = season_weights(traj, s, u, b_n, kernel)
    js = traj.season_indices(s)
    x = traj.values[js - 1]
    xlag = traj.lagged()[js - 1]
    scale = 1.0 / (traj.n * b_n)
    n_hat = scale * (w @ (x * xlag))
    d_hat = scale * (w @ (xlag * xlag))
    return n_hat, d_hat


def estimate(traj, s, u, b_n, kernel):
    """Estimate ``a_s(u)`` from one trajectory.

    Returns the triple ``(a_hat, N_hat, D_hat)``.  Raises
    :class:`DegenerateDenominator` when ``D_hat`` falls at or below
    1e-12 times the trajectory's mean square (no effective observations
    or an all-zero window).
    """
    if len(traj.values) < 2:
        raise ValueError("trajectory must hold at least two observations")
    u = float(u)
    n_hat, d_hat = _season_sums(traj, s, np.array([u]), b_n, kernel)
    n_hat, d_hat = float(n_hat[0]), float(d_hat[0])
    if d_hat <= _degenerate_threshold(traj):
        raise DegenerateDenominator(
            f"denominator {d_hat:.3e} at (s={s}, u={u:g}, b_n={b_n:g})"
        )
    return n_hat / d_hat, n_hat, d_hat


@dataclass
class EstimateGrid:
    """Matrix of coefficient estimates over seasons and grid points.

    Row ``s-1`` holds season ``s``; degenerate cells are NaN.  The
    standard-error and interval fields are filled by
    :func:`asymptotic_ci`; ``clamped`` marks cells where the
    studentization product hit its stationarity cap.
    """

    grid: np.ndarray
    estimates: np.ndarray
    numerator: np.ndarray
    denominator: np.ndarray
    b_n: float
    kernel: KernelModel
    n: int
    period: int
    stderr: np.ndarray | None = None
    ci_lower: np.ndarray | None = None
    ci_upper: np.ndarray | None = None
    level: float | None = None
    clamped: np.ndarray | None = None

    @property
    def seasons(self):
        return np.arange(1, self.period + 1)

    def missing_cells(self):
        return int(np.count_nonzero(np.isnan(self.estimates)))


def estimate_grid(traj, grid=None, b_n=None, kernel=None):
    """Estimate every season over a grid of interior points.

    Degenerate cells are recorded as NaN rather than raised; the call
    fails only if every cell is degenerate.  The default grid is the 99
    points 0.01, 0.02, ..., 0.99.
    """
    if grid is None:
        grid = GRID99
    if b_n is None or kernel is None:
        raise ValueError("b_n and kernel are required")
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    T = traj.period
    m = len(grid)
    n_hat = np.empty((T, m))
    d_hat = np.empty((T, m))
    for s in range(1, T + 1):
        n_hat[s - 1], d_hat[s - 1] = _season_sums(traj, s, grid, b_n, kernel)
    thr = _degenerate_threshold(traj)
    a_hat = np.where(d_hat > thr, n_hat / np.where(d_hat > thr, d_hat, 1.0), np.nan)
    if np.all(np.isnan(a_hat)):
        raise DegenerateDenominator(
            f"every cell degenerate at b_n={b_n:g} on a {T} x {m} grid"
        )
    return EstimateGrid(
        grid=grid,
        estimates=a_hat,
        numerator=n_hat,
        denominator=d_hat,
        b_n=float(b_n),
        kernel=kernel,
        n=traj.n,
        period=T,
    )


def variance_ratio(estimates_at_u):
    """Studentization ratio ``(1 - P) / (1 + S_s)`` per season.

    ``estimates_at_u`` has shape (T,) or (T, m) and holds a_hat for all
    seasons at common evaluation points.  ``P`` is the full-period
    product of squared estimates (clamped at 1 - 1e-6) and
    ``S_s = sum_{i=0}^{T-2} prod_{j=0}^{i} a_hat_{s-j}^2``.  Returns
    ``(ratio, clamped)`` with the same shape as the input.
    """
    a2 = np.atleast_2d(np.asarray(estimates_at_u, dtype=float)) ** 2
    T, m = a2.shape
    ratio = np.empty((T, m))
    clamped = np.zeros((T, m), dtype=bool)
    for s0 in range(T):
        acc = np.ones(m)
        partial = np.zeros(m)
        for j in range(T):
            acc = acc * a2[(s0 - j) % T]
            if j < T - 1:
                partial += acc
        over = acc > _PRODUCT_CLAMP
        clamped[s0] = over & np.isfinite(acc)
        ratio[s0] = (1.0 - np.minimum(acc, _PRODUCT_CLAMP)) / (1.0 + partial)
    if np.ndim(estimates_at_u) == 1:
        return ratio[:, 0], clamped[:, 0]
    return ratio, clamped


def asymptotic_ci(est, traj=None, level=0.95):
    """Attach plug-in standard errors and confidence bounds to a grid.

    The asymptotic variance of ``a_hat_s(u)`` is
    ``(sigma^2 / gamma2_s(u)) int K^2 / (n b_n)``; the unknown ratio
    ``sigma^2 / gamma2_s(u)`` is replaced by its expression in the
    estimated coefficients, giving

        stderr(s, u) = sqrt( int K^2 / (n b_n) * (1 - P) / (1 + S_s) ).

    Missing cells propagate as NaN; cells where the full product of
    squared estimates exceeded ``1 - 1e-6`` are clamped and flagged.
    """
    if not 0.0 < level < 1.0:
        raise ValueError("level must lie in (0, 1)")
    if traj is not None and traj.n != est.n:
        raise ValueError("trajectory does not match the estimate grid")
    ratio, clamped = variance_ratio(est.estimates)
    base = est.kernel.l2_norm_sq / (est.n * est.b_n)
    stderr = np.sqrt(base * ratio)
    z = norm.ppf(0.5 * (1.0 + level))
    return replace(
        est,
        stderr=stderr,
        ci_lower=est.estimates - z * stderr,
        ci_upper=est.estimates + z * stderr,
        level=float(level),
        clamped=clamped,
    )


@dataclass(frozen=True)
class TestResult:
    """Outcome of the pointwise test of ``a_s(u) = c_a``."""

    statistic: float
    null_value: float
    p_value: float
    reject_at_5pct: bool
    a_hat: float
    stderr: float


def test_statistic(traj, s, u, c_a, b_n, kernel):
    """Studentized test of ``H0: a_s(u) = c_a`` against a two-sided alternative.

    The statistic ``(a_hat_s(u) - c_a) / stderr`` is asymptotically
    standard normal under H0; the p-value is ``2 (1 - Phi(|stat|))``.
    All seasons are estimated at ``u`` to form the plug-in stderr; a
    degenerate cell at any season raises
    :class:`DegenerateDenominator`.
    """
    est = estimate_grid(traj, [float(u)], b_n, kernel)
    if np.any(np.isnan(est.estimates)):
        raise DegenerateDenominator(
            f"degenerate season estimate at u={u:g}, b_n={b_n:g}"
        )
    est = asymptotic_ci(est)
    a_hat = float(est.estimates[s - 1, 0])
    stderr = float(est.stderr[s - 1, 0])
    stat = (a_hat - float(c_a)) / stderr
    p_value = 2.0 * (1.0 - norm.cdf(abs(stat)))
    return TestResult(
        statistic=stat,
        null_value=float(c_a),
        p_value=p_value,
        reject_at_5pct=bool(p_value < 0.05),
        a_hat=a_hat,
        stderr=stderr,
    )


def bias_mu(coeffs, noise, s, u, c, kernel):
    """Asymptotic mean of ``sqrt(n b_n) (a_hat_s(u) - a_s(u))`` at ``b_n = c n^{-1/5}``.

    For twice-differentiable coefficients the limit law is non-centred
    with mean

        mu(u) = c^{5/2} / gamma2_s(u)
                * (a_s''(u) gamma2_s(u) / 2 + a_s'(u) gamma2_s'(u))
                * int z^2 K(z) dz.

    Derivatives of ``gamma2`` use central differences with step 1e-5;
    the coefficient derivatives use central differences as well.
    Rejects coefficient families backed by piecewise-linear
    interpolants, whose finite differences do not approximate
    derivatives.
    """
    if not coeffs.smooth:
        raise ValueError(
            "derivative unavailable: coefficient functions are piecewise-"
            "linear interpolants, not differentiable closed forms"
        )
    u = float(u)
    h1 = 1e-5
    h2 = 1e-4
    if u - h2 <= 0.0 or u + h2 >= 1.0:
        raise ValueError("u too close to the boundary for finite differences")

    def a(v):
        return coeffs(s, v)

    def g2(v):
        return theoretical_gamma2(coeffs, noise, s, v)

    a_prime = (a(u + h1) - a(u - h1)) / (2.0 * h1)
    a_second = (a(u + h2) - 2.0 * a(u) + a(u - h2)) / h2**2
    g2_u = g2(u)
    g2_prime = (g2(u + h1) - g2(u - h1)) / (2.0 * h1)
    return (
        float(c) ** 2.5
        / g2_u
        * (0.5 * a_second * g2_u + a_prime * g2_prime)
        * kernel.second_moment
    )
