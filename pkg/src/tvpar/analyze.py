"""Per-season coefficient profiles for ingested (real) series."""

import numpy as np

from .data import trajectory_from_values
from .estimator import asymptotic_ci, estimate_grid

__all__ = ["analyze", "DEFAULT_U_POINTS"]

#: Rescaled times at which real-data profiles are reported by default.
DEFAULT_U_POINTS = (0.25, 0.50, 0.75)


def default_bandwidth(n):
    """Real-data bandwidth rule ``n^{-1/5}`` (boundary rate for twice-
    differentiable coefficients); override per analysis as needed."""
    return float(n) ** (-0.2)


def analyze(series, period, u_list=DEFAULT_U_POINTS, kernel=None, bandwidth=None, level=0.95):
    """Estimate the per-season coefficient profile of a residual series.

    ``series`` is an already deseasonalized series (array or object with
    ``.values``); it is index-aligned to ``n = floor(N / T)`` full
    periods.  Returns an :class:`~tvpar.estimator.EstimateGrid` with
    plug-in standard errors and confidence bounds at each requested
    rescaled time, one row per season.
    """
    if kernel is None:
        raise ValueError("kernel is required")
    traj = trajectory_from_values(series, period)
    if bandwidth is None:
        bandwidth = default_bandwidth(traj.n)
    u = np.atleast_1d(np.asarray(u_list, dtype=float))
    est = estimate_grid(traj, u, float(bandwidth), kernel)
    return asymptotic_ci(est, traj, level=level)
