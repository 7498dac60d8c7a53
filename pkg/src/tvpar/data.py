"""CSV ingestion, trajectory serialisation and seasonal-trend removal.

Trajectories serialise to CSV with header ``t,x``, one row per
observation, LF line endings and 17 significant digits, which
round-trips doubles bitwise.  Real series are preprocessed by removing
an additive trend (centred moving average) and a seasonal profile
(per-phase means of the detrended interior) before coefficient
estimation.
"""

import csv
import io
from dataclasses import dataclass

import numpy as np

from .process import Trajectory

__all__ = [
    "SeriesFile",
    "Decomposition",
    "ingest_csv",
    "write_trajectory_csv",
    "trajectory_from_values",
    "deseasonalize",
]


@dataclass
class SeriesFile:
    """A parsed single-column time series with its source metadata."""

    path: str
    time_column: str
    value_column: str
    times: np.ndarray
    values: np.ndarray
    frequency: int | None = None
    dropped_rows: tuple = ()

    def __len__(self):
        return len(self.values)


def ingest_csv(file, mapping=("t", "x"), frequency=None):
    """Parse a CSV file into a :class:`SeriesFile`.

    ``mapping`` names the (time, value) columns, which must appear in
    the header row.  Blank lines are skipped and reported via
    ``dropped_rows``.  Malformed numeric fields and gaps raise with the
    offending line numbers; duplicate or non-increasing timestamps
    raise as well.
    """
    time_col, value_col = mapping
    if hasattr(file, "read"):
        handle = file
        path = getattr(file, "name", "<stream>")
        rows = list(csv.reader(handle))
    else:
        path = str(file)
        with open(path, newline="", encoding="utf-8") as handle:
            rows = list(csv.reader(handle))
    if not rows:
        raise ValueError(f"{path}: empty file, expected a header row")
    header = [h.strip() for h in rows[0]]
    try:
        t_idx = header.index(time_col)
        x_idx = header.index(value_col)
    except ValueError:
        raise ValueError(
            f"{path}: header {header!r} lacks required columns "
            f"({time_col!r}, {value_col!r})"
        ) from None

    times, values = [], []
    bad_lines, dropped = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            dropped.append(lineno)
            continue
        try:
            t = float(row[t_idx])
            x = float(row[x_idx])
        except (ValueError, IndexError):
            bad_lines.append(lineno)
            continue
        if not (np.isfinite(t) and np.isfinite(x)):
            bad_lines.append(lineno)
            continue
        times.append(t)
        values.append(x)
    if bad_lines:
        raise ValueError(
            f"{path}: malformed or non-finite fields on lines {bad_lines}"
        )
    if not values:
        raise ValueError(f"{path}: empty series")
    if len(values) < 2:
        raise ValueError(f"{path}: series too short, need at least 2 rows")
    times = np.asarray(times)
    if np.any(np.diff(times) == 0.0):
        raise ValueError(f"{path}: duplicate timestamps")
    if np.any(np.diff(times) < 0.0):
        raise ValueError(f"{path}: time index must be strictly increasing")
    return SeriesFile(
        path=path,
        time_column=time_col,
        value_column=value_col,
        times=times,
        values=np.asarray(values),
        frequency=frequency,
        dropped_rows=tuple(dropped),
    )


def write_trajectory_csv(traj, file):
    """Write a trajectory (or plain array) as ``t,x`` CSV.

    LF line endings and 17 significant digits, so that ingesting the
    file reproduces the doubles bitwise.
    """
    values = np.asarray(getattr(traj, "values", traj), dtype=float)
    text = io.StringIO()
    text.write("t,x\n")
    for t, x in enumerate(values, start=1):
        text.write(f"{t},{x:.17g}\n")
    payload = text.getvalue()
    if hasattr(file, "write"):
        file.write(payload)
    else:
        with open(file, "w", newline="", encoding="utf-8") as handle:
            handle.write(payload)


def trajectory_from_values(values, period, origin="ingested"):
    """Index-align a series as ``X_1 .. X_{nT}`` for a declared period.

    Uses ``n = floor(N / T)`` and truncates trailing observations so the
    length is an exact multiple; the first observation plays X_1 (the
    pre-sample X_0 is taken as 0).
    """
    values = np.asarray(getattr(values, "values", values), dtype=float)
    period = int(period)
    if period < 1:
        raise ValueError("period must be positive")
    n = len(values) // period
    if n < 1:
        raise ValueError(f"series of length {len(values)} shorter than one period")
    return Trajectory(
        values=values[: n * period], n=n, period=period, seed=None, origin=origin
    )


@dataclass
class Decomposition:
    """Additive split ``values = trend + seasonal + residual``."""

    residual: np.ndarray
    trend: np.ndarray
    seasonal: np.ndarray
    seasonal_profile: np.ndarray
    period: int
    trend_window: int


def deseasonalize(series, period, trend_window=None):
    """Remove an additive trend and seasonal component from a series.

    The trend is a centred moving average of width ``trend_window``
    (default ``2 * period + 1``, must be odd); indices near the edges
    use shrunken one-sided windows.  The seasonal profile holds
    per-phase means of the detrended values over the interior (indices
    where the full window fits), recentred to sum to zero over one
    period with the recentring constant folded into the trend, so the
    per-phase means of the residual vanish identically.

    Requires ``len(series) >= 3 * period``.  Returns a
    :class:`Decomposition`; its ``residual`` feeds the coefficient
    estimator.

    A short trend window absorbs part of the autoregressive signal
    itself and biases downstream coefficient estimates toward zero;
    when the residual dynamics matter, choose ``trend_window`` well
    above the correlation length of the process.
    """
    values = np.asarray(getattr(series, "values", series), dtype=float)
    N = len(values)
    period = int(period)
    if period <= 0:
        raise ValueError("period must be positive")
    if N < 3 * period:
        raise ValueError(
            f"series of length {N} too short for period {period}; need >= {3 * period}"
        )
    if trend_window is None:
        trend_window = 2 * period + 1
    trend_window = int(trend_window)
    if trend_window < 3 or trend_window % 2 == 0:
        raise ValueError("trend_window must be an odd integer >= 3")
    half = trend_window // 2

    csum = np.concatenate([[0.0], np.cumsum(values)])
    idx = np.arange(N)
    lo = np.maximum(idx - half, 0)
    hi = np.minimum(idx + half + 1, N)
    trend = (csum[hi] - csum[lo]) / (hi - lo)

    detrended = values - trend
    interior = np.zeros(N, dtype=bool)
    interior[half : N - half] = True
    phases = idx % period
    profile = np.empty(period)
    for phi in range(period):
        sel = interior & (phases == phi)
        if not np.any(sel):
            raise ValueError(
                f"phase {phi} has no interior observations; "
                "shrink trend_window or supply more data"
            )
        profile[phi] = float(np.mean(detrended[sel]))
    centre = float(np.mean(profile))
    seasonal_profile = profile - centre
    residual = detrended - profile[phases]
    return Decomposition(
        residual=residual,
        trend=trend + centre,
        seasonal=seasonal_profile[phases],
        seasonal_profile=seasonal_profile,
        period=period,
        trend_window=trend_window,
    )
