"""Bandwidth scanning and the Monte-Carlo experiment harness.

The experiment protocol: for each simulated replication, estimate every
season on the 99-point grid at each bandwidth ``b_n = n^{-lambda}`` over
a grid of exponents, form the per-season empirical MISE against the true
coefficients, pick the exponent minimising the season-summed root MISE,
and aggregate the chosen exponents and attained root-MISE values over
replications.

Replication ``r`` draws its innovations from an independent Philox
stream keyed by ``(master_seed, r)``, and reductions run in replication
order, so reports are bit-identical across runs regardless of worker
count.  Internally the harness simulates replications in fixed-size
chunks and evaluates all bandwidths with one weight-matrix product per
season, which keeps desk-scale table reproductions in the minutes range.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .estimator import _DEGENERATE_REL, GRID99, DegenerateDenominator
from .kernels import effective_window, epanechnikov, gaussian
from .paths import make_test_function
from .process import CoefficientFamily, NoiseModel, _coefficient_path
from .rng import derive_rng

__all__ = [
    "DEFAULT_LAMBDA_GRID",
    "MiseScan",
    "MCConfig",
    "MCReport",
    "mise_scan",
    "monte_carlo",
    "replicated_estimates",
    "benchmark_family",
    "benchmark_configurations",
    "BENCHMARK_KINDS",
]

#: Bandwidth exponents lambda = 0.10, 0.11, ..., 0.80 (b_n = n^-lambda).
DEFAULT_LAMBDA_GRID = np.linspace(0.10, 0.80, 71)

#: Coefficient families of the benchmark tables, ordered by regularity.
BENCHMARK_KINDS = ("cosine", "wiener-integral", "fbm", "wiener")

#: Path seed the benchmark families are frozen at.
DEFAULT_PATH_SEED = 101


@dataclass
class MiseScan:
    """Root-MISE per bandwidth exponent for one replication."""

    lambda_grid: np.ndarray
    root_mise: np.ndarray  # (T, L) per-season sqrt(MISE_s(lambda))
    scores: np.ndarray  # (L,) season-summed root MISE
    lambda_hat: float
    lambda_index: int
    degenerate_cells: np.ndarray  # (L,) counts over all (s, u) cells
    replication: int | None = None


@dataclass
class MCConfig:
    """One Monte-Carlo experiment: model, kernel, sizes and seeding."""

    coeffs: CoefficientFamily
    noise: NoiseModel
    kernel: object
    n: int
    replications: int
    master_seed: int
    lambda_grid: np.ndarray | None = None
    grid_u: np.ndarray | None = None
    chunk_size: int = 128
    workers: int = 1


@dataclass
class MCReport:
    """Aggregates of one Monte-Carlo experiment.

    ``lambda_bar`` is the mean chosen exponent, ``mean_root_mise`` the
    mean attained season-summed root MISE, both with standard errors
    over replications.  Per-replication values are retained for
    histograms and diagnostics.  Bitwise reproducible from
    ``master_seed``.
    """

    n: int
    period: int
    coeff_label: str
    noise_label: str
    kernel_name: str
    replications: int
    master_seed: int
    lambda_bar: float
    lambda_bar_se: float
    mean_root_mise: float
    mean_root_mise_se: float
    dropped: int
    lambda_grid: np.ndarray
    lambda_hats: np.ndarray
    root_mises: np.ndarray

    def to_row(self):
        """Flat representation for CSV emission (table layout)."""
        return {
            "coeffs": self.coeff_label,
            "noise": self.noise_label,
            "kernel": self.kernel_name,
            "n": self.n,
            "period": self.period,
            "replications": self.replications,
            "dropped": self.dropped,
            "lambda_bar": self.lambda_bar,
            "mean_root_mise": self.mean_root_mise,
        }

    def to_json(self):
        """Full representation including SEs and the lambda histogram."""
        kept = self.lambda_hats[~np.isnan(self.lambda_hats)]
        values, counts = np.unique(kept, return_counts=True)
        histogram = {f"{v:.2f}": int(c) for v, c in zip(values, counts)}
        payload = self.to_row()
        payload.update(
            {
                "master_seed": self.master_seed,
                "lambda_bar_se": self.lambda_bar_se,
                "mean_root_mise_se": self.mean_root_mise_se,
                "lambda_histogram": histogram,
            }
        )
        return payload


def _season_positions(n, T, s):
    return (s + T * np.arange(n)) / (n * T)


def _weight_stacks(n, T, grid_u, lambdas, kernel):
    """Scaled kernel weights for all (lambda, u) pairs, one stack per season.

    Element ``stack[s-1][l*m + i, k]`` is
    ``K((pos_k - u_i) / b_l) / (n b_l)`` for the k-th index of season s,
    zeroed outside the kernel's effective window.
    """
    m = len(grid_u)
    bandwidths = n ** (-np.asarray(lambdas, dtype=float))
    stacks = []
    for s in range(1, T + 1):
        pos = _season_positions(n, T, s)
        stack = np.empty((len(bandwidths) * m, n))
        for l, b in enumerate(bandwidths):
            dist = pos[None, :] - grid_u[:, None]
            w = kernel(dist / b)
            w[np.abs(dist) > effective_window(kernel, n, b)] = 0.0
            stack[l * m : (l + 1) * m] = w / (n * b)
        stacks.append(stack)
    return stacks


def _simulate_block(coeffs, noise, n, master_seed, reps, coeff_path):
    """Simulate trajectories for the given replication indices.

    Row ``i`` is bitwise identical to
    ``simulate(coeffs, noise, n, seed=(master_seed, reps[i]))``: each
    replication draws its innovations from its own Philox stream, and
    the recursion is applied columnwise.
    """
    total = n * coeffs.period
    xi = np.empty((len(reps), total))
    for i, r in enumerate(reps):
        xi[i] = noise.sample(derive_rng(master_seed, int(r)), total)
    x = np.empty_like(xi)
    prev = np.zeros(len(reps))
    for t in range(total):
        prev = coeff_path[t] * prev + xi[:, t]
        x[:, t] = prev
    return x


def _block_mise(x, stacks, truth, thr, m, T, n):
    """Per-season MISE over all bandwidths for a block of trajectories.

    Returns ``(mise, degenerate)`` of shapes (T, L, R) and (L, R);
    degenerate cells contribute the squared truth (the penalty an
    estimate stuck at zero would incur) and are counted.
    """
    R = x.shape[0]
    L = stacks[0].shape[0] // m
    xlag = np.empty_like(x)
    xlag[:, 0] = 0.0
    xlag[:, 1:] = x[:, :-1]
    mise = np.empty((T, L, R))
    degenerate = np.zeros((L, R), dtype=int)
    for s in range(1, T + 1):
        js = s + T * np.arange(n)
        xs = x[:, js - 1]
        xl = xlag[:, js - 1]
        y1 = np.ascontiguousarray((xs * xl).T)
        y2 = np.ascontiguousarray((xl * xl).T)
        num = stacks[s - 1] @ y1
        den = stacks[s - 1] @ y2
        ok = den > thr[None, :]
        a_hat = np.where(ok, num / np.where(ok, den, 1.0), 0.0)
        err2 = np.where(
            ok,
            (a_hat - truth[s - 1].reshape(-1, 1)) ** 2,
            truth[s - 1].reshape(-1, 1) ** 2,
        )
        mise[s - 1] = err2.reshape(L, m, R).mean(axis=1)
        degenerate += (~ok).reshape(L, m, R).sum(axis=1)
    return mise, degenerate


def _tile_truth(coeffs, grid_u, lambdas):
    """Truth values per season, tiled over the bandwidth grid: (T, L*m)."""
    T = coeffs.period
    L = len(lambdas)
    truth = np.empty((T, L * len(grid_u)))
    for s in range(1, T + 1):
        truth[s - 1] = np.tile(np.asarray(coeffs(s, grid_u)), L)
    return truth


def mise_scan(traj, truth, grid_u=None, lambda_grid=None, kernel=None, replication=None):
    """Scan bandwidth exponents against known truth for one trajectory.

    For each ``lambda`` on the grid, sets ``b_n = n^-lambda``, estimates
    every season over ``grid_u`` and forms
    ``MISE_s(lambda) = mean_i (a_hat_s(u_i) - a_s(u_i))^2`` with
    degenerate cells contributing the squared truth.  ``lambda_hat``
    minimises the season-summed root MISE (smallest exponent on ties).
    Only meaningful in simulation studies where ``truth`` is available.
    """
    if kernel is None:
        raise ValueError("kernel is required")
    grid_u = GRID99 if grid_u is None else np.atleast_1d(np.asarray(grid_u, dtype=float))
    lambdas = (
        DEFAULT_LAMBDA_GRID
        if lambda_grid is None
        else np.atleast_1d(np.asarray(lambda_grid, dtype=float))
    )
    n, T = traj.n, traj.period
    if truth.period != T:
        raise ValueError("truth period does not match the trajectory")
    m = len(grid_u)
    stacks = _weight_stacks(n, T, grid_u, lambdas, kernel)
    truth_vals = _tile_truth(truth, grid_u, lambdas)
    thr = np.array([_DEGENERATE_REL * float(np.mean(traj.values**2))])
    mise, degenerate = _block_mise(
        traj.values[None, :], stacks, truth_vals, thr, m, T, n
    )
    degenerate = degenerate[:, 0]
    if np.all(degenerate > 0.5 * T * m):
        raise DegenerateDenominator(
            "more than half of all cells degenerate at every bandwidth"
        )
    root = np.sqrt(mise[:, :, 0])  # (T, L)
    scores = root.sum(axis=0)
    idx = int(np.argmin(scores))
    return MiseScan(
        lambda_grid=lambdas,
        root_mise=root,
        scores=scores,
        lambda_hat=float(lambdas[idx]),
        lambda_index=idx,
        degenerate_cells=degenerate,
        replication=replication,
    )


def monte_carlo(config):
    """Run seeded replications of simulate -> bandwidth scan and aggregate.

    Deterministic for a fixed ``master_seed`` irrespective of
    ``workers`` and chunking: replication streams are keyed by index and
    the reduction order is fixed.  A replication is dropped (and
    counted) only when more than half of its cells are degenerate at
    every bandwidth.
    """
    R = int(config.replications)
    if R < 1:
        raise ValueError("at least one replication is required")
    coeffs, noise, kernel = config.coeffs, config.noise, config.kernel
    n, T = int(config.n), coeffs.period
    grid_u = (
        GRID99
        if config.grid_u is None
        else np.atleast_1d(np.asarray(config.grid_u, dtype=float))
    )
    lambdas = (
        DEFAULT_LAMBDA_GRID
        if config.lambda_grid is None
        else np.atleast_1d(np.asarray(config.lambda_grid, dtype=float))
    )
    m = len(grid_u)
    stacks = _weight_stacks(n, T, grid_u, lambdas, kernel)
    truth_vals = _tile_truth(coeffs, grid_u, lambdas)
    coeff_path = _coefficient_path(coeffs, n)

    lambda_hats = np.full(R, np.nan)
    root_mises = np.full(R, np.nan)
    dropped = np.zeros(R, dtype=bool)
    chunk = max(1, int(config.chunk_size))
    blocks = [np.arange(lo, min(lo + chunk, R)) for lo in range(0, R, chunk)]

    def run_block(reps):
        x = _simulate_block(coeffs, noise, n, config.master_seed, reps, coeff_path)
        thr = _DEGENERATE_REL * np.mean(x**2, axis=1)
        mise, degenerate = _block_mise(x, stacks, truth_vals, thr, m, T, n)
        scores = np.sqrt(mise).sum(axis=0)  # (L, R)
        idx = np.argmin(scores, axis=0)
        cols = np.arange(len(reps))
        bad = np.all(degenerate > 0.5 * T * m, axis=0)
        lambda_hats[reps] = np.where(bad, np.nan, lambdas[idx])
        root_mises[reps] = np.where(bad, np.nan, scores[idx, cols])
        dropped[reps] = bad

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=int(config.workers)) as pool:
            list(pool.map(run_block, blocks))
    else:
        for reps in blocks:
            run_block(reps)

    kept = ~dropped
    n_kept = int(kept.sum())
    if n_kept == 0:
        raise DegenerateDenominator("every replication was dropped as degenerate")

    def _mean_se(values):
        mean = float(np.mean(values))
        se = float(np.std(values, ddof=1) / math.sqrt(len(values))) if len(values) > 1 else math.nan
        return mean, se

    lambda_bar, lambda_se = _mean_se(lambda_hats[kept])
    mise_bar, mise_se = _mean_se(root_mises[kept])
    return MCReport(
        n=n,
        period=T,
        coeff_label=coeffs.label or repr(coeffs),
        noise_label=noise.label(),
        kernel_name=kernel.name,
        replications=R,
        master_seed=int(config.master_seed),
        lambda_bar=lambda_bar,
        lambda_bar_se=lambda_se,
        mean_root_mise=mise_bar,
        mean_root_mise_se=mise_se,
        dropped=int(dropped.sum()),
        lambda_grid=lambdas,
        lambda_hats=lambda_hats,
        root_mises=root_mises,
    )


def replicated_estimates(coeffs, noise, n, b_n, kernel, u_points, replications, master_seed, chunk_size=256):
    """Coefficient estimates at fixed points over seeded replications.

    Returns an array of shape ``(replications, T, len(u_points))``
    holding ``a_hat_s(u)`` per replication, with NaN for degenerate
    cells.  Replication ``r`` uses the stream ``(master_seed, r)``,
    matching :func:`monte_carlo` and ``simulate(..., seed=(m, r))``.
    Used by sampling-distribution studies (normality, coverage, bias,
    test size and power) that need many independent estimates at a few
    points.
    """
    u = np.atleast_1d(np.asarray(u_points, dtype=float))
    if np.any((u <= 0.0) | (u >= 1.0)):
        raise ValueError("evaluation points must lie strictly inside (0, 1)")
    n = int(n)
    T = coeffs.period
    b_n = float(b_n)
    m = len(u)
    weights = []
    for s in range(1, T + 1):
        pos = _season_positions(n, T, s)
        dist = pos[None, :] - u[:, None]
        w = kernel(dist / b_n)
        w[np.abs(dist) > effective_window(kernel, n, b_n)] = 0.0
        weights.append(w / (n * b_n))
    coeff_path = _coefficient_path(coeffs, n)
    R = int(replications)
    out = np.full((R, T, m), np.nan)
    for lo in range(0, R, int(chunk_size)):
        reps = np.arange(lo, min(lo + chunk_size, R))
        x = _simulate_block(coeffs, noise, n, master_seed, reps, coeff_path)
        thr = _DEGENERATE_REL * np.mean(x**2, axis=1)
        xlag = np.empty_like(x)
        xlag[:, 0] = 0.0
        xlag[:, 1:] = x[:, :-1]
        for s in range(1, T + 1):
            js = s + T * np.arange(n)
            xs = x[:, js - 1]
            xl = xlag[:, js - 1]
            num = weights[s - 1] @ np.ascontiguousarray((xs * xl).T)
            den = weights[s - 1] @ np.ascontiguousarray((xl * xl).T)
            ok = den > thr[None, :]
            out[reps, s - 1, :] = np.where(ok, num / np.where(ok, den, 1.0), np.nan).T
    return out


def benchmark_family(kind, T=2, path_seed=DEFAULT_PATH_SEED, hurst=0.8):
    """One of the four benchmark coefficient families at a frozen path seed."""
    if kind not in BENCHMARK_KINDS:
        raise ValueError(f"unknown benchmark kind {kind!r}; choose from {BENCHMARK_KINDS}")
    offset = BENCHMARK_KINDS.index(kind)
    return make_test_function(kind, T=T, seed=path_seed + offset, hurst=hurst)


def benchmark_configurations(
    n,
    replications,
    master_seed,
    kinds=BENCHMARK_KINDS,
    kernels=None,
    noises=None,
    T=2,
    path_seed=DEFAULT_PATH_SEED,
):
    """The benchmark grid: coefficient kinds x kernels x noise laws.

    Defaults reproduce the full table protocol: four regularity classes,
    Epanechnikov and Gaussian kernels, N(0, 4) and Student t(3)
    innovations, period 2.
    """
    if kernels is None:
        kernels = (epanechnikov(), gaussian())
    if noises is None:
        noises = (NoiseModel.gaussian(4.0), NoiseModel.student_t(3.0))
    configs = []
    for kind in kinds:
        coeffs = benchmark_family(kind, T=T, path_seed=path_seed)
        for noise in noises:
            for kernel in kernels:
                configs.append(
                    MCConfig(
                        coeffs=coeffs,
                        noise=noise,
                        kernel=kernel,
                        n=n,
                        replications=replications,
                        master_seed=master_seed,
                    )
                )
    return configs
