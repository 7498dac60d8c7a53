"""Bandwidth scan mechanics and the Monte-Carlo harness."""

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

import tvpar
from tvpar import (
    CoefficientFamily,
    DegenerateDenominator,
    NoiseModel,
    Trajectory,
    epanechnikov,
    estimate_grid,
    mise_scan,
    monte_carlo,
    simulate,
)
from tvpar.mise import (
    BENCHMARK_KINDS,
    DEFAULT_LAMBDA_GRID,
    MCConfig,
    benchmark_configurations,
    benchmark_family,
    replicated_estimates,
)

KE = epanechnikov()


def test_default_lambda_grid_matches_protocol():
    assert len(DEFAULT_LAMBDA_GRID) == 71
    assert DEFAULT_LAMBDA_GRID[0] == pytest.approx(0.10)
    assert DEFAULT_LAMBDA_GRID[-1] == pytest.approx(0.80)
    assert np.allclose(np.diff(DEFAULT_LAMBDA_GRID), 0.01)


def test_mise_scan_matches_manual_recomputation():
    fam = benchmark_family("cosine")
    noise = NoiseModel.gaussian(4.0)
    traj = simulate(fam, noise, 200, seed=17)
    lambdas = np.array([0.2, 0.4, 0.6])
    scan = mise_scan(traj, fam, lambda_grid=lambdas, kernel=KE)
    assert np.all(scan.root_mise >= 0.0)
    for li, lam in enumerate(lambdas):
        grid = estimate_grid(traj, None, 200 ** (-lam), KE)
        truth = np.array([fam(s, grid.grid) for s in (1, 2)])
        err2 = np.where(
            np.isnan(grid.estimates), truth**2, (grid.estimates - truth) ** 2
        )
        assert_allclose(scan.root_mise[:, li], np.sqrt(err2.mean(axis=1)), rtol=1e-10)
    assert scan.lambda_index == np.argmin(scan.scores)
    assert scan.lambda_hat == lambdas[scan.lambda_index]


def test_mise_on_pure_noise_equals_mean_squared_estimate():
    zeros = CoefficientFamily.constant([0.0])
    traj = simulate(zeros, NoiseModel.gaussian(1.0), 500, seed=23)
    scan = mise_scan(traj, zeros, lambda_grid=[0.3], kernel=KE)
    grid = estimate_grid(traj, None, 500 ** (-0.3), KE)
    assert scan.root_mise[0, 0] ** 2 == pytest.approx(
        np.nanmean(grid.estimates**2), rel=1e-10
    )


def test_mise_scan_tie_breaks_to_the_smallest_lambda():
    fam = benchmark_family("cosine")
    traj = simulate(fam, NoiseModel.gaussian(4.0), 200, seed=29)
    # duplicated exponent gives bitwise-equal scores; the first (smallest
    # index) must win
    scan = mise_scan(traj, fam, lambda_grid=[0.25, 0.25, 0.6], kernel=KE)
    assert scan.scores[0] == scan.scores[1]
    assert scan.lambda_index == 0


def test_mise_scan_rejects_fully_degenerate_input():
    traj = Trajectory(values=np.zeros(200), n=100, period=2, origin="ingested")
    with pytest.raises(DegenerateDenominator):
        mise_scan(traj, benchmark_family("cosine"), kernel=KE)


def test_single_replication_lambda_in_plausible_range():
    fam = benchmark_family("cosine")
    traj = simulate(fam, NoiseModel.gaussian(4.0), 1000, seed=100)
    scan = mise_scan(traj, fam, kernel=KE)
    assert 0.15 <= scan.lambda_hat <= 0.35


def test_monte_carlo_single_replication_equals_scan():
    fam = benchmark_family("cosine")
    noise = NoiseModel.gaussian(4.0)
    report = monte_carlo(
        MCConfig(coeffs=fam, noise=noise, kernel=KE, n=200, replications=1, master_seed=55)
    )
    traj = simulate(fam, noise, 200, seed=(55, 0))
    scan = mise_scan(traj, fam, kernel=KE)
    assert report.lambda_bar == scan.lambda_hat
    assert report.mean_root_mise == pytest.approx(
        scan.scores[scan.lambda_index], rel=1e-12
    )
    assert np.isnan(report.lambda_bar_se)
    assert report.replications == 1
    assert report.dropped == 0


def test_monte_carlo_deterministic_across_worker_counts():
    fam = benchmark_family("cosine")
    noise = NoiseModel.gaussian(4.0)
    kwargs = dict(coeffs=fam, noise=noise, kernel=KE, n=200, replications=60, master_seed=7)
    r1 = monte_carlo(MCConfig(**kwargs, workers=1))
    r4 = monte_carlo(MCConfig(**kwargs, workers=4))
    assert r1.lambda_bar == r4.lambda_bar
    assert r1.mean_root_mise == r4.mean_root_mise
    assert_array_equal(r1.lambda_hats, r4.lambda_hats)
    assert_array_equal(r1.root_mises, r4.root_mises)


def test_monte_carlo_report_round_trip_fields():
    fam = benchmark_family("wiener")
    report = monte_carlo(
        MCConfig(
            coeffs=fam,
            noise=NoiseModel.student_t(3.0),
            kernel=KE,
            n=100,
            replications=10,
            master_seed=3,
        )
    )
    row = report.to_row()
    assert row["kernel"] == "epanechnikov"
    assert row["noise"] == "student_t(3)"
    assert row["n"] == 100
    payload = report.to_json()
    assert payload["master_seed"] == 3
    assert sum(payload["lambda_histogram"].values()) == 10
    assert report.lambda_grid[0] == pytest.approx(0.10)


def test_monte_carlo_rejects_zero_replications():
    fam = benchmark_family("cosine")
    with pytest.raises(ValueError):
        monte_carlo(
            MCConfig(
                coeffs=fam,
                noise=NoiseModel.gaussian(4.0),
                kernel=KE,
                n=100,
                replications=0,
                master_seed=1,
            )
        )


def test_replicated_estimates_matches_pointwise_estimator():
    fam = benchmark_family("cosine")
    noise = NoiseModel.gaussian(4.0)
    est = replicated_estimates(fam, noise, 300, 0.12, KE, [0.3, 0.7], 3, master_seed=91)
    traj = simulate(fam, noise, 300, seed=(91, 2))
    for s in (1, 2):
        for j, u in enumerate((0.3, 0.7)):
            a_hat, _, _ = tvpar.estimate(traj, s, u, 0.12, KE)
            assert est[2, s - 1, j] == pytest.approx(a_hat, rel=1e-12)


def test_benchmark_configurations_cover_the_grid():
    configs = benchmark_configurations(200, 5, master_seed=1)
    assert len(configs) == 16
    labels = {(c.coeffs.label, c.noise.label(), c.kernel.name) for c in configs}
    assert len(labels) == 16
    assert BENCHMARK_KINDS == ("cosine", "wiener-integral", "fbm", "wiener")
    with pytest.raises(ValueError):
        benchmark_family("box")


def _n1000_report(kind, kernel):
    return monte_carlo(
        MCConfig(
            coeffs=benchmark_family(kind),
            noise=NoiseModel.gaussian(4.0),
            kernel=kernel,
            n=1000,
            replications=400,
            master_seed=11,
        )
    )


def test_attained_accuracy_is_kernel_robust():
    # Epanechnikov vs Gaussian kernels land within 15% of each other
    r_e = _n1000_report("cosine", KE)
    r_g = _n1000_report("cosine", tvpar.gaussian())
    rel = abs(r_e.mean_root_mise - r_g.mean_root_mise) / r_e.mean_root_mise
    assert rel < 0.15


def test_accuracy_orders_by_coefficient_regularity():
    # smoother truth is easier: cosine < wiener-integral < wiener at n=1000
    smooth = _n1000_report("cosine", KE).mean_root_mise
    mid = _n1000_report("wiener-integral", KE).mean_root_mise
    rough = _n1000_report("wiener", KE).mean_root_mise
    assert smooth < mid < rough


class _ZeroFirstNoise:
    """Duck-typed noise stub: the first replication draws all zeros."""

    variance = 1.0

    def __init__(self):
        self.calls = 0

    def sample(self, rng, size):
        self.calls += 1
        if self.calls == 1:
            return np.zeros(size)
        return rng.standard_normal(size)

    def label(self):
        return "zero-first"


class _AllZeroNoise:
    variance = 1.0

    def sample(self, rng, size):
        return np.zeros(size)

    def label(self):
        return "all-zero"


def test_monte_carlo_drops_and_counts_degenerate_replications():
    fam = CoefficientFamily.constant([0.5, 0.3])
    report = monte_carlo(
        MCConfig(
            coeffs=fam,
            noise=_ZeroFirstNoise(),
            kernel=KE,
            n=100,
            replications=5,
            master_seed=2,
        )
    )
    assert report.dropped == 1
    assert np.isnan(report.lambda_hats[0])
    assert np.all(np.isfinite(report.lambda_hats[1:]))
    with pytest.raises(DegenerateDenominator, match="every replication"):
        monte_carlo(
            MCConfig(
                coeffs=fam,
                noise=_AllZeroNoise(),
                kernel=KE,
                n=100,
                replications=2,
                master_seed=2,
            )
        )
