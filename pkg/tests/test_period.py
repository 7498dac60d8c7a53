"""Cross-validation period estimation."""

import numpy as np
import pytest

from tvpar import CoefficientFamily, NoiseModel, epanechnikov, simulate
from tvpar.mise import benchmark_family
from tvpar.period import cv_period

KE = epanechnikov()


def test_t_max_one_is_trivial():
    traj = simulate(CoefficientFamily.constant([0.3]), NoiseModel.gaussian(1.0), 100, seed=1)
    scan = cv_period(traj.values, 1, KE)
    assert scan.t_hat == 1
    assert len(scan.cv) == 1
    assert scan.cv[0] >= 0.0


def test_length_guard():
    with pytest.raises(ValueError, match="too short"):
        cv_period(np.zeros(50), 6, KE)
    with pytest.raises(ValueError):
        cv_period(np.zeros(100), 0, KE)


def test_recovers_the_true_period():
    fam = benchmark_family("cosine")
    noise = NoiseModel.gaussian(4.0)
    hits = 0
    for r in range(20):
        traj = simulate(fam, noise, 1000, seed=(606, r))
        hits += cv_period(traj.values, 6, KE).t_hat == 2
    assert hits >= 19


def test_white_noise_prefers_period_one():
    zeros = CoefficientFamily.constant([0.0])
    noise = NoiseModel.gaussian(1.0)
    hits = 0
    for r in range(20):
        traj = simulate(zeros, noise, 2000, seed=(707, r))
        hits += cv_period(traj.values, 6, KE).t_hat == 1
    assert hits >= 17


def test_cv_direction_separates_right_and_wrong_candidates():
    # the true period scores below its neighbours on average
    fam = benchmark_family("cosine")
    noise = NoiseModel.gaussian(4.0)
    cvs = []
    for r in range(15):
        traj = simulate(fam, noise, 1000, seed=(808, r))
        cvs.append(cv_period(traj.values, 3, KE).cv)
    mean_cv = np.mean(cvs, axis=0)
    assert mean_cv[1] < mean_cv[0]
    assert mean_cv[1] < mean_cv[2]


def test_styles_and_margins():
    fam = benchmark_family("cosine")
    traj = simulate(fam, NoiseModel.gaussian(4.0), 500, seed=4)
    loo = cv_period(traj.values, 4, KE, cv_style="loo")
    full = cv_period(traj.values, 4, KE, cv_style="full")
    alias = cv_period(traj.values, 4, KE, cv_style="paper")
    assert not np.array_equal(loo.cv, full.cv)
    assert np.array_equal(alias.cv, full.cv)
    assert alias.cv_style == "full"
    literal = cv_period(traj.values, 4, KE, tie_margin=0.0)
    assert literal.t_hat == int(np.argmin(literal.cv)) + 1
    with pytest.raises(ValueError):
        cv_period(traj.values, 4, KE, cv_style="other")
    with pytest.raises(ValueError):
        cv_period(traj.values, 4, KE, tie_margin=-0.1)


def test_degenerate_predictions_fall_back_to_zero_and_count():
    values = np.zeros(300)
    scan = cv_period(values, 3, KE)
    assert np.all(scan.cv == 0.0)
    assert np.all(scan.fallback_counts > 0)
    assert scan.t_hat == 1


def test_scan_invariants():
    fam = benchmark_family("cosine")
    traj = simulate(fam, NoiseModel.gaussian(4.0), 400, seed=5)
    scan = cv_period(traj.values, 5, KE)
    assert np.all(scan.cv >= 0.0)
    assert 1 <= scan.t_hat <= 5
    assert scan.cv[scan.t_hat - 1] <= (1 + scan.tie_margin) * scan.cv.min()
