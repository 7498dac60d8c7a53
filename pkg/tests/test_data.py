"""CSV ingestion, serialisation round-trips, decomposition and diagnostics."""

import io
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from tvpar import (
    CoefficientFamily,
    NoiseModel,
    deseasonalize,
    ingest_csv,
    jarque_bera,
    simulate,
    trajectory_from_values,
    write_trajectory_csv,
)
from tvpar.rng import derive_rng


# ------------------------------------------------------------- ingestion

def test_ingest_two_row_file(tmp_path):
    path = tmp_path / "tiny.csv"
    path.write_text("t,x\n1,0.5\n2,-0.3\n")
    series = ingest_csv(path)
    assert_array_equal(series.values, [0.5, -0.3])
    assert_array_equal(series.times, [1.0, 2.0])
    assert series.dropped_rows == ()


def test_ingest_header_only_is_empty_series(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("t,x\n")
    with pytest.raises(ValueError, match="empty series"):
        ingest_csv(path)


def test_ingest_reports_malformed_lines(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("t,x\n1,0.5\n2,oops\n3,\n4,1.0\n")
    with pytest.raises(ValueError, match=r"lines \[3, 4\]"):
        ingest_csv(path)


def test_ingest_rejects_duplicate_and_decreasing_times(tmp_path):
    dup = tmp_path / "dup.csv"
    dup.write_text("t,x\n1,0.5\n1,0.6\n")
    with pytest.raises(ValueError, match="duplicate"):
        ingest_csv(dup)
    dec = tmp_path / "dec.csv"
    dec.write_text("t,x\n2,0.5\n1,0.6\n")
    with pytest.raises(ValueError, match="strictly increasing"):
        ingest_csv(dec)


def test_ingest_requires_mapped_columns(tmp_path):
    path = tmp_path / "cols.csv"
    path.write_text("time,value\n1,0.5\n2,0.6\n")
    with pytest.raises(ValueError, match="lacks required columns"):
        ingest_csv(path)
    series = ingest_csv(path, mapping=("time", "value"))
    assert len(series) == 2


def test_ingest_skips_and_counts_blank_lines(tmp_path):
    path = tmp_path / "blank.csv"
    path.write_text("t,x\n1,0.5\n\n2,0.6\n")
    series = ingest_csv(path)
    assert len(series) == 2
    assert series.dropped_rows == (3,)


def test_trajectory_round_trip_is_bitwise(tmp_path):
    fam = CoefficientFamily.constant([0.5, 0.3])
    traj = simulate(fam, NoiseModel.student_t(3.0), 250, seed=77)
    path = tmp_path / "traj.csv"
    write_trajectory_csv(traj, path)
    series = ingest_csv(path)
    assert_array_equal(series.values, traj.values)
    raw = path.read_bytes()
    assert b"\r\n" not in raw
    assert raw.startswith(b"t,x\n")


def test_write_accepts_stream_and_plain_arrays():
    buf = io.StringIO()
    write_trajectory_csv(np.array([1.0, -2.0]), buf)
    assert buf.getvalue() == "t,x\n1,1\n2,-2\n"


def test_trajectory_from_values_truncates_to_whole_periods():
    traj = trajectory_from_values(np.arange(10, dtype=float), 3)
    assert traj.n == 3
    assert traj.period == 3
    assert len(traj.values) == 9
    assert traj.origin == "ingested"
    with pytest.raises(ValueError):
        trajectory_from_values(np.arange(2, dtype=float), 3)


# --------------------------------------------------------- decomposition

def test_deseasonalize_removes_pure_seasonal_pattern():
    pattern = np.array([3.0, -1.0, 0.5, 1.5])
    x = np.tile(pattern, 50)
    dec = deseasonalize(x, 4)
    half = dec.trend_window // 2
    interior = slice(half, len(x) - half)
    assert np.max(np.abs(dec.residual[interior])) < 1e-8
    assert abs(dec.seasonal_profile.sum()) < 1e-12
    assert_allclose(dec.trend + dec.seasonal + dec.residual, x, atol=1e-12)


def test_deseasonalize_reproduces_linear_trend_in_the_interior():
    x = np.arange(600, dtype=float)
    dec = deseasonalize(x, 12)
    half = dec.trend_window // 2
    interior = slice(half, len(x) - half)
    assert np.max(np.abs(dec.residual[interior])) < 1e-6
    assert np.max(np.abs(dec.trend[interior] - x[interior])) < 1e-6


def test_deseasonalize_residual_phase_means_vanish():
    rng = derive_rng(5)
    x = rng.standard_normal(700) + np.tile(np.arange(7.0), 100) + 0.01 * np.arange(700)
    dec = deseasonalize(x, 7)
    half = dec.trend_window // 2
    interior = np.zeros(len(x), dtype=bool)
    interior[half : len(x) - half] = True
    phases = np.arange(len(x)) % 7
    for phi in range(7):
        sel = interior & (phases == phi)
        assert abs(dec.residual[sel].mean()) < 1e-10


def test_deseasonalize_input_validation():
    with pytest.raises(ValueError, match="too short"):
        deseasonalize(np.zeros(20), 12)
    with pytest.raises(ValueError):
        deseasonalize(np.zeros(100), 0)
    with pytest.raises(ValueError, match="odd"):
        deseasonalize(np.zeros(100), 5, trend_window=10)


# ------------------------------------------------------------ diagnostics

def test_jarque_bera_two_point_closed_form():
    # symmetric +-1 sample: skew 0, kurtosis 1, JB = m/6
    values = np.tile([1.0, -1.0], 50)
    res = jarque_bera(values)
    assert res.statistic == pytest.approx(len(values) / 6.0)
    assert res.p_value == pytest.approx(math.exp(-res.statistic / 2.0), rel=1e-6)
    assert res.sample_size == 100


def test_jarque_bera_input_validation():
    with pytest.raises(ValueError, match="zero variance"):
        jarque_bera(np.ones(50))
    with pytest.raises(ValueError, match="at least 8"):
        jarque_bera(np.arange(5.0))


def test_jarque_bera_detects_heavy_skew():
    z = derive_rng(9).standard_normal(10_000)
    res = jarque_bera(np.exp(z))
    assert res.p_value < 1e-6


def test_jarque_bera_size_on_gaussian_data():
    # at 1e6 draws the chi-squared null is accurate; rejection near 5%
    rng = derive_rng(23)
    rejections = sum(
        jarque_bera(rng.standard_normal(1_000_000)).p_value < 0.05 for _ in range(100)
    )
    assert 1 <= rejections <= 12


def test_jarque_bera_p_values_spread_over_unit_interval():
    rng = derive_rng(29)
    p = np.array([jarque_bera(rng.standard_normal(20_000)).p_value for _ in range(100)])
    assert p.min() >= 0.0 and p.max() <= 1.0
    assert np.mean(p > 0.5) > 0.25  # roughly uniform, not collapsed at 0
