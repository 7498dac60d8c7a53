"""tvpar: simulation and kernel estimation for periodic time-varying AR(1) processes."""

from .analyze import analyze
from .data import (
    Decomposition,
    SeriesFile,
    deseasonalize,
    ingest_csv,
    trajectory_from_values,
    write_trajectory_csv,
)
from .diagnostics import JarqueBeraResult, jarque_bera
from .estimator import (
    GRID99,
    DegenerateDenominator,
    EstimateGrid,
    TestResult,
    asymptotic_ci,
    bias_mu,
    estimate,
    estimate_grid,
    test_statistic,
)
from .kernels import KernelModel, effective_window, epanechnikov, gaussian
from .mise import (
    DEFAULT_LAMBDA_GRID,
    MCConfig,
    MCReport,
    MiseScan,
    benchmark_configurations,
    benchmark_family,
    mise_scan,
    monte_carlo,
)
from .paths import fbm_path, make_test_function
from .period import PeriodScan, cv_period
from .process import (
    CoefficientFamily,
    FourthMomentUnavailable,
    MomentProfile,
    NoiseModel,
    Trajectory,
    covariance_decay_bound,
    simulate,
    theoretical_gamma2,
    theoretical_gamma4,
)

__version__ = "0.1.0"

__all__ = [
    "CoefficientFamily",
    "NoiseModel",
    "Trajectory",
    "MomentProfile",
    "FourthMomentUnavailable",
    "simulate",
    "theoretical_gamma2",
    "theoretical_gamma4",
    "covariance_decay_bound",
    "KernelModel",
    "epanechnikov",
    "gaussian",
    "effective_window",
    "DegenerateDenominator",
    "EstimateGrid",
    "TestResult",
    "GRID99",
    "estimate",
    "estimate_grid",
    "asymptotic_ci",
    "bias_mu",
    "test_statistic",
    "DEFAULT_LAMBDA_GRID",
    "MiseScan",
    "MCConfig",
    "MCReport",
    "mise_scan",
    "monte_carlo",
    "benchmark_family",
    "benchmark_configurations",
    "PeriodScan",
    "cv_period",
    "fbm_path",
    "make_test_function",
    "SeriesFile",
    "Decomposition",
    "ingest_csv",
    "write_trajectory_csv",
    "trajectory_from_values",
    "deseasonalize",
    "JarqueBeraResult",
    "jarque_bera",
    "analyze",
    "__version__",
]
