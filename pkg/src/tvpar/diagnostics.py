"""Normality diagnostics for estimator output and residuals."""

from dataclasses import dataclass

import numpy as np
from scipy.stats import chi2

__all__ = ["JarqueBeraResult", "jarque_bera"]


@dataclass(frozen=True)
class JarqueBeraResult:
    """Jarque-Bera statistic with its chi-squared(2) tail probability."""

    statistic: float
    p_value: float
    sample_size: int


def jarque_bera(values):
    """Jarque-Bera normality test from sample skewness and kurtosis.

    ``JB = m/6 (S^2 + (K - 3)^2 / 4)`` with population-style moment
    estimates over the ``m`` values; the p-value is the chi-squared(2)
    upper tail.  Requires at least 8 values and non-constant input.
    """
    values = np.asarray(values, dtype=float)
    m = len(values)
    if m < 8:
        raise ValueError(f"need at least 8 values, got {m}")
    centred = values - np.mean(values)
    variance = float(np.mean(centred**2))
    if variance <= 0.0:
        raise ValueError("zero variance input")
    skew = float(np.mean(centred**3)) / variance**1.5
    kurt = float(np.mean(centred**4)) / variance**2
    jb = m / 6.0 * (skew**2 + 0.25 * (kurt - 3.0) ** 2)
    return JarqueBeraResult(
        statistic=jb,
        p_value=float(chi2.sf(jb, df=2)),
        sample_size=m,
    )
