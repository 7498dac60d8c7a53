"""End-to-end pipeline for real (or realistic) seasonal series.

Monthly-style data usually carry an additive seasonal pattern and a slow
trend on top of the autoregressive dynamics of interest.  The pipeline:
remove trend and seasonal profile, declare (or detect) the period, then
profile the per-season AR coefficient at a few rescaled times with
confidence intervals, plus a residual normality diagnostic.

Run on your own data with:  python demos/07_seasonal_pipeline.py your.csv
(CSV with header t,x).  Without an argument a synthetic series with
known coefficients is generated so the recovery can be judged.
"""

import sys
from pathlib import Path

import numpy as np

from tvpar import (
    CoefficientFamily,
    NoiseModel,
    analyze,
    deseasonalize,
    epanechnikov,
    ingest_csv,
    jarque_bera,
    simulate,
)
from tvpar.period import cv_period

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)
PERIOD = 12

if len(sys.argv) > 1:
    series = ingest_csv(sys.argv[1]).values
    truth = None
    print(f"loaded {len(series)} observations from {sys.argv[1]}")
else:
    # 120 years of synthetic monthly data: per-month AR coefficients,
    # a seasonal temperature-like profile and a slow warming trend.
    avals = 0.25 + 0.3 * np.cos(2 * np.pi * np.arange(1, 13) / 12)
    family = CoefficientFamily.constant(avals)
    core = simulate(family, NoiseModel.gaussian(1.0), 120, seed=5)
    t = np.arange(len(core.values))
    seasonal = 8.0 * np.sin(2 * np.pi * t / 12)
    trend = 0.0008 * t
    series = core.values + seasonal + trend
    truth = avals
    print(f"synthetic series of {len(series)} monthly observations")

# 1. Remove the additive structure.  The window must stay well above the
#    AR correlation length so the dynamics survive the detrending.
dec = deseasonalize(series, PERIOD, trend_window=121)
print(f"seasonal profile range: [{dec.seasonal_profile.min():+.2f}, "
      f"{dec.seasonal_profile.max():+.2f}]")

# 2. Confirm the period on the residuals.
scan = cv_period(dec.residual, 14, epanechnikov())
print(f"cross-validation period estimate: {scan.t_hat} (declared {PERIOD})")

# 3. Per-season coefficient profile at u = 0.25, 0.50, 0.75.
est = analyze(dec.residual, PERIOD, (0.25, 0.50, 0.75), epanechnikov())
dest = OUT / "seasonal_profile.csv"
with open(dest, "w", encoding="utf-8") as handle:
    handle.write("s,u,a_hat,stderr,ci_lo,ci_hi\n")
    for s in range(1, PERIOD + 1):
        for j, u in enumerate(est.grid):
            handle.write(
                f"{s},{u},{est.estimates[s-1,j]:.5f},{est.stderr[s-1,j]:.5f},"
                f"{est.ci_lower[s-1,j]:.5f},{est.ci_upper[s-1,j]:.5f}\n"
            )
print(f"wrote {dest}")

if truth is not None:
    covered = np.mean(
        (est.ci_lower <= truth[:, None]) & (truth[:, None] <= est.ci_upper)
    )
    print(f"95% intervals cover the true per-month coefficients at "
          f"{covered:.0%} of cells")

# 4. Distributional diagnostic on the residuals.
jb = jarque_bera(dec.residual)
print(f"residual Jarque-Bera: statistic {jb.statistic:.1f}, p = {jb.p_value:.3g}")

print("\nmid-year months persist differently from winter months when the")
print("coefficients vary by season; the profile CSV is plot-ready.")
