"""Detecting an unknown period by cross-validated prediction.

Fitting with the wrong candidate period mixes different seasons into
each coefficient estimate, so one-step prediction deteriorates; scanning
candidates and taking the smallest near-minimiser recovers the period.
White noise has no periodic structure and lands on 1.
"""

from pathlib import Path

from tvpar import CoefficientFamily, NoiseModel, epanechnikov, simulate
from tvpar.mise import benchmark_family
from tvpar.period import cv_period

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)
kernel = epanechnikov()

family = benchmark_family("cosine")  # true period 2
traj = simulate(family, NoiseModel.gaussian(4.0), 1000, seed=3)
scan = cv_period(traj.values, 6, kernel)
print("periodic process (true period 2):")
for tau in range(1, 7):
    marker = "  <- chosen" if tau == scan.t_hat else ""
    print(f"  tau={tau}: CV = {scan.cv[tau - 1]:10.1f}{marker}")

noise_traj = simulate(CoefficientFamily.constant([0.0]), NoiseModel.gaussian(1.0), 2000, seed=4)
noise_scan = cv_period(noise_traj.values, 6, kernel)
print(f"\nwhite noise: chosen period = {noise_scan.t_hat} "
      f"(scores all within {100 * noise_scan.tie_margin:.0f}% of the minimum)")

# Candidate periods that are multiples of the truth also fit; the tie
# margin formalises picking the smallest of the statistically equal ones.
literal = cv_period(traj.values, 6, kernel, tie_margin=0.0)
print(f"\nliteral argmin would have chosen {literal.t_hat}; "
      f"the tie rule chose {scan.t_hat}")

dest = OUT / "period_scan.csv"
with open(dest, "w", encoding="utf-8") as handle:
    handle.write("tau,cv_periodic,cv_white_noise\n")
    for tau in range(1, 7):
        handle.write(f"{tau},{scan.cv[tau-1]:.4f},{noise_scan.cv[tau-1]:.4f}\n")
print(f"wrote {dest}")
