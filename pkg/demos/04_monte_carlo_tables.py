"""Replicated bandwidth experiments in the benchmark table layout.

For each coefficient family, kernel and noise law, many independent
trajectories are simulated; each replication picks its own best
bandwidth exponent and the chosen exponents and attained root-MISE
values are averaged.  This reproduces the benchmark table protocol at a
reduced replication count (R=100 here; the acceptance suite runs the
full R=1000 column).  Reports are bit-reproducible from the master
seed.
"""

import json
from pathlib import Path

from tvpar import NoiseModel, epanechnikov, gaussian, monte_carlo
from tvpar.mise import MCConfig, benchmark_family

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

R = 100
MASTER = 2024
rows = []
print(f"{'family':18s}{'noise':14s}{'kernel':14s}{'n':>6s}{'lambda_bar':>12s}{'root-MISE':>11s}")
for kind in ("cosine", "wiener-integral", "fbm", "wiener"):
    family = benchmark_family(kind)
    for noise in (NoiseModel.gaussian(4.0), NoiseModel.student_t(3.0)):
        for kernel in (epanechnikov(), gaussian()):
            for n in (200, 1000):
                report = monte_carlo(
                    MCConfig(
                        coeffs=family,
                        noise=noise,
                        kernel=kernel,
                        n=n,
                        replications=R,
                        master_seed=MASTER,
                    )
                )
                rows.append(report)
                print(
                    f"{kind:18s}{noise.label():14s}{kernel.name:14s}{n:6d}"
                    f"{report.lambda_bar:12.3f}{report.mean_root_mise:11.4f}"
                )

dest = OUT / "monte_carlo_table.csv"
with open(dest, "w", encoding="utf-8") as handle:
    header = list(rows[0].to_row())
    handle.write(",".join(header) + "\n")
    for report in rows:
        handle.write(",".join(str(v) for v in report.to_row().values()) + "\n")
sidecar = OUT / "monte_carlo_table.json"
sidecar.write_text(
    json.dumps([r.to_json() for r in rows], indent=2, sort_keys=True) + "\n",
    encoding="utf-8",
)
print(f"\nwrote {dest} and {sidecar}")
print("Gaussian vs Student t(3): the attained accuracy differs only mildly;")
print("the ratio estimator normalises heavy-tailed fluctuations away.")
