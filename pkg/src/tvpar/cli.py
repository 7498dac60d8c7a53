"""Command-line front end.

Subcommands: ``simulate``, ``estimate``, ``mise-scan``, ``montecarlo``,
``period-cv``, ``test``, ``analyze``.  Tables are emitted as CSV (to
``--output`` or stdout); a JSON summary with the seed and configuration
accompanies each run so results are reproducible from one file.  Every
subcommand is deterministic given ``--seed``; errors exit nonzero with
a machine-readable category on stderr.
"""

import argparse
import json
import sys

import numpy as np

from . import __version__
from .analyze import analyze, default_bandwidth
from .data import deseasonalize, ingest_csv, trajectory_from_values, write_trajectory_csv
from .estimator import DegenerateDenominator, GRID99, asymptotic_ci, estimate_grid, test_statistic
from .kernels import by_name
from .mise import MCConfig, mise_scan, monte_carlo
from .period import cv_period
from .process import FourthMomentUnavailable, NoiseModel, simulate
from .paths import make_test_function

_ERROR_CATEGORIES = (
    (DegenerateDenominator, "degenerate"),
    (FourthMomentUnavailable, "unsupported-moment"),
    (FileNotFoundError, "io"),
    (PermissionError, "io"),
    (ValueError, "invalid-input"),
)


def _parse_noise(spec):
    """Noise spec string: ``gaussian:VAR`` or ``student:DF``."""
    name, _, arg = spec.partition(":")
    name = name.lower()
    if name in ("gaussian", "normal"):
        return NoiseModel.gaussian(float(arg) if arg else 1.0)
    if name in ("student", "student_t", "t"):
        if not arg:
            raise ValueError("student noise needs degrees of freedom, e.g. student:3")
        return NoiseModel.student_t(float(arg))
    raise ValueError(f"unknown noise law {spec!r}; use gaussian:VAR or student:DF")


def _parse_coeffs(spec, period, path_seed, hurst):
    """Coefficient spec: a benchmark kind or ``constant:c1,c2,...``."""
    name, _, arg = spec.partition(":")
    name = name.lower()
    if name == "constant":
        from .process import CoefficientFamily

        values = [float(v) for v in arg.split(",") if v]
        if not values:
            raise ValueError("constant coefficients need values, e.g. constant:0.5,0.3")
        if period is not None and period != len(values):
            raise ValueError(
                f"--period {period} does not match {len(values)} constant coefficients"
            )
        return CoefficientFamily.constant(values)
    if period is None:
        raise ValueError("--period is required for named coefficient families")
    return make_test_function(name, T=period, seed=path_seed, hurst=hurst)


def _parse_u(spec):
    if spec == "grid99":
        return GRID99
    return np.array([float(v) for v in spec.split(",") if v])


def _open_output(args):
    if args.output:
        return open(args.output, "w", newline="", encoding="utf-8"), True
    return sys.stdout, False


def _emit_csv(args, header, rows):
    handle, close = _open_output(args)
    try:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(_fmt(v) for v in row) + "\n")
    finally:
        if close:
            handle.close()


def _fmt(value):
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _emit_summary(args, payload):
    """JSON run summary: stdout normally, stderr when CSV owns stdout."""
    stream = sys.stdout if args.output else sys.stderr
    json.dump(payload, stream, sort_keys=True)
    stream.write("\n")


def _meta(args, **extra):
    payload = {"version": __version__, "seed": getattr(args, "seed", None)}
    payload.update(extra)
    return payload


def _cmd_simulate(args):
    coeffs = _parse_coeffs(args.coeffs, args.period, args.path_seed, args.hurst)
    noise = _parse_noise(args.noise)
    traj = simulate(coeffs, noise, args.n, seed=args.seed)
    handle, close = _open_output(args)
    try:
        write_trajectory_csv(traj, handle)
    finally:
        if close:
            handle.close()
    if args.output:
        _emit_summary(
            args,
            _meta(args, command="simulate", coeffs=coeffs.label, noise=noise.label(),
                  n=args.n, period=coeffs.period, rows=len(traj.values),
                  output=args.output),
        )
    return 0


def _load_trajectory(args):
    series = ingest_csv(args.input)
    return trajectory_from_values(series.values, args.period)


def _cmd_estimate(args):
    kernel = by_name(args.kernel)
    traj = _load_trajectory(args)
    grid = _parse_u(args.u)
    b_n = (
        default_bandwidth(traj.n)
        if args.bandwidth == "auto"
        else float(args.bandwidth)
    )
    est = asymptotic_ci(estimate_grid(traj, grid, b_n, kernel), traj, level=args.ci)
    seasons = (
        range(1, traj.period + 1)
        if args.season == "all"
        else [int(args.season)]
    )
    rows = []
    for s in seasons:
        if not 1 <= s <= traj.period:
            raise ValueError(f"season {s} outside 1..{traj.period}")
        for j, u in enumerate(est.grid):
            rows.append(
                (s, float(u), float(est.estimates[s - 1, j]),
                 float(est.stderr[s - 1, j]), float(est.ci_lower[s - 1, j]),
                 float(est.ci_upper[s - 1, j]))
            )
    _emit_csv(args, ["s", "u", "a_hat", "stderr", "ci_lo", "ci_hi"], rows)
    _emit_summary(
        args,
        _meta(args, command="estimate", input=args.input, period=traj.period,
              n=traj.n, bandwidth=b_n, kernel=kernel.name, ci=args.ci,
              missing_cells=est.missing_cells()),
    )
    return 0


def _cmd_mise_scan(args):
    kernel = by_name(args.kernel)
    traj = _load_trajectory(args)
    truth = _parse_coeffs(args.truth, args.period, args.path_seed, args.hurst)
    scan = mise_scan(traj, truth, kernel=kernel)
    header = ["lambda"] + [f"root_mise_s{s}" for s in range(1, traj.period + 1)] + ["score"]
    rows = []
    for i, lam in enumerate(scan.lambda_grid):
        rows.append(
            (float(lam), *(float(v) for v in scan.root_mise[:, i]), float(scan.scores[i]))
        )
    _emit_csv(args, header, rows)
    _emit_summary(
        args,
        _meta(args, command="mise-scan", input=args.input, truth=truth.label,
              kernel=kernel.name, lambda_hat=scan.lambda_hat,
              degenerate_cells=int(scan.degenerate_cells.sum())),
    )
    return 0


def _read_config_file(path):
    """Plain key=value lines; '#' starts a comment."""
    options = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            options[key.strip().replace("_", "-")] = value.strip()
    return options


def _cmd_montecarlo(args):
    if args.config:
        options = _read_config_file(args.config)
        for key, attr, cast in (
            ("coeffs", "coeffs", str),
            ("noise", "noise", str),
            ("kernel", "kernel", str),
            ("n", "n", int),
            ("period", "period", int),
            ("replications", "replications", int),
            ("seed", "seed", int),
            ("threads", "threads", int),
            ("path-seed", "path_seed", int),
            ("hurst", "hurst", float),
        ):
            if key in options:
                setattr(args, attr, cast(options[key]))
    coeffs = _parse_coeffs(args.coeffs, args.period, args.path_seed, args.hurst)
    noise = _parse_noise(args.noise)
    kernel = by_name(args.kernel)
    report = monte_carlo(
        MCConfig(
            coeffs=coeffs,
            noise=noise,
            kernel=kernel,
            n=args.n,
            replications=args.replications,
            master_seed=args.seed,
            workers=args.threads,
        )
    )
    row = report.to_row()
    _emit_csv(args, list(row), [tuple(row.values())])
    sidecar = _meta(args, command="montecarlo", **report.to_json())
    if args.output:
        with open(args.output + ".json", "w", encoding="utf-8") as handle:
            json.dump(sidecar, handle, sort_keys=True, indent=2)
            handle.write("\n")
    _emit_summary(args, sidecar)
    return 0


def _cmd_period_cv(args):
    kernel = by_name(args.kernel)
    series = ingest_csv(args.input)
    scan = cv_period(series.values, args.t_max, kernel, cv_style=args.cv_style)
    rows = [(tau, float(scan.cv[tau - 1])) for tau in range(1, scan.t_max + 1)]
    _emit_csv(args, ["tau", "cv"], rows)
    _emit_summary(
        args,
        _meta(args, command="period-cv", input=args.input, t_hat=scan.t_hat,
              cv_style=scan.cv_style,
              fallback_predictions=int(scan.fallback_counts.sum())),
    )
    return 0


def _cmd_test(args):
    kernel = by_name(args.kernel)
    traj = _load_trajectory(args)
    b_n = (
        default_bandwidth(traj.n)
        if args.bandwidth == "auto"
        else float(args.bandwidth)
    )
    result = test_statistic(traj, args.season, args.u, args.null, b_n, kernel)
    _emit_csv(
        args,
        ["s", "u", "a_hat", "stderr", "statistic", "p_value", "reject_at_5pct"],
        [
            (args.season, args.u, result.a_hat, result.stderr,
             result.statistic, result.p_value, int(result.reject_at_5pct))
        ],
    )
    _emit_summary(
        args,
        _meta(args, command="test", input=args.input, null=args.null,
              p_value=result.p_value, reject_at_5pct=result.reject_at_5pct),
    )
    return 0


def _cmd_analyze(args):
    kernel = by_name(args.kernel)
    series = ingest_csv(args.input)
    values = series.values
    if args.deseasonalize:
        values = deseasonalize(values, args.period, args.trend_window).residual
    bandwidth = None if args.bandwidth == "auto" else float(args.bandwidth)
    u = _parse_u(args.u)
    est = analyze(values, args.period, u, kernel, bandwidth, level=args.ci)
    rows = []
    for s in range(1, est.period + 1):
        for j, uu in enumerate(est.grid):
            rows.append(
                (s, float(uu), float(est.estimates[s - 1, j]),
                 float(est.stderr[s - 1, j]), float(est.ci_lower[s - 1, j]),
                 float(est.ci_upper[s - 1, j]))
            )
    _emit_csv(args, ["s", "u", "a_hat", "stderr", "ci_lo", "ci_hi"], rows)
    _emit_summary(
        args,
        _meta(args, command="analyze", input=args.input, period=args.period,
              bandwidth=est.b_n, kernel=kernel.name,
              deseasonalized=bool(args.deseasonalize)),
    )
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tvpar",
        description="Periodic time-varying AR(1): simulation, kernel estimation, experiments.",
    )
    parser.add_argument("--version", action="version", version=f"tvpar {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    common.add_argument("--threads", type=int, default=1, help="worker threads")
    common.add_argument("--output", help="output CSV path (default stdout)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common], help="simulate a trajectory to CSV")
    p.add_argument("--coeffs", required=True,
                   help="cosine | wiener | wiener-integral | fbm | constant:c1,c2,...")
    p.add_argument("--period", type=int, help="period T (required for named families)")
    p.add_argument("--noise", default="gaussian:1", help="gaussian:VAR | student:DF")
    p.add_argument("--n", type=int, required=True, help="cycles per season (length = n*T)")
    p.add_argument("--hurst", type=float, default=0.8)
    p.add_argument("--path-seed", type=int, default=101, help="seed of the coefficient path")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("estimate", parents=[common], help="kernel coefficient estimates")
    p.add_argument("--input", required=True)
    p.add_argument("--period", type=int, required=True)
    p.add_argument("--season", default="all", help="season index or 'all'")
    p.add_argument("--u", default="grid99", help="comma list of points or 'grid99'")
    p.add_argument("--bandwidth", default="auto", help="numeric value or 'auto' (n^-1/5)")
    p.add_argument("--kernel", default="epanechnikov", choices=["epanechnikov", "gaussian"])
    p.add_argument("--ci", type=float, default=0.95)
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("mise-scan", parents=[common], help="bandwidth scan against known truth")
    p.add_argument("--input", required=True)
    p.add_argument("--period", type=int, required=True)
    p.add_argument("--truth", required=True, help="coefficient family (same format as simulate --coeffs)")
    p.add_argument("--kernel", default="epanechnikov", choices=["epanechnikov", "gaussian"])
    p.add_argument("--hurst", type=float, default=0.8)
    p.add_argument("--path-seed", type=int, default=101)
    p.set_defaults(func=_cmd_mise_scan)

    p = sub.add_parser("montecarlo", parents=[common], help="replicated bandwidth experiment")
    p.add_argument("--config", help="key=value config file (flags override)")
    p.add_argument("--coeffs", default="cosine")
    p.add_argument("--period", type=int, default=2)
    p.add_argument("--noise", default="gaussian:4")
    p.add_argument("--kernel", default="epanechnikov", choices=["epanechnikov", "gaussian"])
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--replications", type=int, default=100)
    p.add_argument("--hurst", type=float, default=0.8)
    p.add_argument("--path-seed", type=int, default=101)
    p.set_defaults(func=_cmd_montecarlo)

    p = sub.add_parser("period-cv", parents=[common], help="cross-validation period scan")
    p.add_argument("--input", required=True)
    p.add_argument("--t-max", type=int, default=12)
    p.add_argument("--cv-style", default="loo", choices=["loo", "full", "paper"])
    p.add_argument("--kernel", default="epanechnikov", choices=["epanechnikov", "gaussian"])
    p.set_defaults(func=_cmd_period_cv)

    p = sub.add_parser("test", parents=[common], help="pointwise coefficient hypothesis test")
    p.add_argument("--input", required=True)
    p.add_argument("--period", type=int, required=True)
    p.add_argument("--season", type=int, required=True)
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--null", type=float, required=True, help="null value c_a")
    p.add_argument("--bandwidth", default="auto")
    p.add_argument("--kernel", default="epanechnikov", choices=["epanechnikov", "gaussian"])
    p.set_defaults(func=_cmd_test)

    p = sub.add_parser("analyze", parents=[common], help="per-season profile of a real series")
    p.add_argument("--input", required=True)
    p.add_argument("--period", type=int, required=True)
    p.add_argument("--u", default="0.25,0.5,0.75")
    p.add_argument("--kernel", default="epanechnikov", choices=["epanechnikov", "gaussian"])
    p.add_argument("--bandwidth", default="auto")
    p.add_argument("--ci", type=float, default=0.95)
    p.add_argument("--deseasonalize", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--trend-window", type=int, default=None)
    p.set_defaults(func=_cmd_analyze)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # map to machine-readable categories
        for exc_type, category in _ERROR_CATEGORIES:
            if isinstance(exc, exc_type):
                break
        else:
            raise
        json.dump({"error": category, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
