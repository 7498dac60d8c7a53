"""Periodic time-varying AR(1) processes.

The model is an AR(1) recursion whose coefficient is a smooth function of
rescaled time and repeats with a fixed period ``T``:

    X_t = a_s(t / (nT)) * X_{t-1} + xi_t,      s = season of t,

with ``X_0 = 0``, seasons ``s = 1..T`` cycling as ``a_{s+T} = a_s``, and
i.i.d. zero-mean innovations ``xi_t``.  This module holds the model types,
the trajectory simulator and the closed-form local moment functions that
serve as oracles for the estimation code.
"""

import math
from dataclasses import dataclass

import numpy as np

from .rng import derive_rng

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
]

#: Number of points used to check contractivity at construction.
_CONTRACTIVITY_GRID = 10_000


class FourthMomentUnavailable(ValueError):
    """Raised when a fourth-moment quantity is requested for noise with
    infinite fourth moment (e.g. Student t(3))."""


class CoefficientFamily:
    """The ``T`` periodic coefficient functions ``a_1 .. a_T`` on [0, 1].

    Parameters
    ----------
    functions : sequence of callables
        One function per season mapping rescaled time in [0, 1] to the
        AR coefficient.  Callables must accept ndarray input and
        broadcast elementwise.
    alpha : float, optional
        Declared contractivity bound, ``sup |a_s| <= alpha < 1``.  When
        omitted, the sampled supremum over a dense grid is used.  The
        bound is checked on a 10^4-point grid at construction either way.
    rho : float, optional
        Declared Hölder regularity of the functions (recorded, not
        verified analytically).
    smooth : bool
        True when the functions are closed-form and support
        finite-difference differentiation; False for piecewise-linear
        interpolants (tabulated paths).

    Season indexing is modular: ``a_{s+T} = a_s`` and ``a_0 = a_T``.
    """

    def __init__(self, functions, alpha=None, rho=None, smooth=True, label=""):
        functions = list(functions)
        if not functions:
            raise ValueError("at least one coefficient function is required")
        self.functions = functions
        self.period = len(functions)
        self.rho = rho
        self.smooth = bool(smooth)
        self.label = str(label)

        grid = np.linspace(0.0, 1.0, _CONTRACTIVITY_GRID)
        sampled_sup = 0.0
        for f in functions:
            vals = np.asarray(f(grid), dtype=float)
            if not np.all(np.isfinite(vals)):
                raise ValueError("coefficient function returned non-finite values")
            sampled_sup = max(sampled_sup, float(np.max(np.abs(vals))))
        if alpha is None:
            alpha = sampled_sup
        alpha = float(alpha)
        if not 0.0 <= alpha < 1.0:
            raise ValueError(
                f"contractivity bound must lie in [0, 1), got alpha={alpha!r}"
            )
        if sampled_sup > alpha + 1e-12:
            raise ValueError(
                f"sampled sup |a_s| = {sampled_sup:.6g} exceeds declared "
                f"bound alpha = {alpha:.6g}"
            )
        self.alpha = alpha

    @classmethod
    def constant(cls, values, rho=None):
        """Family of frozen (constant-in-time) coefficients, one per season."""
        values = [float(c) for c in np.atleast_1d(values)]
        funcs = [
            (lambda v, c=c: np.full_like(np.asarray(v, dtype=float), c))
            for c in values
        ]
        label = "constant(" + ",".join(f"{c:g}" for c in values) + ")"
        return cls(funcs, alpha=max(abs(c) for c in values), rho=rho, label=label)

    def __call__(self, s, v):
        """Evaluate ``a_s(v)``; ``s`` is any integer (modular), ``v`` in [0, 1]."""
        f = self.functions[(int(s) - 1) % self.period]
        v = np.asarray(v, dtype=float)
        out = np.asarray(f(v), dtype=float)
        return float(out) if out.ndim == 0 else out

    def __repr__(self):
        return (
            f"CoefficientFamily(period={self.period}, alpha={self.alpha:.4g}, "
            f"rho={self.rho}, smooth={self.smooth})"
        )


@dataclass(frozen=True)
class NoiseModel:
    """I.i.d. innovation law: centred Gaussian or (unscaled) Student t.

    ``variance`` is the innovation variance sigma^2.  A Student t(nu) is
    used unscaled, so its variance is ``nu / (nu - 2)`` and requires
    ``nu > 2``.  Both supported laws are symmetric.
    """

    law: str
    variance: float
    df: float = math.nan
    symmetric: bool = True

    @classmethod
    def gaussian(cls, variance=1.0):
        variance = float(variance)
        if variance <= 0.0:
            raise ValueError("variance must be positive")
        return cls(law="gaussian", variance=variance)

    @classmethod
    def student_t(cls, df):
        df = float(df)
        if df <= 2.0:
            raise ValueError("Student t noise requires df > 2 for finite variance")
        return cls(law="student_t", variance=df / (df - 2.0), df=df)

    @property
    def fourth_moment(self):
        """E(xi^4); ``math.inf`` when it does not exist (t with df <= 4)."""
        if self.law == "gaussian":
            return 3.0 * self.variance**2
        if self.df <= 4.0:
            return math.inf
        return 3.0 * self.df**2 / ((self.df - 2.0) * (self.df - 4.0))

    def sample(self, rng, size):
        """Draw ``size`` innovations in one block from ``rng``."""
        if self.law == "gaussian":
            return rng.standard_normal(size) * math.sqrt(self.variance)
        return rng.standard_t(self.df, size=size)

    def label(self):
        if self.law == "gaussian":
            return f"gaussian({self.variance:g})"
        return f"student_t({self.df:g})"


@dataclass(frozen=True)
class Trajectory:
    """One observed series ``X_1 .. X_{nT}`` with its (n, T) indexing.

    ``values[t-1]`` holds X_t; the pre-sample value X_0 is 0 by
    convention, for simulated and ingested data alike.
    """

    values: np.ndarray
    n: int
    period: int
    seed: int | tuple | None = None
    origin: str = "simulated"

    def __post_init__(self):
        object.__setattr__(
            self, "values", np.ascontiguousarray(self.values, dtype=float)
        )
        if self.n < 1 or self.period < 1:
            raise ValueError("n and period must be positive")
        if self.values.ndim != 1 or len(self.values) != self.n * self.period:
            raise ValueError(
                f"expected {self.n * self.period} values, got {self.values.shape}"
            )

    def season_indices(self, s):
        """Time indices ``{s, s+T, ..., s+(n-1)T}`` of season ``s`` (1-based)."""
        if not 1 <= s <= self.period:
            raise ValueError(f"season must lie in 1..{self.period}")
        return s + self.period * np.arange(self.n)

    def lagged(self):
        """Array of X_{t-1} aligned with ``values`` (X_0 = 0)."""
        lag = np.empty_like(self.values)
        lag[0] = 0.0
        lag[1:] = self.values[:-1]
        return lag


def simulate(coeffs, noise, n, seed):
    """Simulate ``X_1 .. X_{nT}`` of the periodic tvAR(1) model.

    Starts from ``X_0 = 0`` and iterates
    ``X_t = a_{t mod T}(t / (nT)) X_{t-1} + xi_t``.  The innovations are
    drawn in a single block from a Philox stream keyed by ``seed``, so
    the output is bitwise reproducible from ``(seed, coeffs, noise, n)``.
    ``seed`` may be a tuple: replication ``r`` of a Monte-Carlo run with
    master seed ``m`` equals ``simulate(..., seed=(m, r))``.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be at least 1")
    if coeffs.alpha >= 1.0:
        raise ValueError("coefficient family violates contractivity")
    T = coeffs.period
    total = n * T
    seed_key = tuple(seed) if isinstance(seed, (tuple, list)) else (int(seed),)
    rng = derive_rng(*seed_key)
    xi = noise.sample(rng, total)
    coeff_at_t = _coefficient_path(coeffs, n)
    x = np.empty(total)
    prev = 0.0
    for i in range(total):
        prev = coeff_at_t[i] * prev + xi[i]
        x[i] = prev
    return Trajectory(
        values=x,
        n=n,
        period=T,
        seed=seed_key[0] if len(seed_key) == 1 else seed_key,
        origin="simulated",
    )


def _coefficient_path(coeffs, n):
    """Values ``a_{t mod T}(t / (nT))`` for t = 1..nT."""
    T = coeffs.period
    total = n * T
    t = np.arange(1, total + 1)
    season0 = (t - 1) % T
    out = np.empty(total)
    for s0 in range(T):
        mask = season0 == s0
        out[mask] = coeffs(s0 + 1, t[mask] / total)
    return out


def _season_products(coeffs, s, v, power):
    """Cumulative products ``prod_{j=0}^{i} a_{s-j}(v)^power`` for i = 0..T-1."""
    v = np.asarray(v, dtype=float)
    acc = np.ones_like(v)
    prods = []
    for j in range(coeffs.period):
        a = np.asarray(coeffs(s - j, v), dtype=float)
        acc = acc * a**power
        prods.append(acc)
    return prods


def theoretical_gamma2(coeffs, noise, s, v):
    """Closed-form local second moment ``gamma2_s(v)`` of the process.

    Equals ``sigma^2 (1 + sum_{i<T-1} beta_{s,i}(v)) / (1 - beta_{s,T-1}(v))``
    with ``beta_{s,i}(v) = prod_{j=0}^{i} a_{s-j}^2(v)``; the empty-product
    case (all coefficients zero) gives exactly sigma^2.
    """
    beta = _season_products(coeffs, s, v, 2)
    sigma2 = noise.variance
    num = 1.0 + sum(beta[:-1])
    out = sigma2 * num / (1.0 - beta[-1])
    return float(out) if np.ndim(out) == 0 else out


def theoretical_gamma4(coeffs, noise, s, v):
    """Closed-form local fourth moment ``gamma4_s(v)`` of the process.

    Fixed point of the one-season recursion
    ``w_s = a_s^4 w_{s-1} + r_s`` with
    ``r_s(v) = mu4 + 6 sigma^2 gamma2_s(v) - 6 sigma^4``, unrolled over
    one full period:

        gamma4_s = (r_s + sum_{i<T-1} delta_{s,i} r_{s-i-1}) / (1 - delta_{s,T-1}),

    where ``delta_{s,i}(v) = prod_{j=0}^{i} a_{s-j}^4(v)``.  Requires a
    symmetric innovation law with finite fourth moment.
    """
    mu4 = noise.fourth_moment
    if not math.isfinite(mu4):
        raise FourthMomentUnavailable(
            f"fourth moment unavailable for {noise.label()}"
        )
    if not noise.symmetric:
        raise ValueError("gamma4 requires a symmetric innovation law")
    sigma2 = noise.variance
    delta = _season_products(coeffs, s, v, 4)

    def r(season):
        g2 = theoretical_gamma2(coeffs, noise, season, v)
        return mu4 + 6.0 * sigma2 * g2 - 6.0 * sigma2**2

    num = r(s)
    for i in range(coeffs.period - 1):
        num = num + delta[i] * r(s - i - 1)
    out = num / (1.0 - delta[-1])
    return float(out) if np.ndim(out) == 0 else out


def covariance_decay_bound(coeffs, t, tprime):
    """Geometric factor ``alpha^{2(t - t')}`` bounding ``|Cov(X_t^2, X_{t'}^2)|``.

    The bound on the covariance itself is this factor times the local
    fourth moment at t'; tests use it to verify geometric decay.
    Requires ``t > t'``.
    """
    t, tprime = int(t), int(tprime)
    if t <= tprime:
        raise ValueError("covariance decay bound requires t > t'")
    return coeffs.alpha ** (2 * (t - tprime))


@dataclass(frozen=True)
class MomentProfile:
    """Bundle of the closed-form moment functions for one model."""

    coeffs: CoefficientFamily
    noise: NoiseModel

    def gamma2(self, s, v):
        return theoretical_gamma2(self.coeffs, self.noise, s, v)

    def gamma4(self, s, v):
        return theoretical_gamma4(self.coeffs, self.noise, s, v)
