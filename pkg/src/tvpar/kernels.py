"""Convolution kernels for the coefficient estimator.

Two built-ins: the compactly supported Epanechnikov kernel and the
Gaussian kernel.  Each carries the metadata the estimation theory needs
(support type, satisfied moment order, L2 norm, second moment) plus the
effective-window rule that bounds where kernel weights are treated as
nonzero in summations.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = ["KernelModel", "epanechnikov", "gaussian", "effective_window", "by_name"]


@dataclass(frozen=True)
class KernelModel:
    """A symmetric kernel with its analytic metadata.

    Exactly one of ``compact_radius`` (K vanishes outside [-B, B]) and
    ``tail_rate`` (exp(beta |x|) K(x) -> 0) is set, determining the
    effective-window rule.
    """

    name: str
    evaluate: Callable[[np.ndarray], np.ndarray]
    l2_norm_sq: float
    second_moment: float
    moment_order: float = 2.0
    compact_radius: float | None = None
    tail_rate: float | None = None

    def __call__(self, x):
        return self.evaluate(np.asarray(x, dtype=float))

    @property
    def support(self):
        if self.compact_radius is not None:
            return f"compact({self.compact_radius:g})"
        return f"exponential_tail({self.tail_rate:g})"


def _epanechnikov_eval(x):
    return np.where(np.abs(x) <= 1.0, 0.75 * (1.0 - x * x), 0.0)


def _gaussian_eval(x):
    return math.sqrt(1.0 / (2.0 * math.pi)) * np.exp(-0.5 * x * x)


def epanechnikov():
    """Epanechnikov kernel ``K(x) = 3/4 (1 - x^2)`` on |x| <= 1.

    ``int K^2 = 3/5`` and ``int x^2 K = 1/5``, both analytic.
    """
    return KernelModel(
        name="epanechnikov",
        evaluate=_epanechnikov_eval,
        l2_norm_sq=0.6,
        second_moment=0.2,
        compact_radius=1.0,
    )


def gaussian():
    """Standard Gaussian kernel ``K(x) = (2 pi)^{-1/2} exp(-x^2 / 2)``.

    Unbounded support with super-exponential tail; ``int K^2 = 1/(2 sqrt(pi))``
    and ``int x^2 K = 1``.
    """
    return KernelModel(
        name="gaussian",
        evaluate=_gaussian_eval,
        l2_norm_sq=1.0 / (2.0 * math.sqrt(math.pi)),
        second_moment=1.0,
        tail_rate=1.0,
    )


_BUILTINS = {"epanechnikov": epanechnikov, "gaussian": gaussian}


def by_name(name):
    """Look up a built-in kernel by name ('epanechnikov' or 'gaussian')."""
    try:
        return _BUILTINS[name.lower()]()
    except KeyError:
        raise ValueError(
            f"unknown kernel {name!r}; choose from {sorted(_BUILTINS)}"
        ) from None


def effective_window(kernel, n, b_n):
    """Half-width outside which kernel weights are treated as zero.

    ``B * b_n`` for a compact kernel; ``log(n) * b_n`` for an
    exponential-tail kernel, where the tail mass beyond the window is
    O(1/n) and negligible against the estimator's stochastic error.
    """
    if b_n <= 0.0:
        raise ValueError("bandwidth must be positive")
    if kernel.compact_radius is not None:
        return kernel.compact_radius * b_n
    return math.log(n) * b_n
