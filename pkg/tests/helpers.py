"""Shared oracles for the test suite.

The moment oracles iterate the exact one-step recursions of the process
to their periodic fixed point, independently of the closed forms they
check.  The empirical helpers simulate many replications with a single
bulk stream (vectorised across replications) for moment estimation.
"""

import numpy as np

from tvpar.rng import derive_rng


def recursion_moments(avals, sigma2, mu4, iters=4000):
    """Fixed points of v_t = a_t^2 v_{t-1} + s2 and the fourth-moment recursion.

    Returns two dicts season -> value for the second and fourth moment.
    Iterated long enough that the transient is far below double
    precision (alpha^(2*iters) underflows for any alpha < 1 of interest).
    """
    T = len(avals)
    v = 0.0
    w = 0.0
    v_by_season = {}
    w_by_season = {}
    for t in range(1, iters + 1):
        a = avals[(t - 1) % T]
        v = a * a * v + sigma2
        w = a**4 * w + 6.0 * sigma2 * v + mu4 - 6.0 * sigma2**2
        if t > iters - T:
            v_by_season[(t - 1) % T + 1] = v
            w_by_season[(t - 1) % T + 1] = w
    return v_by_season, w_by_season


def frozen_sample_at(avals, noise, t_target, replications, seed, chunk=200_000):
    """Draws of X_{t_target} over many replications of a frozen-coefficient process.

    Vectorised over replications with one bulk noise stream per chunk
    (moment estimation does not need per-replication streams).
    """
    avals = np.asarray(avals, dtype=float)
    T = len(avals)
    coeff = avals[(np.arange(1, t_target + 1) - 1) % T]
    rng = derive_rng(seed)
    out = np.empty(replications)
    done = 0
    while done < replications:
        size = min(chunk, replications - done)
        x = np.zeros(size)
        for t in range(t_target):
            x = coeff[t] * x + noise.sample(rng, size)
        out[done : done + size] = x
        done += size
    return out
