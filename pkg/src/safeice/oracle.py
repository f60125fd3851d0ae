"""Crude Monte Carlo reference estimates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import rng_from_seed

__all__ = ["McEstimate", "mc_estimate"]


@dataclass
class McEstimate:
    pf: float
    n_total: int
    n_failures: int
    cv: float


def mc_estimate(
    problem,
    n_total: int,
    batch_size: int = 100_000,
    rng: np.random.Generator | None = None,
    seed: int = 0,
) -> McEstimate:
    """Estimate the failure probability by direct standard normal sampling.

    Draws in batches from a single stream, so the result depends only on
    the seed and the draw order, not on the batch size (batch boundaries
    merely slice the same sequence). cv is the binomial coefficient of
    variation sqrt((1 - pf) / (n pf)).
    """
    if n_total < 1:
        raise ValueError("n_total must be positive")
    if batch_size < 1:
        raise ValueError("batch_size must be positive")
    if rng is None:
        rng = rng_from_seed(seed)
    d = problem.dim
    n_failures = 0
    done = 0
    while done < n_total:
        b = min(batch_size, n_total - done)
        u = rng.standard_normal((b, d))
        g = np.asarray(problem.evaluate(u))
        n_failures += int(np.sum(g <= 0.0))
        done += b
    pf = n_failures / n_total
    cv = float(np.sqrt((1.0 - pf) / (n_total * pf))) if pf > 0.0 else np.inf
    return McEstimate(pf=pf, n_total=n_total, n_failures=n_failures, cv=cv)
