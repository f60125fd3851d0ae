"""Weighted EM for the vMFNM mixture with a cross-entropy penalty on the
mixture weights.

The penalty augments the weighted EM update of the component weights with
a term proportional to pi_k * (ln pi_k - E), E = sum_s pi_s ln pi_s, which
pushes components whose weight sits below the mixture entropy toward zero.
Components whose updated weight is nonpositive are pruned. The penalty
strength beta adapts each iteration: it collapses while the weights are
still moving (so plain EM progress is not disturbed) and recovers toward
its cap as they stall, which is when the pruning pressure acts.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp, xlogy

from .mixtures import PolarSamples, VmfnmParams, _component_logpdfs, vmfnm_logpdf

__all__ = [
    "e_step",
    "em_weight_update",
    "penalized_weight_update",
    "prune",
    "beta_update",
    "m_step_params",
    "weighted_loglik",
    "fit",
    "FitResult",
]

logger = logging.getLogger(__name__)

M_MIN = 0.5 + 1e-6
M_MAX = 1e4
KAPPA_MAX = 1e4


def e_step(samples: PolarSamples, v: VmfnmParams) -> np.ndarray:
    """Responsibilities gamma[i, k] = pi_k q_k(u_i) / sum_s pi_s q_s(u_i).

    Computed in log space. Samples with zero density under every component
    get uniform responsibilities (with a diagnostic warning) so the M-step
    stays defined.
    """
    comp_log = np.log(v.pi)[None, :] + _component_logpdfs(samples, v)
    norm = logsumexp(comp_log, axis=1)
    bad = ~np.isfinite(norm)
    gamma = np.empty_like(comp_log)
    ok = ~bad
    gamma[ok] = np.exp(comp_log[ok] - norm[ok, None])
    if np.any(bad):
        logger.warning("e_step: %d samples with zero density under all components", bad.sum())
        gamma[bad] = 1.0 / v.k
    return gamma


def em_weight_update(gamma: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Unpenalized weight update pi_k = sum_i gamma_ik W_i / sum_i sum_s gamma_is W_i."""
    num = gamma.T @ weights
    denom = float((gamma * weights[:, None]).sum())
    if denom <= 0.0:
        raise ValueError("total responsibility mass is zero")
    return num / denom


def penalized_weight_update(
    gamma: np.ndarray, weights: np.ndarray, pi_old: np.ndarray, beta: float
) -> np.ndarray:
    """EM weight update plus the entropy penalty.

    pi_new_k = pi_em_k + beta * (sum_i W_i / sum_i sum_s gamma_is W_i)
                       * pi_old_k * (ln pi_old_k - E)

    with E = sum_s pi_old_s ln pi_old_s. Entries may come out nonpositive;
    prune() removes them. The update preserves sum(pi) = 1 because the
    penalty terms sum to zero.
    """
    pi_em = em_weight_update(gamma, weights)
    entropy_sum = float(np.sum(xlogy(pi_old, pi_old)))
    ratio = float(weights.sum()) / float((gamma * weights[:, None]).sum())
    return pi_em + beta * ratio * pi_old * (np.log(pi_old) - entropy_sum)


def prune(
    pi_new: np.ndarray, gamma: np.ndarray, v: VmfnmParams
) -> tuple[VmfnmParams, np.ndarray]:
    """Drop components with nonpositive weight and renormalize.

    Returns the reduced mixture (weights rescaled to sum 1, other component
    parameters carried over) and the responsibility matrix restricted to the
    surviving columns with rows renormalized.
    """
    keep = pi_new > 0.0
    if not np.any(keep):
        raise RuntimeError("all component weights nonpositive; mixture collapsed")
    pi = pi_new[keep]
    pi = pi / pi.sum()
    gamma = gamma[:, keep]
    rows = gamma.sum(axis=1, keepdims=True)
    dead_rows = rows[:, 0] <= 0.0
    if np.any(dead_rows):
        gamma[dead_rows] = 1.0 / keep.sum()
        rows[dead_rows] = 1.0
    gamma = gamma / rows
    v2 = VmfnmParams(
        pi=pi, m=v.m[keep], omega=v.omega[keep], mu=v.mu[keep], kappa=v.kappa[keep]
    )
    return v2, gamma


def beta_update(
    pi_new: np.ndarray,
    pi_old: np.ndarray,
    pi_em: np.ndarray,
    d: int,
    n_samples: int,
) -> float:
    """Adaptive penalty strength.

    beta = min( mean_k exp(-eta N |pi_new_k - pi_old_k|),
                (1 - max pi_em) / (-max(pi_old) * E) )

    with eta = min(1, 0.5^floor(d/2 - 1)) and E = sum pi_old ln pi_old.
    For K = 1 the penalty is inert and beta = 0. If the second argument is
    negative or non-finite, the first argument alone is used.
    """
    k = pi_old.shape[0]
    if k == 1:
        return 0.0
    eta = min(1.0, 0.5 ** math.floor(d / 2.0 - 1.0)) if d >= 2 else 1.0
    first = float(np.mean(np.exp(-eta * n_samples * np.abs(pi_new - pi_old))))
    entropy_sum = float(np.sum(xlogy(pi_old, pi_old)))
    denom = -float(np.max(pi_old)) * entropy_sum
    if denom > 0.0:
        second = (1.0 - float(np.max(pi_em))) / denom
        if np.isfinite(second) and second >= 0.0:
            return min(first, second)
    return first


def m_step_params(
    samples: PolarSamples, gamma: np.ndarray, weights: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Closed-form component parameter updates from weighted responsibilities.

    Radial: omega_k is the weighted mean of r^2 and m_k the inverse relative
    variance of r^2 (clamped to [0.5 + 1e-6, 1e4]). Angular: mu_k is the
    normalized weighted resultant and kappa_k the standard concentration
    approximation kappa = rbar (d - rbar^2) / (1 - rbar^2), clamped to
    [0, 1e4]. Components with no responsibility mass return NaN rows for the
    caller to handle.
    """
    d = samples.dim
    c = gamma * weights[:, None]
    s0 = c.sum(axis=0)
    dead = s0 <= 0.0
    if np.any(dead):
        logger.warning("m_step: %d components with zero responsibility mass", dead.sum())
    s0_safe = np.where(dead, 1.0, s0)

    r2 = samples.r**2
    mean_r2 = (c * r2[:, None]).sum(axis=0) / s0_safe
    mean_r4 = (c * (r2 * r2)[:, None]).sum(axis=0) / s0_safe
    var_r2 = mean_r4 - mean_r2**2
    omega = mean_r2
    with np.errstate(divide="ignore", invalid="ignore"):
        m = np.where(var_r2 > 0.0, mean_r2**2 / var_r2, np.inf)
    m = np.clip(m, M_MIN, M_MAX)

    resultant = c.T @ samples.a
    res_norm = np.linalg.norm(resultant, axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        mu = resultant / res_norm[:, None]
        rbar = res_norm / s0_safe
        kappa = np.where(
            rbar < 1.0, rbar * (d - rbar**2) / (1.0 - rbar**2), np.inf
        )
    kappa = np.clip(kappa, 0.0, KAPPA_MAX)

    bad = dead | (res_norm <= 0.0) | ~np.isfinite(omega) | (omega <= 0.0)
    if np.any(bad):
        m[bad] = np.nan
        omega[bad] = np.nan
        mu[bad] = np.nan
        kappa[bad] = np.nan
    return m, omega, mu, kappa


def weighted_loglik(samples: PolarSamples, weights: np.ndarray, v: VmfnmParams) -> float:
    """Weighted mixture log likelihood sum_i W_i ln q(u_i; v), skipping
    zero-weight samples so 0 * (-inf) cannot poison the sum."""
    pos = weights > 0.0
    if not np.any(pos):
        return 0.0
    return float(np.sum(weights[pos] * vmfnm_logpdf(samples.subset(pos), v)))


@dataclass
class FitResult:
    v: VmfnmParams
    k_final: int
    n_iterations: int
    converged: bool
    loglik_trace: list


def fit(
    samples: PolarSamples,
    weights: np.ndarray,
    v_init: VmfnmParams,
    *,
    penalized: bool = True,
    em_tol: float = 1e-4,
    max_iter: int = 20,
) -> FitResult:
    """Run the weighted (penalized) EM loop to convergence.

    Weights are held fixed throughout. Each iteration: E-step, weight update
    with the current beta (beta starts at 1), pruning of nonpositive
    weights, beta update from the pre-prune vectors, closed-form M-step,
    and the unpenalized weighted log-likelihood convergence check
    |l_j - l_{j-1}| < em_tol * |l_j|. With ``penalized=False`` the loop is
    plain weighted EM at fixed K. All updates are invariant to rescaling
    the weights.
    """
    weights = np.asarray(weights, dtype=float)
    if np.any(weights < 0.0) or not np.any(weights > 0.0):
        raise ValueError("weights must be nonnegative with positive total")
    v = v_init
    beta = 1.0
    l_prev = np.inf
    trace: list = []
    converged = False
    iterations = 0
    for _ in range(max_iter):
        iterations += 1
        gamma = e_step(samples, v)
        if penalized:
            pi_em = em_weight_update(gamma, weights)
            pi_raw = penalized_weight_update(gamma, weights, v.pi, beta)
            pi_old = v.pi
            v, gamma = prune(pi_raw, gamma, v)
            beta = beta_update(pi_raw, pi_old, pi_em, samples.dim, len(samples))
        else:
            pi = np.maximum(em_weight_update(gamma, weights), 1e-300)
            v = VmfnmParams(pi / pi.sum(), v.m, v.omega, v.mu, v.kappa)

        m, omega, mu, kappa = m_step_params(samples, gamma, weights)
        stale = ~np.isfinite(omega)
        if np.any(stale):
            m[stale] = v.m[stale]
            omega[stale] = v.omega[stale]
            mu[stale] = v.mu[stale]
            kappa[stale] = v.kappa[stale]
        v = VmfnmParams(v.pi, m, omega, mu, kappa)

        l_cur = weighted_loglik(samples, weights, v)
        trace.append(l_cur)
        if np.isfinite(l_prev) and abs(l_cur - l_prev) < em_tol * abs(l_cur):
            converged = True
            break
        l_prev = l_cur
    if not converged:
        logger.debug("fit: EM stopped at max_iter=%d without convergence", max_iter)
    return FitResult(
        v=v,
        k_final=v.k,
        n_iterations=iterations,
        converged=converged,
        loglik_trace=trace,
    )
