"""Adaptive importance sampling drivers.

Both methods anneal a smoothed failure indicator h_sigma(g) = Phi(-g/sigma)
toward the sharp indicator, refitting the proposal each level from weighted
samples. The safe variant mixes a heavy-tailed radial kernel into the
proposal with weight 1 - lambda(sigma), where lambda follows a cosine
schedule in sigma, and prunes mixture components through the penalized EM.
The baseline keeps a fixed component count, plain EM, and no heavy kernel.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .distributions import rng_from_seed, vmf_sample
from .em import fit
from .mixtures import (
    PolarSamples,
    SafeMixtureParams,
    VmfnmParams,
    prior_logpdf,
    safe_logpdf,
    safe_sample,
)
from .special import log_normal_cdf, normal_cdf

__all__ = [
    "RunConfig",
    "RunResult",
    "smooth_indicator",
    "log_smooth_indicator",
    "cv",
    "intermediate_log_weights",
    "select_sigma",
    "stop_cv",
    "lambda_schedule",
    "estimate_pf",
    "init_light_params",
    "run_safe_ice",
    "run_ice",
]

logger = logging.getLogger(__name__)

_INV_GOLD = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass
class RunConfig:
    """Settings for one estimation run.

    ``anneal_horizon`` is the sigma value M at which the heavy kernel
    starts to fade; it defaults to sigma0 so the first proposal is fully
    heavy. ``method`` selects the safe variant or the light-only baseline.
    """

    n_per_iter: int = 1000
    k_init: int = 20
    delta_star: float = 1.5
    delta_target: float = 4.0
    sigma0: float = 10.0
    anneal_horizon: float | None = None
    max_outer: int = 20
    max_em: int = 20
    em_tol: float = 1e-4
    seed: int = 0
    method: str = "safe-ice"

    def __post_init__(self):
        if self.n_per_iter < 10:
            raise ValueError("n_per_iter must be at least 10")
        if self.k_init < 1:
            raise ValueError("k_init must be at least 1")
        if self.delta_star <= 0.0 or self.delta_target <= 0.0:
            raise ValueError("cv thresholds must be positive")
        if self.sigma0 <= 0.0:
            raise ValueError("sigma0 must be positive")
        if self.anneal_horizon is not None and self.anneal_horizon <= 0.0:
            raise ValueError("anneal_horizon must be positive")
        if self.max_outer < 1 or self.max_em < 1:
            raise ValueError("iteration limits must be at least 1")
        if self.em_tol <= 0.0:
            raise ValueError("em_tol must be positive")
        if self.method not in ("safe-ice", "ice"):
            raise ValueError("method must be 'safe-ice' or 'ice'")

    @property
    def horizon(self) -> float:
        return self.sigma0 if self.anneal_horizon is None else self.anneal_horizon


@dataclass
class RunResult:
    """Outcome of one run: the estimate, loop diagnostics, and the
    per-iteration traces (index t = 0 .. iterations)."""

    pf: float
    iterations: int
    final_k: int
    lsf_evals: int
    converged: bool
    seed: int
    sigma_trace: list = field(default_factory=list)
    lambda_trace: list = field(default_factory=list)
    k_trace: list = field(default_factory=list)
    n_failures: int = 0


def smooth_indicator(g, sigma: float):
    """Smoothed failure indicator h_sigma(g) = Phi(-g / sigma)."""
    if sigma <= 0.0:
        raise ValueError("sigma must be positive")
    return normal_cdf(-np.asarray(g, dtype=float) / sigma)


def log_smooth_indicator(g, sigma: float):
    """ln h_sigma(g), finite for any finite g."""
    if sigma <= 0.0:
        raise ValueError("sigma must be positive")
    return log_normal_cdf(-np.asarray(g, dtype=float) / sigma)


def cv(values) -> float:
    """Coefficient of variation (sample std over mean, ddof=1).

    Returns +inf when the mean is zero; requires at least two values.
    """
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        raise ValueError("cv needs at least two values")
    mean = values.mean()
    if mean == 0.0:
        return np.inf
    return float(values.std(ddof=1) / mean)


def intermediate_log_weights(samples: PolarSamples, sigma: float, q_log: np.ndarray) -> np.ndarray:
    """Unnormalized log importance weights ln W_i = ln h_sigma(g_i)
    + ln p(u_i) - ln q(u_i) for the smoothed target at level sigma."""
    if samples.g is None:
        raise ValueError("samples carry no limit-state values")
    return log_smooth_indicator(samples.g, sigma) + prior_logpdf(samples) - q_log


def _weight_cv(log_w: np.ndarray) -> float:
    if log_w.size < 2:
        return np.inf
    shift = log_w.max()
    if not np.isfinite(shift):
        return np.inf
    w = np.exp(log_w - shift)
    mean = w.mean()
    if mean == 0.0:
        return np.inf
    return float(w.std(ddof=1) / mean)


def _golden_refine(objective, a: float, b: float) -> tuple[float, float]:
    x1 = b - _INV_GOLD * (b - a)
    x2 = a + _INV_GOLD * (b - a)
    f1, f2 = objective(x1), objective(x2)
    for _ in range(80):
        if b - a < 1e-10:
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_GOLD * (b - a)
            f1 = objective(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_GOLD * (b - a)
            f2 = objective(x2)
    if f1 <= f2:
        return x1, f1
    return x2, f2


def select_sigma(
    samples: PolarSamples,
    q_log: np.ndarray,
    sigma_prev: float,
    delta_target: float,
) -> float:
    """Choose the next smoothing level on (0, sigma_prev].

    Minimizes (cv(W(sigma)) - delta_target)^2 over ln sigma with a 50-point
    log-spaced coarse grid followed by golden-section refinement around each
    local minimum of the grid. Refining every basin matters: the objective
    drops to near zero wherever cv crosses the target, and such a valley can
    be narrower than the grid spacing, leaving both bracketing grid values
    worse than some far-away point. The result never exceeds sigma_prev.
    """
    if sigma_prev <= 0.0:
        raise ValueError("sigma_prev must be positive")
    rest = prior_logpdf(samples) - q_log
    g = samples.g

    def objective(log_sigma: float) -> float:
        w_cv = _weight_cv(log_normal_cdf(-g / np.exp(log_sigma)) + rest)
        if not np.isfinite(w_cv):
            return np.inf
        return (w_cv - delta_target) ** 2

    lo = np.log(1e-8 * sigma_prev)
    hi = np.log(sigma_prev)
    grid = np.linspace(lo, hi, 50)
    vals = np.array([objective(x) for x in grid])
    i_best = int(np.argmin(vals))
    best_x, best_f = grid[i_best], vals[i_best]

    last = len(grid) - 1
    for k in range(len(grid)):
        left = vals[k - 1] if k > 0 else np.inf
        right = vals[k + 1] if k < last else np.inf
        # strict test on the left keeps one candidate per flat plateau
        if not (vals[k] < left and vals[k] <= right):
            continue
        x, f = _golden_refine(objective, grid[max(k - 1, 0)], grid[min(k + 1, last)])
        if f < best_f:
            best_x, best_f = x, f
    return float(min(np.exp(best_x), sigma_prev))


def stop_cv(samples: PolarSamples, sigma: float) -> float:
    """Coefficient of variation of the indicator-over-smoothed-indicator
    weights on the light-origin samples.

    Returns +inf when no light samples exist (lambda = 0), when fewer than
    two are available, or when none of them fail.
    """
    light = ~samples.heavy
    if not np.any(light):
        return np.inf
    g = samples.g[light]
    if g.size < 2:
        return np.inf
    fail = g <= 0.0
    if not np.any(fail):
        return np.inf
    values = np.zeros(g.size)
    values[fail] = 1.0 / smooth_indicator(g[fail], sigma)
    return cv(values)


def lambda_schedule(sigma: float, horizon: float) -> float:
    """Cosine annealing weight for the light kernel.

    lambda = 0 for sigma > horizon, else (1 + cos(pi sigma / horizon)) / 2;
    rises from 0 at sigma = horizon to 1 at sigma = 0.
    """
    if horizon <= 0.0:
        raise ValueError("horizon must be positive")
    if sigma < 0.0:
        raise ValueError("sigma must be nonnegative")
    if sigma > horizon:
        return 0.0
    return float(0.5 * (1.0 + np.cos(np.pi * sigma / horizon)))


def estimate_pf(samples: PolarSamples, phi: SafeMixtureParams) -> float:
    """Importance sampling estimate (1/N) sum_i I{g_i <= 0} p(u_i)/q(u_i)
    evaluated by shifted log-sum-exp over the failure samples."""
    if samples.g is None:
        raise ValueError("samples carry no limit-state values")
    fail = samples.g <= 0.0
    if not np.any(fail):
        logger.warning("estimate_pf: no failure samples; returning 0")
        return 0.0
    sub = samples.subset(fail)
    log_w = prior_logpdf(sub) - safe_logpdf(sub, phi)
    shift = log_w.max()
    return float(np.exp(shift) * np.exp(log_w - shift).sum() / len(samples))


def init_light_params(rng: np.random.Generator, d: int, k: int) -> VmfnmParams:
    """Initial light mixture: every component carries the prior radial law
    Nakagami(d/2, d); directions are uniform random with kappa = 2 so the
    E-step can tell components apart (kappa = 0 would make them identical
    and freeze EM at uniform responsibilities). A single component keeps
    kappa = 0 and reproduces the prior exactly."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    if k < 1:
        raise ValueError("k must be at least 1")
    mu = vmf_sample(rng, np.eye(d)[0], 0.0, k)
    kappa = np.zeros(k) if k == 1 else np.full(k, 2.0)
    return VmfnmParams(
        pi=np.full(k, 1.0 / k),
        m=np.full(k, d / 2.0),
        omega=np.full(k, float(d)),
        mu=mu,
        kappa=kappa,
    )


def _run_adaptive(problem, config: RunConfig, rng, use_heavy: bool) -> RunResult:
    if rng is None:
        rng = rng_from_seed(config.seed)
    d = problem.dim
    n = config.n_per_iter
    horizon = config.horizon

    v = init_light_params(rng, d, config.k_init)
    sigma = config.sigma0
    lam = lambda_schedule(sigma, horizon) if use_heavy else 1.0
    phi = SafeMixtureParams.from_light(v, lam)

    sigma_trace: list = []
    lambda_trace: list = []
    k_trace: list = []
    lsf_evals = 0
    converged = False
    stagnant = 0
    samples = None

    for t in range(config.max_outer + 1):
        samples = safe_sample(rng, phi, n)
        samples.g = np.asarray(problem.evaluate(samples.cartesian()), dtype=float)
        lsf_evals += n
        sigma_trace.append(sigma)
        lambda_trace.append(phi.lam)
        k_trace.append(v.k)

        if stop_cv(samples, sigma) <= config.delta_star:
            converged = True
            break
        if t == config.max_outer:
            logger.warning("run: outer iteration limit reached without convergence")
            break

        q_log = safe_logpdf(samples, phi)
        sigma_new = select_sigma(samples, q_log, sigma, config.delta_target)
        if sigma_new >= sigma * (1.0 - 1e-12):
            stagnant += 1
            if stagnant >= 2:
                logger.warning("run: smoothing level stagnated; stopping")
                break
        else:
            stagnant = 0

        log_w = intermediate_log_weights(samples, sigma_new, q_log)
        weights = np.exp(log_w - log_w.max())
        result = fit(
            samples,
            weights,
            v,
            penalized=use_heavy,
            em_tol=config.em_tol,
            max_iter=config.max_em,
        )
        v = result.v
        sigma = sigma_new
        lam = lambda_schedule(sigma, horizon) if use_heavy else 1.0
        phi = SafeMixtureParams.from_light(v, lam)

    pf = estimate_pf(samples, phi)
    return RunResult(
        pf=pf,
        iterations=len(sigma_trace) - 1,
        final_k=v.k,
        lsf_evals=lsf_evals,
        converged=converged,
        seed=config.seed,
        sigma_trace=sigma_trace,
        lambda_trace=lambda_trace,
        k_trace=k_trace,
        n_failures=int(np.sum(samples.g <= 0.0)),
    )


def run_safe_ice(problem, config: RunConfig, rng: np.random.Generator | None = None) -> RunResult:
    """Heavy-tail-guarded adaptive run with component pruning."""
    if problem.dim < 2:
        raise ValueError("adaptive sampling requires dimension >= 2")
    return _run_adaptive(problem, config, rng, use_heavy=True)


def run_ice(problem, config: RunConfig, rng: np.random.Generator | None = None) -> RunResult:
    """Baseline adaptive run: light mixture only, fixed K, plain EM."""
    if problem.dim < 2:
        raise ValueError("adaptive sampling requires dimension >= 2")
    return _run_adaptive(problem, config, rng, use_heavy=False)
