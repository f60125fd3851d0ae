"""Show what the heavy radial tail buys on a rare-event problem.

The light proposal's radial law (a Nakagami fit) has a squared
exponential tail, so a proposal that adapted to the wrong place assigns
essentially zero density to far-out failure samples and single
importance weights can explode. The safe mixture keeps an
inverse-Nakagami companion whose tail decays only polynomially and
whose mode is matched to the light component's radial mean.

The first table samples both radial laws in d = 2 and d = 10 and prints
upper quantiles: similar location, very different tails. The second table
runs the two estimators on two-mode at z = 4.5 (true pf 6.8e-6) over
ten matched seeds, where the light-only baseline is noticeably less
stable than the guarded mixture.
"""

import numpy as np
from scipy.stats import norm

from safeice import RunConfig, VmfnmParams, heavy_params_from_light, problem_registry, run_ice, run_safe_ice
from safeice.distributions import inv_nakagami_sample, nakagami_sample, rng_from_seed

N_DRAWS = 1_000_000


def prior_light(d: int) -> VmfnmParams:
    mu = np.zeros((1, d))
    mu[0, 0] = 1.0
    return VmfnmParams(
        pi=np.ones(1),
        m=np.full(1, d / 2.0),
        omega=np.full(1, float(d)),
        mu=mu,
        kappa=np.zeros(1),
    )


def tail_table() -> None:
    rng = rng_from_seed(0)
    print(f"{'law':<28} {'d':>3} {'q50':>7} {'q99':>7} {'q99.9':>8} {'max of 1e6':>11}")
    for d in (2, 10):
        light = prior_light(d)
        m_h, omega_h = heavy_params_from_light(light)
        draws = {
            "light radial (Nakagami)": nakagami_sample(rng, d / 2.0, float(d), N_DRAWS),
            "heavy radial (inv-Nakagami)": inv_nakagami_sample(rng, m_h, float(omega_h[0]), N_DRAWS),
        }
        for label, r in draws.items():
            q50, q99, q999 = np.quantile(r, [0.5, 0.99, 0.999])
            print(f"{label:<28} {d:>3} {q50:>7.2f} {q99:>7.2f} {q999:>8.2f} {r.max():>11.1f}")
    print()


def estimator_table() -> None:
    z = 4.5
    problem = problem_registry("two-mode", z, 2)
    exact = 2.0 * norm.cdf(-z)
    print(f"two-mode z = {z}, exact pf = {exact:.4e}, ten matched seeds")
    print(f"{'seed':>4} {'safe mixture':>14} {'light only K=2':>15}")
    rel_safe, rel_plain = [], []
    for seed in range(10):
        safe = run_safe_ice(problem, RunConfig(seed=seed))
        plain = run_ice(problem, RunConfig(seed=seed, method="ice", k_init=2))
        rel_safe.append(abs(safe.pf - exact) / exact)
        rel_plain.append(abs(plain.pf - exact) / exact)
        print(f"{seed:>4} {safe.pf:>14.4e} {plain.pf:>15.4e}")
    print(f"mean |relative error|: safe {np.mean(rel_safe):.3f}, "
          f"light only {np.mean(rel_plain):.3f}")


def main() -> None:
    tail_table()
    estimator_table()


if __name__ == "__main__":
    main()
