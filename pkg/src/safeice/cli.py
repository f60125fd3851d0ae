"""Command line interface.

Subcommands: estimate (one run, JSON record on stdout), bench (repeated
runs persisted to a file, summary record on stdout), oracle (crude Monte
Carlo), list-problems. Options may also come from a JSON config file via
--config; explicit flags win over the file, which wins over defaults.
stdout carries only machine-parsable records; diagnostics go to stderr.

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bench import persist, run_repetitions
from .core import RunConfig, run_ice, run_safe_ice
from .oracle import mc_estimate
from .problems import PROBLEM_NAMES, problem_registry

_RUN_KEYS = (
    "n_per_iter",
    "k_init",
    "delta_star",
    "delta_target",
    "sigma0",
    "anneal_horizon",
    "max_outer",
    "max_em",
    "em_tol",
    "seed",
    "method",
)

_DEFAULTS = {
    "n_per_iter": 1000,
    "k_init": 20,
    "delta_star": 1.5,
    "delta_target": 4.0,
    "sigma0": 10.0,
    "anneal_horizon": None,
    "max_outer": 20,
    "max_em": 20,
    "em_tol": 1e-4,
    "seed": 0,
    "method": "safe-ice",
    "d": None,
    "threads": None,
    "n_total": 1_000_000,
    "batch_size": 100_000,
    "format": "jsonl",
}


def _add_problem_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", required=True, choices=PROBLEM_NAMES)
    p.add_argument("--z", type=float, required=True, help="failure threshold")
    p.add_argument("--d", type=int, help="problem dimension where variable")
    p.add_argument("--config", help="JSON file with option defaults")


def _add_run_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--method", choices=("safe-ice", "ice"))
    p.add_argument("--seed", type=int)
    p.add_argument("--n-per-iter", type=int, dest="n_per_iter")
    p.add_argument("--k-init", type=int, dest="k_init")
    p.add_argument("--delta-star", type=float, dest="delta_star")
    p.add_argument("--delta-target", type=float, dest="delta_target")
    p.add_argument("--sigma0", type=float)
    p.add_argument("--anneal-horizon", type=float, dest="anneal_horizon")
    p.add_argument("--max-outer", type=int, dest="max_outer")
    p.add_argument("--max-em", type=int, dest="max_em")
    p.add_argument("--em-tol", type=float, dest="em_tol")
    p.add_argument("--threads", type=int, help="worker threads (bench); env SAFE_ICE_THREADS")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="safeice")
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="single estimation run")
    _add_problem_args(est)
    _add_run_args(est)

    ben = sub.add_parser("bench", help="repeated runs with summary statistics")
    _add_problem_args(ben)
    _add_run_args(ben)
    ben.add_argument("--reps", type=int, required=True, help="number of repetitions")
    ben.add_argument("--p-ref", type=float, dest="p_ref", required=True)
    ben.add_argument("--out", required=True, help="output file path")
    ben.add_argument("--format", choices=("jsonl", "csv"))

    ora = sub.add_parser("oracle", help="crude Monte Carlo reference")
    _add_problem_args(ora)
    ora.add_argument("--seed", type=int)
    ora.add_argument("--n-total", type=int, dest="n_total")
    ora.add_argument("--batch-size", type=int, dest="batch_size")

    sub.add_parser("list-problems", help="list available problems")
    return parser


def _merge_options(args: argparse.Namespace) -> dict:
    merged = dict(_DEFAULTS)
    path = getattr(args, "config", None)
    if path:
        with open(path) as fh:
            file_cfg = json.load(fh)
        if not isinstance(file_cfg, dict):
            raise ValueError("config file must hold a JSON object")
        unknown = set(file_cfg) - set(_DEFAULTS) - {"problem", "z", "reps", "p_ref", "out"}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        merged.update(file_cfg)
    for key, value in vars(args).items():
        if key in ("command", "config"):
            continue
        if value is not None:
            merged[key] = value
    if merged.get("threads") is None:
        merged["threads"] = int(os.environ.get("SAFE_ICE_THREADS", "1"))
    return merged


def _run_config(opts: dict) -> RunConfig:
    return RunConfig(**{k: opts[k] for k in _RUN_KEYS})


def _result_record(result) -> dict:
    return {
        "pf": result.pf,
        "iterations": result.iterations,
        "final_k": result.final_k,
        "lsf_evals": result.lsf_evals,
        "converged": result.converged,
        "seed": result.seed,
        "sigma_trace": result.sigma_trace,
        "lambda_trace": result.lambda_trace,
        "k_trace": result.k_trace,
    }


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "list-problems":
        fixed = {"four-branch": 2, "three-mode": 2, "two-mode": None, "oscillator": 10}
        for name in PROBLEM_NAMES:
            print(json.dumps({"name": name, "d": fixed[name]}))
        return 0

    try:
        opts = _merge_options(args)
        problem = problem_registry(opts["problem"], float(opts["z"]), opts.get("d"))
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "estimate":
            config = _run_config(opts)
            runner = run_safe_ice if config.method == "safe-ice" else run_ice
            result = runner(problem, config)
            print(json.dumps(_result_record(result)))
            return 0
        if args.command == "oracle":
            est = mc_estimate(
                problem,
                n_total=int(opts["n_total"]),
                batch_size=int(opts["batch_size"]),
                seed=int(opts["seed"]),
            )
            print(
                json.dumps(
                    {
                        "pf": est.pf,
                        "n_total": est.n_total,
                        "n_failures": est.n_failures,
                        "cv": est.cv,
                    }
                )
            )
            return 0
        if args.command == "bench":
            config = _run_config(opts)
            stats = run_repetitions(
                problem,
                config,
                n_runs=int(opts["reps"]),
                p_ref=float(opts["p_ref"]),
                threads=int(opts["threads"]),
            )
            persist(stats, opts["out"], fmt=opts["format"])
            print(
                json.dumps(
                    {
                        "summary": True,
                        "p_ref": stats.p_ref,
                        "rel_error": stats.rel_error,
                        "cv": stats.cv,
                        "mean_t": stats.mean_iterations,
                        "mean_k": stats.mean_final_k,
                        "n_runs": stats.n_runs,
                    }
                )
            )
            return 0
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"failure: {exc}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
