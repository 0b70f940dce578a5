"""Command-line entry point.

Subcommands:
  run              one experiment (problem x algorithm x seeds), CSV/JSON out
  audit-lemma1     per-step check of the KL-drop inequality for the updates
  audit-theorem1   per-step check of the Boltzmann-acquisition guarantee
  bench-step-time  per-step algorithm-time profile of the optimizer

Exit codes: 0 success (all checks passed where applicable), 1 failed checks
or runtime error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .acquisition import exponential_acquisition_audit
from .harness import ExperimentConfig, build_problem, read_config_file, run_experiment
from .results import export_json, export_summary_csv, summarize
from .benchmarks import save_instance
from .surrogate import kl_drop_audit

__all__ = ["main"]


def parse_seeds(spec: str) -> tuple[int, ...]:
    """'0..9' (inclusive range), '0,3,7', or a single integer."""
    spec = spec.strip()
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return tuple(range(int(lo), int(hi) + 1))
    if "," in spec:
        return tuple(int(s) for s in spec.split(",") if s.strip())
    return (int(spec),)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="comex",
        description="Black-box minimization on the Boolean hypercube "
                    "(monomial-expert surrogate + annealed acquisition).",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    run = sub.add_parser("run", help="run one experiment and export results",
                         formatter_class=fmt)
    run.add_argument("--config", help="key = value file; explicit flags override it")
    run.add_argument("--problem", choices=["ising", "contamination", "nqueens"],
                     default="contamination")
    run.add_argument("--algo", choices=["comex", "rs", "sa"], default="comex")
    run.add_argument("--budget", type=int, default=250, help="oracle evaluations per run")
    run.add_argument("--seeds", type=str, default="0",
                     help="e.g. '0..9' or '0,1,4' (default: 0)")
    run.add_argument("--m", type=int, default=2, help="maximum monomial order")
    run.add_argument("--lambda", dest="sparsity", type=float, default=1.0,
                     help="total weight mass of the surrogate")
    run.add_argument("--omega", type=float, default=0.5, help="annealing decay")
    run.add_argument("--inner-iters", type=int, default=None,
                     help="annealing proposals per acquisition (default 20*d)")
    run.add_argument("--eta", type=str, default="adaptive",
                     help="'adaptive' or a fixed step size")
    run.add_argument("--time-budget", type=float, default=None,
                     help="wall-clock budget in seconds")
    run.add_argument("--clock", choices=["total", "algorithm"], default="total",
                     help="which clock counts toward the time budget")
    run.add_argument("--instance-seed", type=int, default=0)
    run.add_argument("--instance-file", type=str, default=None,
                     help="load a frozen benchmark instance")
    run.add_argument("--save-instance", type=str, default=None,
                     help="write the instance file and continue")
    run.add_argument("--warm-start", action="store_true",
                     help="seed the first annealing chain with the incumbent")
    run.add_argument("--dedup", action="store_true",
                     help="re-anneal once when a proposal repeats an old query")
    run.add_argument("--chains", type=int, default=1,
                     help="annealing chains per acquisition (best result wins)")
    run.add_argument("--n", type=int, default=None, help="board side (nqueens)")
    run.add_argument("--d", type=int, default=None, help="number of stages (contamination)")
    run.add_argument("--rows", type=int, default=None, help="grid rows (ising)")
    run.add_argument("--cols", type=int, default=None, help="grid cols (ising)")
    run.add_argument("--lambda-reg", type=float, default=None,
                     help="l1 regularization weight (ising/contamination)")
    run.add_argument("--noise-sigma", type=float, default=None,
                     help="observation noise level (nqueens)")
    run.add_argument("--out", type=str, default=None, help="output path")
    run.add_argument("--format", choices=["csv", "json"], default="csv")

    drop_audit = sub.add_parser("audit-lemma1", formatter_class=fmt,
                                help="per-step PASS/FAIL of the update KL-drop inequality")
    drop_audit.add_argument("--d", type=int, default=6)
    drop_audit.add_argument("--m", type=int, default=2)
    drop_audit.add_argument("--eta", type=float, default=0.01)
    drop_audit.add_argument("--steps", type=int, default=200)
    drop_audit.add_argument("--lambda", dest="sparsity", type=float, default=1.0)
    drop_audit.add_argument("--instances", type=int, default=1)
    drop_audit.add_argument("--seed", type=int, default=0)
    drop_audit.add_argument("--quiet", action="store_true", help="print failures only")

    acq_audit = sub.add_parser("audit-theorem1", formatter_class=fmt,
                               help="per-step PASS/FAIL of the acquisition guarantee")
    acq_audit.add_argument("--d", type=int, default=6)
    acq_audit.add_argument("--m", type=int, default=2)
    acq_audit.add_argument("--temperature", "--T", dest="temperature", type=float, default=1.0)
    acq_audit.add_argument("--eta", type=float, default=0.01)
    acq_audit.add_argument("--steps", type=int, default=5)
    acq_audit.add_argument("--instances", type=int, default=1)
    acq_audit.add_argument("--seed", type=int, default=0)

    bench = sub.add_parser("bench-step-time", formatter_class=fmt,
                           help="per-step algorithm time, early vs late windows")
    bench.add_argument("--problem", choices=["ising", "contamination", "nqueens"],
                       default="contamination")
    bench.add_argument("--budget", type=int, default=500)
    bench.add_argument("--m", type=int, default=2)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--d", type=int, default=None)
    bench.add_argument("--n", type=int, default=None)
    return parser


def _run_command(args, argv) -> int:
    if args.config:
        file_values = read_config_file(args.config)
        # Explicit command-line flags win; config fills the rest.
        provided = {a.split("=", 1)[0] for a in argv if a.startswith("--")}
        for key, value in file_values.items():
            flag = "--" + key.replace("_", "-")
            if flag in provided:
                continue
            setattr(args, _CONFIG_KEYS.get(key, key), _coerce(key, value))

    problem_params = {}
    if args.n is not None:
        problem_params["n"] = args.n
    if args.d is not None:
        problem_params["d"] = args.d
    if args.rows is not None:
        problem_params["rows"] = args.rows
    if args.cols is not None:
        problem_params["cols"] = args.cols
    if args.lambda_reg is not None:
        problem_params["lambda_reg"] = args.lambda_reg
    if args.noise_sigma is not None:
        problem_params["noise_sigma"] = args.noise_sigma

    eta = None if str(args.eta) == "adaptive" else float(args.eta)
    config = ExperimentConfig(
        problem=args.problem,
        algorithm=args.algo,
        budget=args.budget,
        seeds=parse_seeds(str(args.seeds)),
        m=args.m,
        sparsity=args.sparsity,
        omega=args.omega,
        inner_iters=args.inner_iters,
        eta=eta,
        wall_clock_budget=args.time_budget,
        wall_clock_mode=args.clock,
        instance_seed=args.instance_seed,
        instance_file=args.instance_file,
        warm_start=args.warm_start,
        dedup=args.dedup,
        acq_chains=args.chains,
        problem_params=problem_params,
    )

    if args.save_instance:
        problem, _ = build_problem(config)
        save_instance(problem, args.save_instance)
        print(f"instance written to {args.save_instance}")

    traces = run_experiment(config)
    summary = summarize(traces)
    print(f"{config.problem} / {config.algorithm}: {summary.n_runs} run(s), "
          f"{summary.length} steps")
    print(f"final regret: mean {summary.final_mean:.6f} "
          f"+/- {summary.final_stderr:.6f}, median {summary.final_median:.6f}")
    print(f"mean algorithm time per step: "
          f"{summary.mean_algorithm_time_per_step * 1e3:.3f} ms")
    for trace in traces:
        if trace.aborted:
            print(f"seed {trace.seed}: ABORTED after {len(trace)} steps ({trace.error})")
        elif trace.truncated:
            print(f"seed {trace.seed}: wall-clock truncated at {len(trace)} steps")

    if args.out:
        if args.format == "csv":
            export_summary_csv(summary, args.out)
        else:
            export_json(args.out, config.to_dict(), traces, summary)
        print(f"results written to {args.out}")
    return 1 if any(t.aborted for t in traces) else 0


_CONFIG_KEYS = {"algo": "algo", "lambda": "sparsity", "time_budget": "time_budget"}


def _coerce(key: str, value: str):
    if value.lower() in ("true", "false"):
        return value.lower() == "true"
    for cast in (int, float):
        try:
            return cast(value)
        except ValueError:
            continue
    return value


def _drop_audit_command(args) -> int:
    failures = 0
    for k in range(args.instances):
        rng = np.random.default_rng(args.seed + k)
        report = kl_drop_audit(args.d, args.m, args.eta, args.steps, rng,
                               sparsity=args.sparsity)
        for step in report.steps:
            if not args.quiet or not step.holds:
                verdict = "PASS" if step.holds else "FAIL"
                print(f"instance {k} step {step.step:4d}: drop={step.drop: .3e} "
                      f"bound={step.bound: .3e} loss={step.loss: .4f} {verdict}")
        failures += len(report.violations)
        print(f"instance {k}: {args.steps - len(report.violations)}/{args.steps} steps hold")
    if failures:
        print(f"FAIL: {failures} step(s) violate the KL-drop inequality")
        return 1
    print("PASS: every audited step satisfies the KL-drop inequality")
    return 0


def _acq_audit_command(args) -> int:
    failures = 0
    for k in range(args.instances):
        rng = np.random.default_rng(args.seed + k)
        report = exponential_acquisition_audit(args.d, args.m, args.temperature,
                                               args.eta, args.steps, rng)
        for step in report.steps:
            verdict = "PASS" if step.holds else "FAIL"
            print(f"instance {k} step {step.step:3d}: eps={step.epsilon:.5f} "
                  f"E[drop]={step.expected_drop: .3e} bound={step.bound: .3e} {verdict}")
        failures += sum(not s.holds for s in report.steps)
    if failures:
        print(f"FAIL: {failures} step(s) violate the acquisition bound")
        return 1
    print("PASS: every audited step satisfies the acquisition bound")
    return 0


def _bench_command(args) -> int:
    problem_params = {}
    if args.d is not None:
        problem_params["d"] = args.d
    if args.n is not None:
        problem_params["n"] = args.n
    config = ExperimentConfig(problem=args.problem, algorithm="comex",
                              budget=args.budget, seeds=(args.seed,), m=args.m,
                              problem_params=problem_params)
    [trace] = run_experiment(config)
    times = trace.algorithm_times()
    early = times[: min(100, len(times))]
    late = times[max(0, len(times) - 100):]
    ratio = late.mean() / early.mean() if early.mean() > 0 else float("inf")
    print(f"steps: {len(times)}")
    print(f"mean algorithm time, steps 1-{len(early)}: {early.mean() * 1e3:.3f} ms")
    print(f"mean algorithm time, last {len(late)}: {late.mean() * 1e3:.3f} ms")
    print(f"late/early ratio: {ratio:.3f}")
    print(f"overall mean: {times.mean() * 1e3:.3f} ms/step, max {times.max() * 1e3:.3f} ms")
    return 0


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on --help and usage errors
        return int(exc.code or 0)
    try:
        if args.command == "run":
            return _run_command(args, argv)
        if args.command == "audit-lemma1":
            return _drop_audit_command(args)
        if args.command == "audit-theorem1":
            return _acq_audit_command(args)
        if args.command == "bench-step-time":
            return _bench_command(args)
        raise ValueError(f"unknown command {args.command!r}")
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
