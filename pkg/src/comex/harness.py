"""Experiment orchestration: configs, the optimizer outer loop, seed fanout.

One run = one seed. The per-run master seed spawns independent streams for
acquisition randomness and oracle noise, while the benchmark instance is
built from a separate instance seed, so paired comparisons across
algorithms and seeds share the same instance. The COMEX_THREADS environment
variable fans seeds out across worker processes; results are identical to
the sequential order either way.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .acquisition import AnnealSchedule, propose_query
from .baselines import random_search, simulated_annealing_direct
from .basis import MonomialBasis
from .benchmarks import (
    CountingOracle,
    contamination_make,
    contamination_oracle,
    ising_make,
    ising_oracle,
    load_instance,
    nqueens_make,
    nqueens_oracle,
)
from .benchmarks.contamination import ContaminationProblem
from .benchmarks.ising import IsingProblem
from .benchmarks.nqueens import NQueensProblem
from .domain import to_bits
from .results import RunTrace, build_trace
from .surrogate import MonomialSurrogate

__all__ = ["ExperimentConfig", "build_problem", "run_comex", "run_single",
           "run_experiment", "read_config_file"]

INNER_ITERS_PER_DIMENSION = 20


@dataclass
class ExperimentConfig:
    problem: str = "contamination"
    algorithm: str = "comex"            # comex | rs | sa
    budget: int = 250
    seeds: tuple[int, ...] = (0,)
    m: int = 2
    sparsity: float = 1.0
    omega: float = 0.5
    inner_iters: int | None = None      # None -> 20 * d proposals per acquisition
    eta: float | None = None            # None -> adaptive schedule
    wall_clock_budget: float | None = None
    wall_clock_mode: str = "total"      # total | algorithm
    instance_seed: int = 0
    instance_file: str | None = None
    warm_start: bool = False            # seed the first chain with the incumbent
    dedup: bool = False                 # re-anneal once on a duplicate proposal
    acq_chains: int = 1
    problem_params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if not self.seeds:
            raise ValueError("at least one seed is required")
        if self.wall_clock_mode not in ("total", "algorithm"):
            raise ValueError("wall_clock_mode must be 'total' or 'algorithm'")
        self.seeds = tuple(int(s) for s in self.seeds)

    def resolved_inner_iters(self, d: int) -> int:
        return self.inner_iters if self.inner_iters is not None else INNER_ITERS_PER_DIMENSION * d

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["seeds"] = list(self.seeds)
        return doc


def build_problem(config: ExperimentConfig):
    """Materialize the benchmark instance and its scaled oracle."""
    params = dict(config.problem_params)
    if config.instance_file:
        problem = load_instance(config.instance_file)
    else:
        rng = np.random.default_rng(config.instance_seed)
        if config.problem == "ising":
            problem = ising_make(rng, rows=int(params.pop("rows", 4)),
                                 cols=int(params.pop("cols", 4)),
                                 lambda_reg=float(params.pop("lambda_reg", 0.01)))
        elif config.problem == "contamination":
            problem = contamination_make(rng, d=int(params.pop("d", 21)),
                                         lambda_reg=float(params.pop("lambda_reg", 0.01)),
                                         **params)
            params = {}
        elif config.problem == "nqueens":
            problem = nqueens_make(n=int(params.pop("n", 5)),
                                   noise_sigma=float(params.pop("noise_sigma", 0.02)))
        else:
            raise ValueError(f"unknown problem {config.problem!r}")
    if isinstance(problem, IsingProblem):
        oracle = ising_oracle(problem)
    elif isinstance(problem, ContaminationProblem):
        oracle = contamination_oracle(problem)
    elif isinstance(problem, NQueensProblem):
        oracle = nqueens_oracle(problem)
    else:
        raise TypeError(f"unsupported problem type {type(problem)!r}")
    return problem, oracle


def _deadline(config: ExperimentConfig, start: float) -> float | None:
    if config.wall_clock_budget is None or config.wall_clock_mode != "total":
        return None
    return start + config.wall_clock_budget


def run_comex(oracle, config: ExperimentConfig, seed: int) -> RunTrace:
    """The optimizer outer loop: advance the acquisition walk over the
    surrogate, query the oracle, update the model.

    The acquisition is one persistent walk whose temperature cools with the
    outer step counter; each step advances it by `inner_iters` proposals on
    the current surrogate. Stops at the evaluation budget or the wall-clock
    budget, whichever comes first; the wall clock is only checked between
    steps. An oracle failure aborts the run and preserves the partial trace
    (flagged, with message).
    """
    constraint = oracle.constraint
    d = constraint.d
    acq_rng, noise_rng = [np.random.default_rng(s)
                          for s in np.random.SeedSequence(seed).spawn(2)]
    model = MonomialSurrogate(MonomialBasis(d, config.m), config.sparsity,
                              learning_rate=config.eta)
    schedule = AnnealSchedule(config.omega, d)
    inner = config.resolved_inner_iters(d)
    counting = CountingOracle(oracle)

    rows: list[dict] = []
    seen: set[bytes] = set()
    chain = None      # persistent acquisition walk state
    incumbent = None
    best_obs = np.inf
    algorithm_time = 0.0
    truncated = aborted = False
    error = None
    start = time.perf_counter()
    deadline = _deadline(config, start)

    for step in range(config.budget):
        if deadline is not None and time.perf_counter() >= deadline:
            truncated = True
            break
        if (config.wall_clock_budget is not None and config.wall_clock_mode == "algorithm"
                and algorithm_time >= config.wall_clock_budget):
            truncated = True
            break

        t0 = time.perf_counter()
        seed_point = incumbent if config.warm_start else chain
        x = propose_query(model, constraint, schedule, inner, acq_rng,
                          step=step, x_init=seed_point, n_chains=config.acq_chains)
        if config.dedup and x.tobytes() in seen:
            x = propose_query(model, constraint, schedule, inner, acq_rng, step=step)
        acq_time = time.perf_counter() - t0

        try:
            raw, obs = counting.observe(x, noise_rng)
        except Exception as exc:  # noqa: BLE001 - partial trace must survive
            aborted = True
            error = f"{type(exc).__name__}: {exc}"
            break

        t1 = time.perf_counter()
        model.update(x, obs)
        update_time = time.perf_counter() - t1

        chain = x
        seen.add(x.tobytes())
        if obs < best_obs:
            best_obs, incumbent = obs, x
        algorithm_time += acq_time + update_time
        rows.append({"query_bits": to_bits(x), "raw": raw, "scaled": obs,
                     "acq_time": acq_time, "update_time": update_time})

    assert counting.calls == len(rows) + (1 if aborted else 0)
    return build_trace("comex", seed, rows, oracle,
                       truncated=truncated, aborted=aborted, error=error)


def run_single(config: ExperimentConfig, seed: int) -> RunTrace:
    """Build the instance and run one algorithm for one seed."""
    _, oracle = build_problem(config)
    if config.algorithm == "comex":
        return run_comex(oracle, config, seed)
    acq_rng, noise_rng = [np.random.default_rng(s)
                          for s in np.random.SeedSequence(seed).spawn(2)]
    start = time.perf_counter()
    deadline = _deadline(config, start)
    if config.algorithm == "rs":
        return random_search(oracle, config.budget, acq_rng, noise_rng,
                             deadline=deadline, seed=seed)
    if config.algorithm == "sa":
        return simulated_annealing_direct(oracle, config.budget, config.omega,
                                          acq_rng, noise_rng, deadline=deadline,
                                          seed=seed)
    raise ValueError(f"unknown algorithm {config.algorithm!r}")


def run_experiment(config: ExperimentConfig) -> list[RunTrace]:
    """Run every seed; fan out across processes when COMEX_THREADS > 1."""
    workers = int(os.environ.get("COMEX_THREADS", "1"))
    if workers > 1 and len(config.seeds) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run_single, [config] * len(config.seeds), config.seeds))
    return [run_single(config, seed) for seed in config.seeds]


def read_config_file(path) -> dict[str, str]:
    """Parse a 'key = value' text config; '#' starts a comment."""
    values: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        values[key.strip().replace("-", "_")] = value.strip()
    return values
