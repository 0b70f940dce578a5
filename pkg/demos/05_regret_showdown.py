"""Optimizer versus baselines on the noisy queens benchmark.

Runs the surrogate-guided optimizer, random search, and direct annealing on
identical instances and seeds, prints the regret table, and exports the
summary CSV the external plotting scripts consume.

Takes a couple of minutes; shrink the budget or seed count to taste.
"""

import tempfile
from pathlib import Path

from comex import ExperimentConfig, export_summary_csv, run_experiment, summarize

BUDGET = 150
SEEDS = tuple(range(5))

summaries = {}
for algorithm in ("comex", "rs", "sa"):
    config = ExperimentConfig(
        problem="nqueens",
        algorithm=algorithm,
        budget=BUDGET,
        seeds=SEEDS,
        m=2,
        problem_params={"n": 5},
    )
    traces = run_experiment(config)
    summaries[algorithm] = summarize(traces)

print(f"noisy 5-queens, budget {BUDGET}, {len(SEEDS)} paired seeds")
print(f"{'algorithm':<10} {'final regret (mean+/-sem)':<28} {'median':<9} "
      f"{'ms/step':<8}")
for name, summary in summaries.items():
    print(f"{name:<10} {summary.final_mean:.4f} +/- {summary.final_stderr:.4f}"
          f"{'':<10} {summary.final_median:<9.4f} "
          f"{summary.mean_algorithm_time_per_step * 1e3:<8.2f}")

print("\nregret trajectory (mean over seeds) at checkpoints:")
checkpoints = [0, 24, 49, 99, BUDGET - 1]
header = "step     " + "".join(f"{k + 1:>8}" for k in checkpoints)
print(header)
for name, summary in summaries.items():
    row = "".join(f"{summary.mean_regret[k]:8.3f}" for k in checkpoints)
    print(f"{name:<9}{row}")

with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "comex_queens.csv"
    export_summary_csv(summaries["comex"], out)
    print(f"\nsummary CSV schema: {out.read_text().splitlines()[0]}")
