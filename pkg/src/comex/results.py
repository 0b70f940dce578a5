"""Run traces, simple-regret accounting, multi-seed summaries, and export.

A trace holds one row per oracle call. Simple regret at step t is the
smallest |observation - f*| over the first t observations, where f* is -1
for envelope-scaled oracles and the configured reference level otherwise.
Regret and best-so-far are therefore nonincreasing by construction. Wall
times are measurement metadata and are excluded from the determinism
contract.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "RunTrace",
    "Summary",
    "simple_regret",
    "summarize",
    "export_summary_csv",
    "load_summary_csv",
    "export_json",
]

CSV_HEADER = "step,mean_regret,stderr,mean_step_time_s"


def simple_regret(values, f_star: float) -> np.ndarray:
    """Running minimum of |value - f*|."""
    values = np.asarray(values, dtype=np.float64)
    return np.minimum.accumulate(np.abs(values - f_star))


@dataclass
class RunTrace:
    """Per-step record of one optimization run."""

    algorithm: str
    seed: int
    queries: list[np.ndarray]          # bit vectors
    raw_values: np.ndarray
    scaled_values: np.ndarray
    best_scaled: np.ndarray
    regret: np.ndarray
    acquisition_times: np.ndarray      # seconds spent producing each point
    update_times: np.ndarray           # seconds spent updating the model
    regret_anchor: float
    regret_axis: str = "scaled"        # 'raw' for reference-level oracles
    truncated: bool = False            # wall-clock budget cut the run short
    aborted: bool = False              # oracle failure; partial trace kept
    error: str | None = None

    def __len__(self):
        return len(self.scaled_values)

    @property
    def final_regret(self) -> float:
        return float(self.regret[-1])

    @property
    def best_query(self) -> np.ndarray:
        return self.queries[int(np.argmin(self.scaled_values))]

    def algorithm_times(self) -> np.ndarray:
        return self.acquisition_times + self.update_times


def build_trace(algorithm: str, seed: int, rows: list[dict], oracle,
                truncated: bool = False, aborted: bool = False,
                error: str | None = None) -> RunTrace:
    """Assemble a RunTrace from per-step row dicts (keys: query_bits, raw,
    scaled, acq_time, update_time); regret follows the oracle's anchor."""
    if not rows:
        raise ValueError("a run must contain at least one oracle call")
    raw = np.array([r["raw"] for r in rows])
    scaled = np.array([r["scaled"] for r in rows])
    anchor = oracle.regret_anchor
    axis = oracle.regret_axis
    if axis == "raw":
        if raw.min() < anchor:
            raise ValueError(
                f"reference level {anchor} is not below all observed values "
                f"(min observation {raw.min()})"
            )
        regret = simple_regret(raw, anchor)
    else:
        regret = simple_regret(scaled, anchor)
    return RunTrace(
        algorithm=algorithm,
        seed=seed,
        queries=[r["query_bits"] for r in rows],
        raw_values=raw,
        scaled_values=scaled,
        best_scaled=np.minimum.accumulate(scaled),
        regret=regret,
        acquisition_times=np.array([r["acq_time"] for r in rows]),
        update_times=np.array([r["update_time"] for r in rows]),
        regret_anchor=anchor,
        regret_axis=axis,
        truncated=truncated,
        aborted=aborted,
        error=error,
    )


@dataclass
class Summary:
    """Across-seed aggregate: per-step mean regret with standard error."""

    n_runs: int
    mean_regret: np.ndarray
    stderr: np.ndarray
    mean_step_time: np.ndarray
    final_regrets: np.ndarray
    n_padded: int = 0

    @property
    def length(self) -> int:
        return len(self.mean_regret)

    @property
    def final_mean(self) -> float:
        return float(self.final_regrets.mean())

    @property
    def final_stderr(self) -> float:
        if self.n_runs < 2:
            return 0.0
        return float(self.final_regrets.std(ddof=1) / np.sqrt(self.n_runs))

    @property
    def final_median(self) -> float:
        return float(np.median(self.final_regrets))

    @property
    def mean_algorithm_time_per_step(self) -> float:
        return float(self.mean_step_time.mean())


def summarize(traces: list[RunTrace]) -> Summary:
    """Per-step mean regret and standard error of the mean across runs.

    Shorter (wall-clock-truncated) traces are padded by carrying the last
    regret forward; padding is counted in n_padded. Step times cover the
    algorithm only (acquisition + model update), never the oracle.
    """
    if not traces:
        raise ValueError("cannot summarize an empty list of traces")
    length = max(len(t) for t in traces)
    n_padded = sum(1 for t in traces if len(t) < length)
    regrets = np.stack([
        np.concatenate([t.regret, np.full(length - len(t), t.regret[-1])])
        for t in traces
    ])
    times = np.stack([
        np.concatenate([t.algorithm_times(), np.zeros(length - len(t))])
        for t in traces
    ])
    n = len(traces)
    stderr = (regrets.std(axis=0, ddof=1) / np.sqrt(n)) if n > 1 else np.zeros(length)
    return Summary(
        n_runs=n,
        mean_regret=regrets.mean(axis=0),
        stderr=stderr,
        mean_step_time=times.mean(axis=0),
        final_regrets=np.array([t.final_regret for t in traces]),
        n_padded=n_padded,
    )


def export_summary_csv(summary: Summary, path) -> None:
    """Fixed-schema CSV; floats at full round-trip precision."""
    lines = [CSV_HEADER]
    for k in range(summary.length):
        lines.append(
            f"{k + 1},{float(summary.mean_regret[k])!r},"
            f"{float(summary.stderr[k])!r},{float(summary.mean_step_time[k])!r}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


def load_summary_csv(path) -> dict[str, np.ndarray]:
    lines = Path(path).read_text().strip().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: unexpected CSV header")
    rows = [line.split(",") for line in lines[1:]]
    return {
        "step": np.array([int(r[0]) for r in rows]),
        "mean_regret": np.array([float(r[1]) for r in rows]),
        "stderr": np.array([float(r[2]) for r in rows]),
        "mean_step_time_s": np.array([float(r[3]) for r in rows]),
    }


def _trace_to_dict(trace: RunTrace) -> dict:
    return {
        "algorithm": trace.algorithm,
        "seed": trace.seed,
        "queries": ["".join(str(int(b)) for b in q) for q in trace.queries],
        "raw_values": [float(v) for v in trace.raw_values],
        "scaled_values": [float(v) for v in trace.scaled_values],
        "best_scaled": [float(v) for v in trace.best_scaled],
        "regret": [float(v) for v in trace.regret],
        "acquisition_times": [float(v) for v in trace.acquisition_times],
        "update_times": [float(v) for v in trace.update_times],
        "regret_anchor": float(trace.regret_anchor),
        "regret_axis": trace.regret_axis,
        "truncated": trace.truncated,
        "aborted": trace.aborted,
        "error": trace.error,
    }


def export_json(path, config: dict, traces: list[RunTrace],
                summary: Summary | None = None) -> None:
    """Traces plus a config echo (and optionally the summary) as JSON."""
    doc: dict = {"config": config, "traces": [_trace_to_dict(t) for t in traces]}
    if summary is not None:
        doc["summary"] = {
            "n_runs": summary.n_runs,
            "mean_regret": [float(v) for v in summary.mean_regret],
            "stderr": [float(v) for v in summary.stderr],
            "mean_step_time_s": [float(v) for v in summary.mean_step_time],
            "final_regrets": [float(v) for v in summary.final_regrets],
            "n_padded": summary.n_padded,
        }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")
