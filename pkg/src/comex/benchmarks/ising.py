"""Interaction-pruning benchmark on a grid spin model.

A zero-field pairwise model p(z) ∝ exp(z^T J z) lives on a grid graph; a
binary decision vector x keeps or deletes each interaction, giving
q_x(z) ∝ exp(z^T (x∘J) z). The objective is KL(p || q_x) plus an l1 cost
per kept edge. The KL term is computed exactly from cached pair
expectations of p and a fresh exact partition value for q_x, so the oracle
is deterministic; node counts beyond enumeration scale are refused.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from ..domain import Unconstrained, to_bits
from .base import Known, Oracle

__all__ = ["grid_edges", "IsingProblem", "ising_make", "ising_oracle"]

MAX_NODES = 20
EXHAUSTIVE_EDGE_LIMIT = 16
COUPLING_RANGE = (0.05, 5.0)


def grid_edges(rows: int, cols: int) -> list[tuple[int, int]]:
    """Edges of the rows x cols grid graph, row-major node ids."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            u = r * cols + c
            if c + 1 < cols:
                edges.append((u, u + 1))
            if r + 1 < rows:
                edges.append((u, u + cols))
    return edges


@dataclass
class IsingProblem:
    rows: int
    cols: int
    edges: list[tuple[int, int]]
    coupling: np.ndarray  # one positive weight per edge
    lambda_reg: float
    _states: np.ndarray = field(init=False, repr=False)        # (2^n, n) spins
    _pair_spins: np.ndarray = field(init=False, repr=False)    # (2^n, d) edge products
    _log_z_p: float = field(init=False, repr=False)
    _pair_expect: np.ndarray = field(init=False, repr=False)   # E_p[z_u z_v] per edge

    def __post_init__(self):
        n = self.n_nodes
        if n > MAX_NODES:
            raise ValueError(f"exact enumeration refused for more than {MAX_NODES} nodes")
        self.coupling = np.asarray(self.coupling, dtype=np.float64)
        if self.coupling.shape != (self.d,):
            raise ValueError("one coupling per edge required")
        codes = np.arange(2**n, dtype=np.int64)
        bits = (codes[:, None] >> np.arange(n - 1, -1, -1)) & 1
        self._states = (2 * bits - 1).astype(np.int8)
        u = np.array([e[0] for e in self.edges])
        v = np.array([e[1] for e in self.edges])
        self._pair_spins = (self._states[:, u] * self._states[:, v]).astype(np.int8)
        # z^T J z with symmetric J and zero diagonal double-counts each edge.
        energy = self._pair_spins @ (2.0 * self.coupling)
        self._log_z_p = float(logsumexp(energy))
        probs = np.exp(energy - self._log_z_p)
        self._pair_expect = probs @ self._pair_spins

    @property
    def n_nodes(self) -> int:
        return self.rows * self.cols

    @property
    def d(self) -> int:
        return len(self.edges)

    @property
    def log_z_p(self) -> float:
        return self._log_z_p

    @property
    def pair_expectations(self) -> np.ndarray:
        return self._pair_expect.copy()

    def evaluate_bits(self, bits: np.ndarray) -> float:
        """KL(p || q_x) + lambda_reg * (#kept edges); bit 1 keeps the edge."""
        kept = np.asarray(bits, dtype=np.float64)
        energy_q = self._pair_spins @ (2.0 * self.coupling * kept)
        log_z_q = float(logsumexp(energy_q))
        kl = float((2.0 * self.coupling * (1.0 - kept)) @ self._pair_expect) \
            + log_z_q - self._log_z_p
        return kl + self.lambda_reg * float(kept.sum())

    def evaluate(self, x) -> float:
        return self.evaluate_bits(to_bits(x))

    def exhaustive_values(self) -> np.ndarray:
        """Objective for every subset of edges, indexed by the kept-edge mask
        read as a binary code (edge 0 most significant)."""
        if self.d > EXHAUSTIVE_EDGE_LIMIT:
            raise ValueError(f"exhaustive evaluation refused for d > {EXHAUSTIVE_EDGE_LIMIT}")
        codes = np.arange(2**self.d, dtype=np.int64)
        masks = ((codes[:, None] >> np.arange(self.d - 1, -1, -1)) & 1).astype(np.float64)
        energy_q = self._pair_spins @ (2.0 * self.coupling * masks).T  # (2^n, 2^d)
        log_z_q = logsumexp(energy_q, axis=0)
        kl = (1.0 - masks) @ (2.0 * self.coupling * self._pair_expect) \
            + log_z_q - self._log_z_p
        return kl + self.lambda_reg * masks.sum(axis=1)

    def to_dict(self) -> dict:
        return {
            "kind": "ising",
            "rows": self.rows,
            "cols": self.cols,
            "edges": [list(e) for e in self.edges],
            "coupling": self.coupling,
            "lambda_reg": self.lambda_reg,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "IsingProblem":
        return cls(
            rows=int(data["rows"]),
            cols=int(data["cols"]),
            edges=[tuple(e) for e in data["edges"]],
            coupling=np.asarray(data["coupling"], dtype=np.float64),
            lambda_reg=float(data["lambda_reg"]),
        )


def ising_make(rng: np.random.Generator, rows: int = 4, cols: int = 4,
               lambda_reg: float = 0.01) -> IsingProblem:
    """Random instance: grid topology, couplings uniform on [0.05, 5]."""
    edges = grid_edges(rows, cols)
    coupling = rng.uniform(*COUPLING_RANGE, size=len(edges))
    return IsingProblem(rows=rows, cols=cols, edges=edges,
                        coupling=coupling, lambda_reg=lambda_reg)


def ising_oracle(problem: IsingProblem) -> Oracle:
    """Wrap an instance as a scaled oracle.

    Small instances get the exact [min, max] envelope from full enumeration;
    larger ones a provable envelope (KL is at most 2*sum(J) + n*log 2, and
    the objective is nonnegative).
    """
    if problem.d <= EXHAUSTIVE_EDGE_LIMIT:
        values = problem.exhaustive_values()
        bounds = Known(float(values.min()), float(values.max()))
    else:
        hi = float(2.0 * problem.coupling.sum() + problem.n_nodes * math.log(2.0)
                   + problem.lambda_reg * problem.d)
        bounds = Known(0.0, hi)
    return Oracle(
        name="ising",
        constraint=Unconstrained(problem.d),
        raw_fn=problem.evaluate,
        bounds=bounds,
        params={"rows": problem.rows, "cols": problem.cols,
                "lambda_reg": problem.lambda_reg},
    )
