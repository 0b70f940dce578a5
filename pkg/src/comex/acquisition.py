"""Query selection: annealed neighborhood search over a score function, and
the exact low-dimension Boltzmann acquisition used for analysis checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from .domain import (
    ConstraintSet,
    Unconstrained,
    apply_flips,
    contains,
    enumerate_points,
    neighbor_move,
    sample_uniform,
)
from .surrogate import MonomialBasis, MonomialSurrogate, TrueCoefficients, kl_divergence

__all__ = [
    "AnnealSchedule",
    "simulated_annealing",
    "propose_query",
    "BoltzmannPmf",
    "exponential_pmf",
    "pmf_kl",
    "exponential_acquisition_audit",
    "AcquisitionAuditStep",
    "AcquisitionAuditReport",
]

PMF_DIMENSION_LIMIT = 12


@dataclass(frozen=True)
class AnnealSchedule:
    """Exponentially decaying temperature s(t) = exp(-omega * t / d)."""

    omega: float
    d: int

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError("decay parameter omega must be positive")
        if self.d < 1:
            raise ValueError("dimension must be a positive integer")

    def __call__(self, t: int) -> float:
        return math.exp(-self.omega * t / self.d)


def _accept_probability(delta: float, temperature: float) -> float:
    # delta > 0 here; exp underflows cleanly to 0.0 for tiny temperatures.
    if temperature <= 0.0:
        return 0.0
    return math.exp(-delta / temperature)


def simulated_annealing(score, constraint: ConstraintSet, schedule,
                        n_iters: int, x_init, rng: np.random.Generator,
                        move_score=None) -> np.ndarray:
    """Annealed walk minimizing `score`; returns the final point of the chain.

    `schedule` is any callable t -> temperature (an AnnealSchedule or a
    constant). Each iteration draws one uniform neighbor; an improving (or
    equal) proposal is always accepted, a worsening one with probability
    exp(-(cand - current)/s(t)). When `move_score(x, fx, move)` is given,
    neighbors are scored incrementally without materializing the flipped
    point (the surrogate's flip corrections); otherwise `score` is called on
    the flipped point directly.
    """
    x = np.asarray(x_init, dtype=np.float64).copy()
    if not contains(constraint, x):
        raise ValueError("initial point does not satisfy the constraint set")
    if n_iters <= 0:
        return x
    fx = float(score(x))
    for t in range(n_iters):
        move = neighbor_move(constraint, x, rng)
        if move_score is not None:
            cand = float(move_score(x, fx, move))
        else:
            cand = float(score(apply_flips(x, move)))
        if cand <= fx or rng.random() <= _accept_probability(cand - fx, schedule(t)):
            x[list(move)] *= -1.0
            fx = cand
    return x


def _surrogate_move_score(model: MonomialSurrogate):
    def move_score(x, fx, move):
        if len(move) == 1:
            return model.predict_flip_delta(x, fx, move[0])
        return model.predict_two_flip_delta(x, fx, move[0], move[1])

    return move_score


def propose_query(model: MonomialSurrogate, constraint: ConstraintSet,
                  schedule: AnnealSchedule, n_iters: int, rng: np.random.Generator,
                  step: int = 0, x_init=None, n_chains: int = 1) -> np.ndarray:
    """Advance the acquisition walk over the surrogate by n_iters proposals.

    The walk runs at the single temperature s(step), where `step` is the
    outer evaluation counter: one cooling step per oracle evaluation, so the
    anneal completes over the whole run rather than inside one acquisition
    (a fully cooled per-step anneal collapses onto the surrogate argmin and
    deadlocks on noiseless objectives). At s(step) the walk is a Metropolis
    sampler of exp(-prediction/s), the acquisition distribution the
    Boltzmann audit analyzes. `x_init` continues the persistent chain; when
    None the chain starts fresh from a uniform point. With several chains
    the first continues from x_init, the rest restart uniformly, and the
    lowest-scoring final point wins; chains run sequentially so the result
    is a pure function of the rng.
    """
    temperature = schedule(step)
    best_x, best_fx = None, math.inf
    for chain in range(max(1, n_chains)):
        start = x_init if (chain == 0 and x_init is not None) else sample_uniform(constraint, rng)
        x = simulated_annealing(model.predict, constraint, lambda _: temperature,
                                n_iters, start, rng,
                                move_score=_surrogate_move_score(model))
        fx = model.predict(x)
        if fx < best_fx:
            best_x, best_fx = x, fx
    return best_x


# -- exact Boltzmann acquisition (analysis only) -----------------------------


@dataclass
class BoltzmannPmf:
    """Exact pmf proportional to exp(-f(x)/T) over the full cube.

    Probabilities are indexed by the row order of
    enumerate_points(Unconstrained(d)).
    """

    temperature: float
    probs: np.ndarray
    log_partition: float

    @property
    def partition(self) -> float:
        return math.exp(self.log_partition)


def exponential_pmf(values, d: int, temperature: float) -> BoltzmannPmf:
    """Boltzmann distribution over all 2^d points, computed with a max shift.

    `values` is either a callable on spin points or a precomputed vector of
    length 2^d in enumeration order. Enumeration only: refuses d beyond
    PMF_DIMENSION_LIMIT.
    """
    if d > PMF_DIMENSION_LIMIT:
        raise ValueError(f"exact acquisition pmf needs d <= {PMF_DIMENSION_LIMIT}")
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    if callable(values):
        points = enumerate_points(Unconstrained(d))
        values = np.array([float(values(x)) for x in points])
    else:
        values = np.asarray(values, dtype=np.float64)
        if values.shape != (2**d,):
            raise ValueError(f"expected 2^{d} values, got shape {values.shape}")
    logits = -values / temperature
    log_z = float(logsumexp(logits))
    return BoltzmannPmf(temperature, np.exp(logits - log_z), log_z)


def pmf_kl(p: np.ndarray, q: np.ndarray) -> float:
    """KL divergence (natural log) between two strictly positive pmfs."""
    return float(np.sum(p * np.log(p / q)))


@dataclass
class AcquisitionAuditStep:
    step: int
    epsilon: float
    expected_drop: float
    bound: float
    holds: bool
    mc_error: float | None = None


@dataclass
class AcquisitionAuditReport:
    d: int
    m: int
    temperature: float
    eta: float
    sparsity: float
    steps: list[AcquisitionAuditStep] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(s.holds for s in self.steps)


def exponential_acquisition_audit(d: int, m: int, temperature: float, eta: float,
                                  n_steps: int, rng: np.random.Generator,
                                  alpha_star: np.ndarray | None = None,
                                  sparsity: float = 1.0, trials: int | None = None,
                                  slack: float = 1e-10) -> AcquisitionAuditReport:
    """Audit the Boltzmann-acquisition guarantee on an enumerable instance.

    At each step the exact sampling pmfs of the surrogate and of the true
    function are formed, the gap
        eps = | KL(surrogate pmf || true pmf) - log(Z_true / Z_surrogate) |
    is measured, and the expectation (under the surrogate pmf) of the
    one-step KL drop is computed by enumeration (or estimated from `trials`
    samples). The audit asserts
        E[drop] >= 2 * eta * sparsity * eps^2 * T^2 - eta^2.
    The next query is then drawn from the surrogate pmf and the model updated.
    Requires target coefficients that are nonnegative on the simplex so the
    KL potential is defined; values then automatically lie in [-1, 1].
    """
    basis = MonomialBasis(d, m)
    if alpha_star is None:
        alpha_star = rng.dirichlet(np.ones(basis.p))
    target = TrueCoefficients(np.asarray(alpha_star, dtype=np.float64))
    dual = target.dual_simplex()

    points = enumerate_points(Unconstrained(d))
    features = np.stack([basis.features(x) for x in points])
    f_true = features @ target.alpha

    model = MonomialSurrogate(basis, sparsity, learning_rate=eta)
    report = AcquisitionAuditReport(d=d, m=m, temperature=temperature,
                                    eta=eta, sparsity=sparsity)
    for step in range(n_steps):
        f_hat = features @ model.coefficients
        surrogate_pmf = exponential_pmf(f_hat, d, temperature)
        true_pmf = exponential_pmf(f_true, d, temperature)
        epsilon = abs(pmf_kl(surrogate_pmf.probs, true_pmf.probs)
                      - (true_pmf.log_partition - surrogate_pmf.log_partition))

        phi = kl_divergence(dual, model)

        def one_step_drop(idx: int) -> float:
            trial = model.copy()
            trial.update(points[idx], f_true[idx])
            return phi - kl_divergence(dual, trial)

        mc_error = None
        if trials is None:
            drops = np.array([one_step_drop(i) for i in range(points.shape[0])])
            expected = float(surrogate_pmf.probs @ drops)
        else:
            idxs = rng.choice(points.shape[0], size=trials, p=surrogate_pmf.probs)
            drops = np.array([one_step_drop(i) for i in idxs])
            expected = float(drops.mean())
            mc_error = float(drops.std(ddof=1) / math.sqrt(trials)) if trials > 1 else math.inf

        bound = 2.0 * eta * sparsity * epsilon**2 * temperature**2 - eta**2
        tolerance = slack + (3.0 * mc_error if mc_error is not None else 0.0)
        report.steps.append(AcquisitionAuditStep(step, epsilon, expected, bound,
                                                 expected >= bound - tolerance, mc_error))

        nxt = int(rng.choice(points.shape[0], p=surrogate_pmf.probs))
        model.update(points[nxt], f_true[nxt])
    return report
