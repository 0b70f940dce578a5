"""Monomial-expert surrogate model learned by multiplicative weight updates.

The model keeps a nonnegative weight pair (w_plus[i], w_minus[i]) per
monomial; the signed coefficient of monomial i is w_plus[i] - w_minus[i].
After observing the value fx at a point x, with prediction error
loss = fhat(x) - fx, every pair member is multiplied by
exp(-/+ eta * 2 * sparsity * loss * psi_i(x)) and the whole 2p-weight
vector is rescaled to total mass `sparsity`. Predictions are therefore
always bounded by the sparsity mass, and the per-step cost is linear in
the number of monomials, independent of how many updates happened before.

The step size is either fixed or follows an anytime schedule driven by two
running statistics of the signed loss quantities z_{i,gamma} =
-gamma * 2 * sparsity * loss * psi_i(x): a dyadic bound e on their observed
range, and a cumulative weighted variance v.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .basis import MonomialBasis
from .domain import Unconstrained, sample_uniform

__all__ = [
    "ADAPTIVE_C",
    "LearningRateSchedule",
    "UpdateDiagnostics",
    "MonomialSurrogate",
    "TrueCoefficients",
    "kl_divergence",
    "kl_drop_audit",
    "DropAuditStep",
    "DropAuditReport",
]

# Constant in the anytime step-size schedule: sqrt(2(sqrt(2)-1)/(e-2)).
ADAPTIVE_C = math.sqrt(2.0 * (math.sqrt(2.0) - 1.0) / (math.e - 2.0))


def _dyadic_ceil(r: float) -> float:
    """Smallest power of two >= r, for r > 0."""
    mant, exp = math.frexp(r)  # r = mant * 2**exp with mant in [0.5, 1)
    return math.ldexp(1.0, exp - 1) if mant == 0.5 else math.ldexp(1.0, exp)


class LearningRateSchedule:
    """Step-size state: counter t, dyadic range bound e, cumulative variance v.

    With a fixed eta the statistics are still tracked but the returned step
    size never changes. In adaptive mode eta_t = min(1/e, C*sqrt(log(2p)/v));
    before the first nonzero loss both arms are undefined and the fallback
    min(1/(8*sparsity), 0.5) is returned.
    """

    def __init__(self, eta: float | None = None):
        if eta is not None and eta <= 0:
            raise ValueError("fixed step size must be positive")
        self.eta = eta
        self.t = 0
        self.e = 0.0
        self.v = 0.0

    @property
    def adaptive(self) -> bool:
        return self.eta is None

    def current(self, p: int, sparsity: float) -> float:
        if not self.adaptive:
            return self.eta
        if self.e == 0.0 or self.v == 0.0:
            return min(1.0 / (8.0 * sparsity), 0.5)
        return min(1.0 / self.e, ADAPTIVE_C * math.sqrt(math.log(2 * p) / self.v))

    def advance(self, z_range: float, var_increment: float) -> None:
        """Fold one step's range and weighted variance into the state."""
        self.t += 1
        if z_range > 0.0:
            self.e = max(self.e, _dyadic_ceil(z_range))
        self.v += var_increment

    def copy(self) -> "LearningRateSchedule":
        out = LearningRateSchedule(self.eta)
        out.t, out.e, out.v = self.t, self.e, self.v
        return out

    def __repr__(self):
        mode = "fixed" if not self.adaptive else "adaptive"
        return f"LearningRateSchedule({mode}, t={self.t}, e={self.e}, v={self.v})"


@dataclass
class UpdateDiagnostics:
    """Per-update report: mixture loss, step size used, weight mass before/after."""

    loss: float
    eta: float
    mass_before: float
    mass_after: float


class MonomialSurrogate:
    """Degree-bounded multilinear surrogate with dual exponential weights."""

    def __init__(self, basis: MonomialBasis, sparsity: float = 1.0,
                 learning_rate: float | LearningRateSchedule | None = None):
        if sparsity <= 0:
            raise ValueError("sparsity mass must be positive")
        self.basis = basis
        self.sparsity = float(sparsity)
        p = basis.p
        # Uniform prior of total mass 1; the first update renormalizes to the
        # sparsity mass. All effective coefficients start at exactly 0.
        self.w_plus = np.full(p, 1.0 / (2 * p))
        self.w_minus = np.full(p, 1.0 / (2 * p))
        if isinstance(learning_rate, LearningRateSchedule):
            self.lr = learning_rate
        else:
            self.lr = LearningRateSchedule(learning_rate)
        self._eff = np.zeros(p)

    @property
    def coefficients(self) -> np.ndarray:
        """Signed coefficients w_plus - w_minus (kept in sync with updates)."""
        return self._eff

    @property
    def mass(self) -> float:
        return float(self.w_plus.sum() + self.w_minus.sum())

    def predict(self, x) -> float:
        """Surrogate value at x; always within +/- total weight mass."""
        return float(self._eff @ self.basis.features(x))

    def predict_flip_delta(self, x, fx_hat: float, i: int) -> float:
        """Prediction at x with coordinate i sign-flipped.

        fx_hat must equal predict(x); only the terms containing i are touched.
        """
        x_aug = self.basis._augment(x)
        return fx_hat - 2.0 * self.basis.flip_weight_sum(x_aug, self._eff, i)

    def predict_two_flip_delta(self, x, fx_hat: float, i: int, j: int) -> float:
        """Prediction at x with coordinates i and j both flipped (a swap move).

        Computed as two chained single-flip corrections; the second flip is
        evaluated on the point with i already flipped, which negates the
        monomials containing both coordinates.
        """
        x_aug = self.basis._augment(x)
        s_i = self.basis.flip_weight_sum(x_aug, self._eff, i)
        s_j = self.basis.swap_weight_sum(x_aug, self._eff, i, j)
        return fx_hat - 2.0 * (s_i + s_j)

    def update(self, x, fx: float) -> UpdateDiagnostics:
        """One observation step: reweight all experts and renormalize.

        Exponents are max-shifted before exponentiation; the shift cancels
        exactly in the renormalization, so this only guards against overflow.
        The learning-rate statistics are advanced with this step's loss
        quantities, weighted by the pre-update weights normalized to sum 1.
        """
        fx = float(fx)
        if not math.isfinite(fx):
            raise ValueError("oracle value must be finite")
        psi = self.basis.features(x)
        fhat = float(self._eff @ psi)
        loss = fhat - fx
        p = self.basis.p
        eta = self.lr.current(p, self.sparsity)

        pre = np.concatenate([self.w_plus, self.w_minus])
        mass_before = float(pre.sum())

        z_plus = (-2.0 * self.sparsity * loss) * psi
        z = np.concatenate([z_plus, -z_plus])
        exponents = eta * z
        w = pre * np.exp(exponents - exponents.max())
        w *= self.sparsity / w.sum()
        self.w_plus = w[:p].copy()
        self.w_minus = w[p:].copy()
        self._eff = self.w_plus - self.w_minus

        w_pre = pre / mass_before
        z_bar = float(w_pre @ z)
        var_increment = float(w_pre @ (z - z_bar) ** 2)
        self.lr.advance(4.0 * self.sparsity * abs(loss), var_increment)
        return UpdateDiagnostics(loss, eta, mass_before, float(w.sum()))

    def copy(self) -> "MonomialSurrogate":
        out = MonomialSurrogate.__new__(MonomialSurrogate)
        out.basis = self.basis
        out.sparsity = self.sparsity
        out.w_plus = self.w_plus.copy()
        out.w_minus = self.w_minus.copy()
        out.lr = self.lr.copy()
        out._eff = self._eff.copy()
        return out

    # -- checkpointing ------------------------------------------------------
    # Key-value text format, one "key = value" line per scalar; weight arrays
    # are space-separated hex floats so the round trip is bit exact.

    def save(self, path) -> None:
        lines = [
            "comex-surrogate-v1",
            f"d = {self.basis.d}",
            f"m = {self.basis.m}",
            f"sparsity = {self.sparsity.hex()}",
            f"lr_mode = {'adaptive' if self.lr.adaptive else 'fixed'}",
        ]
        if not self.lr.adaptive:
            lines.append(f"lr_eta = {self.lr.eta.hex()}")
        lines += [
            f"lr_t = {self.lr.t}",
            f"lr_e = {self.lr.e.hex()}",
            f"lr_v = {self.lr.v.hex()}",
            "w_plus = " + " ".join(float(v).hex() for v in self.w_plus),
            "w_minus = " + " ".join(float(v).hex() for v in self.w_minus),
        ]
        Path(path).write_text("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path) -> "MonomialSurrogate":
        text = Path(path).read_text().strip().splitlines()
        if not text or text[0].strip() != "comex-surrogate-v1":
            raise ValueError(f"{path}: not a surrogate checkpoint")
        fields = {}
        for line in text[1:]:
            key, _, value = line.partition("=")
            fields[key.strip()] = value.strip()
        basis = MonomialBasis(int(fields["d"]), int(fields["m"]))
        eta = None if fields["lr_mode"] == "adaptive" else float.fromhex(fields["lr_eta"])
        model = cls(basis, float.fromhex(fields["sparsity"]), learning_rate=eta)
        model.lr.t = int(fields["lr_t"])
        model.lr.e = float.fromhex(fields["lr_e"])
        model.lr.v = float.fromhex(fields["lr_v"])
        model.w_plus = np.array([float.fromhex(v) for v in fields["w_plus"].split()])
        model.w_minus = np.array([float.fromhex(v) for v in fields["w_minus"].split()])
        if model.w_plus.size != basis.p or model.w_minus.size != basis.p:
            raise ValueError(f"{path}: weight arrays do not match basis size")
        model._eff = model.w_plus - model.w_minus
        return model


@dataclass(frozen=True)
class TrueCoefficients:
    """Signed target coefficients with l1 norm at most 1 (audit helper).

    Any such vector can be written as a difference of two nonnegative vectors
    whose joint mass is exactly 1; :meth:`dual_simplex` uses the positive and
    negative parts and spreads the leftover mass uniformly across all 2p
    coordinates, which leaves the represented function unchanged.
    """

    alpha: np.ndarray

    def __post_init__(self):
        alpha = np.asarray(self.alpha, dtype=np.float64)
        object.__setattr__(self, "alpha", alpha)
        if float(np.abs(alpha).sum()) > 1.0 + 1e-9:
            raise ValueError("target coefficients must have l1 norm at most 1")

    def dual_simplex(self) -> np.ndarray:
        pos = np.clip(self.alpha, 0.0, None)
        neg = np.clip(-self.alpha, 0.0, None)
        w = np.concatenate([pos, neg])
        slack = 1.0 - float(w.sum())
        if slack > 0.0:
            w = w + slack / w.size
        return w

    def evaluate(self, basis: MonomialBasis, x) -> float:
        return float(self.alpha @ basis.features(x))


def kl_divergence(target, model: MonomialSurrogate) -> float:
    """KL(target || model weights) over the doubled 2p coordinate system.

    `target` is a TrueCoefficients or an explicit nonnegative 2p vector on
    the simplex. Model weights are rescaled to total mass 1 for
    comparability. Coordinates where the target is 0 contribute nothing; a
    model weight of exactly 0 under target mass yields +inf (reported, never
    clamped).
    """
    if isinstance(target, TrueCoefficients):
        tw = target.dual_simplex()
    else:
        tw = np.asarray(target, dtype=np.float64)
    w = np.concatenate([model.w_plus, model.w_minus])
    if tw.shape != w.shape:
        raise ValueError(f"target has shape {tw.shape}, model expects {w.shape}")
    w = w / w.sum()
    support = tw > 0.0
    if np.any(w[support] == 0.0):
        return math.inf
    return float(np.sum(tw[support] * np.log(tw[support] / w[support])))


@dataclass
class DropAuditStep:
    step: int
    loss: float
    drop: float
    bound: float
    holds: bool


@dataclass
class DropAuditReport:
    """Per-step record of the KL-drop inequality check."""

    d: int
    m: int
    eta: float
    sparsity: float
    steps: list[DropAuditStep] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(s.holds for s in self.steps)

    @property
    def violations(self) -> list[DropAuditStep]:
        return [s for s in self.steps if not s.holds]


def kl_drop_audit(d: int, m: int, eta: float, n_steps: int,
                  rng: np.random.Generator, sparsity: float = 1.0,
                  alpha_star: np.ndarray | None = None,
                  slack: float = 1e-10) -> DropAuditReport:
    """Check, step by step, that each update shrinks the KL distance to the
    target weights by at least 2*eta*sparsity*(prediction error)^2 - eta^2.

    The black box is exactly representable in the basis: f = <alpha_star,
    psi> with alpha_star nonnegative on the simplex (drawn Dirichlet-uniform
    when not supplied). Query points are drawn uniformly from the cube; the
    claimed inequality does not depend on how the points are chosen.
    """
    basis = MonomialBasis(d, m)
    if alpha_star is None:
        alpha_star = rng.dirichlet(np.ones(basis.p))
    target = TrueCoefficients(np.asarray(alpha_star, dtype=np.float64))
    dual = target.dual_simplex()
    model = MonomialSurrogate(basis, sparsity, learning_rate=eta)
    cube = Unconstrained(d)

    report = DropAuditReport(d=d, m=m, eta=eta, sparsity=sparsity)
    phi = kl_divergence(dual, model)
    for t in range(n_steps):
        x = sample_uniform(cube, rng)
        diag = model.update(x, target.evaluate(basis, x))
        phi_next = kl_divergence(dual, model)
        drop = phi - phi_next
        bound = 2.0 * eta * sparsity * diag.loss**2 - eta**2
        report.steps.append(DropAuditStep(t, diag.loss, drop, bound, drop >= bound - slack))
        phi = phi_next
    return report
