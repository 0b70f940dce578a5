"""Bounded-degree monomial (parity) features on spin vectors.

A monomial is a product of a subset of coordinates; on {-1,+1} inputs its
value is again +/-1. The basis of all monomials of degree at most m has
p = sum_{k<=m} C(d, k) terms and spans the degree-<=m multilinear
polynomials, which serve as the surrogate model class.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

__all__ = ["MonomialBasis", "enumerate_basis", "evaluate_monomial", "evaluate_features"]


class MonomialBasis:
    """All index sets I with |I| <= m over d coordinates, in a fixed order.

    Terms are sorted by ascending degree, then lexicographically; term 0 is
    the constant monomial (empty set). The basis also stores, for every
    coordinate, the positions of the terms containing it, so that the effect
    of a single sign flip can be computed from those terms alone.
    """

    def __init__(self, d: int, m: int):
        if d < 1:
            raise ValueError("dimension must be a positive integer")
        if not 1 <= m <= d:
            raise ValueError(f"order must satisfy 1 <= m <= d, got m={m}, d={d}")
        self.d = d
        self.m = m
        self.terms: tuple[tuple[int, ...], ...] = tuple(
            itertools.chain.from_iterable(
                itertools.combinations(range(d), k) for k in range(m + 1)
            )
        )
        self.p = len(self.terms)

        # Var matrix padded with the sentinel index d; products are taken
        # against x extended by a trailing 1.0, so padding is a no-op.
        padded = np.full((self.p, m), d, dtype=np.int64)
        for row, term in zip(padded, self.terms):
            row[: len(term)] = term
        self._padded = padded

        containing: list[list[int]] = [[] for _ in range(d)]
        for tid, term in enumerate(self.terms):
            for i in term:
                containing[i].append(tid)
        self._inv_ids = [np.asarray(ids, dtype=np.int64) for ids in containing]
        self._inv_vars = [padded[ids] for ids in self._inv_ids]

    def __repr__(self):
        return f"MonomialBasis(d={self.d}, m={self.m}, p={self.p})"

    def _augment(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.d,):
            raise ValueError(f"point has shape {x.shape}, basis expects ({self.d},)")
        return np.append(x, 1.0)

    def features(self, x) -> np.ndarray:
        """Vector of all p monomial values at x (entries +/-1)."""
        return np.prod(self._augment(x)[self._padded], axis=1)

    def terms_containing(self, i: int) -> np.ndarray:
        """Positions of the terms whose index set contains coordinate i."""
        if not 0 <= i < self.d:
            raise IndexError(f"coordinate {i} out of range for d={self.d}")
        return self._inv_ids[i]

    def flip_weight_sum(self, x_aug: np.ndarray, coeffs: np.ndarray, i: int) -> float:
        """sum over terms I containing i of coeffs[I] * psi_I(x).

        x_aug must be the point extended by a trailing 1.0 (see features).
        """
        if not 0 <= i < self.d:
            raise IndexError(f"coordinate {i} out of range for d={self.d}")
        values = np.prod(x_aug[self._inv_vars[i]], axis=1)
        return float(coeffs[self._inv_ids[i]] @ values)

    def swap_weight_sum(self, x_aug: np.ndarray, coeffs: np.ndarray, i: int, j: int) -> float:
        """Like flip_weight_sum for j, but evaluated on x with i already flipped."""
        if not 0 <= j < self.d:
            raise IndexError(f"coordinate {j} out of range for d={self.d}")
        vars_j = self._inv_vars[j]
        values = np.prod(x_aug[vars_j], axis=1)
        sign = np.where((vars_j == i).any(axis=1), -1.0, 1.0)
        return float(coeffs[self._inv_ids[j]] @ (sign * values))


def enumerate_basis(d: int, m: int) -> MonomialBasis:
    """Construct the canonical degree-<=m basis in dimension d."""
    return MonomialBasis(d, m)


def evaluate_monomial(term, x) -> float:
    """Product of the selected spins; the empty product is +1."""
    x = np.asarray(x, dtype=np.float64)
    term = tuple(term)
    if term and (min(term) < 0 or max(term) >= x.size):
        raise IndexError(f"term {term} out of range for a length-{x.size} point")
    if not term:
        return 1.0
    return float(np.prod(x[list(term)]))


def evaluate_features(basis: MonomialBasis, x) -> np.ndarray:
    return basis.features(x)


def basis_size(d: int, m: int) -> int:
    """p = sum_{k=0}^{m} C(d, k) without building the basis."""
    return sum(math.comb(d, k) for k in range(m + 1))
