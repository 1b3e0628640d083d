"""Soft-margin SVM trained with simplified sequential minimal optimization.

The dual is solved two coefficients at a time: each sweep visits
training points in a seeded random order, and for every point violating
the KKT conditions a random partner is drawn and the pair is optimized
analytically.  Training stops once a full sweep changes nothing and all
KKT conditions hold within tol.  The decision function is
sum_i alpha_i y_i K(x_i, x) + b with sign(0) mapped to +1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import DimMismatch, SingleClassTraining
from ..rng import make_rng
from .base import check_X, check_X_y

logger = logging.getLogger(__name__)

MIN_ALPHA_STEP = 1e-5
ALPHA_SNAP = 1e-10  # clip residue this close to a bound is the bound
MAX_SWEEPS = 500


@dataclass(frozen=True)
class KernelSpec:
    name: str  # "linear" | "rbf"
    gamma: float = 1.0


def kernel_eval(spec: KernelSpec, x1: np.ndarray, x2: np.ndarray) -> float:
    """Kernel value for a single pair of vectors."""
    x1 = np.asarray(x1, dtype=np.float64)
    x2 = np.asarray(x2, dtype=np.float64)
    if x1.shape != x2.shape:
        raise DimMismatch(f"kernel arguments differ in shape: {x1.shape} vs {x2.shape}")
    if spec.name == "linear":
        return float(x1 @ x2)
    if spec.name == "rbf":
        diff = x1 - x2
        return float(np.exp(-spec.gamma * (diff @ diff)))
    raise ValueError(f"unknown kernel {spec.name!r}")


def _kernel_matrix(spec: KernelSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if spec.name == "linear":
        return A @ B.T
    sq = (A * A).sum(axis=1)[:, None] + (B * B).sum(axis=1)[None, :] - 2.0 * A @ B.T
    return np.exp(-spec.gamma * np.maximum(sq, 0.0))


def _scale_gamma(X: np.ndarray) -> float:
    # 1 / (d * mean per-feature variance); falls back to 1 on constant data
    v = float(X.var(axis=0).mean())
    if v <= 0.0:
        return 1.0
    return 1.0 / (X.shape[1] * v)


class SupportVectorMachine:
    def __init__(self, C: float = 1.0, kernel: str = "rbf",
                 gamma: float | str = "scale", tol: float = 1e-3,
                 max_passes: int = 10, seed: int = 9):
        self.C = C
        self.kernel = kernel
        self.gamma = gamma
        self.tol = tol
        self.max_passes = max_passes
        self.seed = seed
        self.kernel_spec_: KernelSpec | None = None
        self.support_vectors_: np.ndarray | None = None
        self.support_labels_: np.ndarray | None = None  # in {-1, +1}
        self.alphas_: np.ndarray | None = None
        self.support_indices_: np.ndarray | None = None
        self.intercept_: float = 0.0
        self.n_features_: int | None = None

    def fit(self, X, y) -> "SupportVectorMachine":
        X, y01 = check_X_y(X, y)
        if len(np.unique(y01)) < 2:
            raise SingleClassTraining("training data contains a single class")
        self.n_features_ = X.shape[1]
        y = np.where(y01 == 1, 1.0, -1.0)

        gamma = _scale_gamma(X) if self.gamma == "scale" else float(self.gamma)
        spec = KernelSpec(name=self.kernel, gamma=gamma)
        self.kernel_spec_ = spec

        n = X.shape[0]
        K = _kernel_matrix(spec, X, X)
        alpha = np.zeros(n)
        rng = make_rng(self.seed)
        state = {"b": 0.0, "f": np.zeros(n)}  # f caches (alpha*y) @ K

        def error(i: int) -> float:
            return state["f"][i] + state["b"] - y[i]

        def take_step(i: int, j: int) -> bool:
            if i == j:
                return False
            a_i_old, a_j_old = alpha[i], alpha[j]
            if y[i] != y[j]:
                low = max(0.0, a_j_old - a_i_old)
                high = min(self.C, self.C + a_j_old - a_i_old)
            else:
                low = max(0.0, a_i_old + a_j_old - self.C)
                high = min(self.C, a_i_old + a_j_old)
            if low >= high:
                return False
            eta = 2.0 * K[i, j] - K[i, i] - K[j, j]
            if eta >= 0.0:
                return False
            e_i, e_j = error(i), error(j)
            a_j = a_j_old - y[j] * (e_i - e_j) / eta
            a_j = min(high, max(low, a_j))
            if a_j < ALPHA_SNAP:
                a_j = 0.0
            elif a_j > self.C - ALPHA_SNAP:
                a_j = self.C
            if abs(a_j - a_j_old) < MIN_ALPHA_STEP * (a_j + a_j_old + MIN_ALPHA_STEP):
                return False
            a_i = a_i_old + y[i] * y[j] * (a_j_old - a_j)
            if a_i < ALPHA_SNAP:  # cancellation residue at the bounds
                a_i = 0.0
            elif a_i > self.C - ALPHA_SNAP:
                a_i = self.C

            b = state["b"]
            b1 = (b - e_i - y[i] * (a_i - a_i_old) * K[i, i]
                  - y[j] * (a_j - a_j_old) * K[i, j])
            b2 = (b - e_j - y[i] * (a_i - a_i_old) * K[i, j]
                  - y[j] * (a_j - a_j_old) * K[j, j])
            if 0.0 < a_i < self.C:
                state["b"] = b1
            elif 0.0 < a_j < self.C:
                state["b"] = b2
            else:
                state["b"] = 0.5 * (b1 + b2)
            state["f"] += (y[i] * (a_i - a_i_old) * K[i]
                           + y[j] * (a_j - a_j_old) * K[j])
            alpha[i], alpha[j] = a_i, a_j
            return True

        def examine(i: int) -> bool:
            r = y[i] * error(i)
            if not ((r < -self.tol and alpha[i] < self.C)
                    or (r > self.tol and alpha[i] > 0)):
                return False
            non_bound = np.nonzero((alpha > 0.0) & (alpha < self.C))[0]
            if len(non_bound) > 1:
                # second-choice heuristic: partner with the largest |E_i - E_j|
                e_i = error(i)
                errs = state["f"][non_bound] + state["b"] - y[non_bound]
                j = int(non_bound[np.argmax(np.abs(e_i - errs))])
                if take_step(i, j):
                    return True
            for j in rng.permutation(len(non_bound)):
                if take_step(i, int(non_bound[j])):
                    return True
            for j in rng.permutation(n):
                if take_step(i, int(j)):
                    return True
            return False

        # Alternate full passes with passes over non-bound points; stop when
        # a full pass changes nothing and the KKT conditions hold within tol.
        quiet_full_passes = 0
        examine_all = True
        for _ in range(MAX_SWEEPS):
            changed = 0
            order = rng.permutation(n)
            if examine_all:
                changed = sum(examine(int(i)) for i in order)
            else:
                changed = sum(examine(int(i)) for i in order
                              if 0.0 < alpha[i] < self.C)
            if examine_all:
                if changed == 0:
                    # settle the intercept on the free support vectors, then
                    # test optimality with that value
                    free = (alpha > 0.0) & (alpha < self.C)
                    if np.any(free):
                        state["b"] = float(np.mean(y[free] - state["f"][free]))
                    margins = y * (state["f"] + state["b"])
                    if self._kkt_satisfied(alpha, y, margins):
                        break
                    quiet_full_passes += 1
                    if quiet_full_passes >= self.max_passes:
                        logger.warning(
                            "SMO gave up after %d unproductive full passes "
                            "with KKT violations above tol", quiet_full_passes)
                        break
                else:
                    quiet_full_passes = 0
                    examine_all = False
            elif changed == 0:
                examine_all = True
        else:
            logger.warning("SMO hit the sweep cap (%d)", MAX_SWEEPS)

        support = alpha > 0.0
        self.support_vectors_ = X[support]
        self.support_labels_ = y[support]
        self.alphas_ = alpha[support]
        self.support_indices_ = np.nonzero(support)[0]
        self.intercept_ = state["b"]
        return self

    def _kkt_satisfied(self, alpha: np.ndarray, y: np.ndarray,
                       margins: np.ndarray) -> bool:
        at_zero = alpha <= 0.0
        at_c = alpha >= self.C
        between = ~at_zero & ~at_c
        return bool(
            np.all(margins[at_zero] >= 1.0 - self.tol)
            and np.all(np.abs(margins[between] - 1.0) <= self.tol)
            and np.all(margins[at_c] <= 1.0 + self.tol)
        )

    def decision_function(self, X) -> np.ndarray:
        if self.support_vectors_ is None:
            raise ValueError("model is not fit")
        X = check_X(X, self.n_features_)
        if len(self.alphas_) == 0:
            return np.full(X.shape[0], self.intercept_)
        K = _kernel_matrix(self.kernel_spec_, X, self.support_vectors_)
        return K @ (self.alphas_ * self.support_labels_) + self.intercept_

    def predict(self, X) -> np.ndarray:
        return (self.decision_function(X) >= 0.0).astype(np.int64)
