"""Logistic regression trained by full-batch gradient descent.

The loss is mean binary cross-entropy plus an L2 penalty on the weights
(bias excluded), minimized from zero initialization.  If a step would
increase the loss, the learning rate is halved and the step retried, so
the recorded loss history is non-increasing.  Zero initialization makes
the fit seed-independent; the seed argument exists for interface
uniformity only.
"""

from __future__ import annotations

import numpy as np

from .base import check_X, check_X_y

MAX_HALVINGS = 60


def sigmoid(z):
    """1 / (1 + e^-z), branch on sign so large |z| cannot overflow."""
    scalar = np.ndim(z) == 0
    arr = np.atleast_1d(np.asarray(z, dtype=np.float64))
    out = np.empty_like(arr)
    pos = arr >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-arr[pos]))
    ez = np.exp(arr[~pos])
    out[~pos] = ez / (1.0 + ez)
    return float(out[0]) if scalar else out


def logreg_loss(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray,
                l2: float) -> float:
    """Regularized mean cross-entropy, computed in log space."""
    z = X @ w + b
    # per-sample CE: softplus(-z) + (1-y) z, stable for any z
    ce = np.logaddexp(0.0, -z) + (1.0 - y) * z
    return float(ce.mean() + 0.5 * l2 * (w @ w))


def logreg_gradient(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray,
                    l2: float) -> tuple[np.ndarray, float]:
    p = sigmoid(X @ w + b)
    residual = p - y
    grad_w = X.T @ residual / len(y) + l2 * w
    grad_b = float(residual.mean())
    return grad_w, grad_b


class LogisticRegression:
    def __init__(self, max_iter: int = 1000, lr: float = 0.1, l2: float = 1e-4,
                 tol: float = 1e-6, seed: int = 9):
        self.max_iter = max_iter
        self.lr = lr
        self.l2 = l2
        self.tol = tol
        self.seed = seed
        self.weights_: np.ndarray | None = None
        self.bias_: float = 0.0
        self.loss_history_: list[float] = []
        self.n_features_: int | None = None

    def fit(self, X, y) -> "LogisticRegression":
        X, y = check_X_y(X, y)
        self.n_features_ = X.shape[1]
        y = y.astype(np.float64)
        w = np.zeros(X.shape[1])
        b = 0.0
        lr = self.lr
        loss = logreg_loss(w, b, X, y, self.l2)
        self.loss_history_ = [loss]

        for _ in range(self.max_iter):
            grad_w, grad_b = logreg_gradient(w, b, X, y, self.l2)
            if max(np.max(np.abs(grad_w)), abs(grad_b)) < self.tol:
                break
            for _ in range(MAX_HALVINGS):
                new_w = w - lr * grad_w
                new_b = b - lr * grad_b
                new_loss = logreg_loss(new_w, new_b, X, y, self.l2)
                if new_loss <= loss:
                    break
                lr *= 0.5
            else:
                break  # step is numerically negligible; treat as converged
            w, b, loss = new_w, new_b, new_loss
            self.loss_history_.append(loss)

        self.weights_ = w
        self.bias_ = b
        return self

    def decision_function(self, X) -> np.ndarray:
        if self.weights_ is None:
            raise ValueError("model is not fit")
        X = check_X(X, self.n_features_)
        return X @ self.weights_ + self.bias_

    def predict_proba(self, X) -> np.ndarray:
        return sigmoid(self.decision_function(X))

    def predict(self, X) -> np.ndarray:
        # probability exactly 0.5 maps to label 1
        return (self.predict_proba(X) >= 0.5).astype(np.int64)
