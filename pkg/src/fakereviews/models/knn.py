"""k-nearest-neighbors classifier, Euclidean distance, no approximation.

Deterministic tie handling: neighbors at equal distance are taken in
training-row order, and an even class vote goes to label 0.
"""

from __future__ import annotations

import numpy as np

from ..errors import BadK
from .base import check_X, check_X_y


class KNearestNeighbors:
    def __init__(self, k: int = 5):
        self.k = k
        self.X_: np.ndarray | None = None
        self.y_: np.ndarray | None = None

    def fit(self, X, y) -> "KNearestNeighbors":
        X, y = check_X_y(X, y)
        if not 1 <= self.k <= X.shape[0]:
            raise BadK(f"k={self.k} must lie in 1..{X.shape[0]}")
        self.X_ = X
        self.y_ = y
        return self

    def predict(self, X) -> np.ndarray:
        if self.X_ is None:
            raise ValueError("model is not fit")
        X = check_X(X, self.X_.shape[1])
        out = np.empty(X.shape[0], dtype=np.int64)
        for i, q in enumerate(X):
            d2 = ((self.X_ - q) ** 2).sum(axis=1)
            nearest = np.argsort(d2, kind="stable")[: self.k]
            ones = int(np.count_nonzero(self.y_[nearest]))
            out[i] = 1 if ones * 2 > self.k else 0
        return out
