"""Shared input checks for the classifier family.

All models are binary (labels in {0,1}), require finite features, and
never clean bad input silently.
"""

from __future__ import annotations

import numpy as np

from ..errors import DimMismatch, NonFiniteFeature


def check_X(X, n_features: int | None = None) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D feature matrix, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise NonFiniteFeature("feature matrix contains NaN or infinite values")
    if n_features is not None and X.shape[1] != n_features:
        raise DimMismatch(
            f"model was fit with {n_features} features, input has {X.shape[1]}"
        )
    return X


def check_X_y(X, y) -> tuple[np.ndarray, np.ndarray]:
    X = check_X(X)
    y = np.asarray(y)
    if y.shape != (X.shape[0],):
        raise ValueError(f"labels have shape {y.shape}, expected ({X.shape[0]},)")
    if not np.all(np.isin(y, (0, 1))):
        raise ValueError("labels must be 0 or 1")
    return X, y.astype(np.int64)
