"""CART-style decision tree and bootstrap-aggregated forest.

Trees grow greedily on Gini impurity reduction.  Candidate thresholds
are midpoints between consecutive distinct sorted feature values; a
node stops splitting at max_depth, purity, or when no split strictly
reduces weighted impurity.  Ties between equally good splits go to the
lowest feature index, then the lowest threshold, so fits are
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..rng import child_rng, make_rng, mix
from .base import check_X, check_X_y


def gini(y: np.ndarray) -> float:
    """1 - sum of squared class probabilities."""
    n = len(y)
    if n == 0:
        return 0.0
    p1 = float(np.count_nonzero(y)) / n
    return 1.0 - p1 * p1 - (1.0 - p1) * (1.0 - p1)


@dataclass
class _Node:
    label: int
    counts: tuple[int, int]
    feature: int = -1
    threshold: float = 0.0
    gain: float = 0.0
    left: "_Node | None" = None
    right: "_Node | None" = None

    def is_leaf(self) -> bool:
        return self.left is None


def _best_split_feature(col: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Best (weighted-impurity decrease, threshold) for one feature column.

    Returns (-1.0, 0.0) when the column has a single distinct value.
    Ties between thresholds go to the lowest threshold.
    """
    order = np.argsort(col, kind="stable")
    sorted_vals = col[order]
    sorted_y = y[order]
    n = len(y)

    boundaries = np.nonzero(sorted_vals[:-1] != sorted_vals[1:])[0]
    if len(boundaries) == 0:
        return -1.0, 0.0

    cum_ones = np.cumsum(sorted_y)
    total_ones = cum_ones[-1]

    n_left = boundaries + 1
    n_right = n - n_left
    ones_left = cum_ones[boundaries]
    ones_right = total_ones - ones_left

    p1l = ones_left / n_left
    p1r = ones_right / n_right
    gini_left = 1.0 - p1l * p1l - (1.0 - p1l) * (1.0 - p1l)
    gini_right = 1.0 - p1r * p1r - (1.0 - p1r) * (1.0 - p1r)
    weighted = (n_left * gini_left + n_right * gini_right) / n

    parent = gini(y)
    gains = parent - weighted
    best = int(np.argmax(gains))  # first (lowest threshold) wins ties
    threshold = 0.5 * (sorted_vals[boundaries[best]] + sorted_vals[boundaries[best] + 1])
    return float(gains[best]), float(threshold)


class DecisionTree:
    """Binary CART classifier; split goes left when x[feature] <= threshold."""

    def __init__(self, max_depth: int = 5, seed: int = 9,
                 features_per_split: int | None = None):
        self.max_depth = max_depth
        self.seed = seed
        self.features_per_split = features_per_split
        self.root_: _Node | None = None
        self.n_features_: int | None = None

    def fit(self, X, y) -> "DecisionTree":
        X, y = check_X_y(X, y)
        self.n_features_ = X.shape[1]
        rng = make_rng(self.seed)
        self.root_ = self._grow(X, y, depth=0, rng=rng)
        return self

    def _grow(self, X: np.ndarray, y: np.ndarray, depth: int, rng) -> _Node:
        n1 = int(np.count_nonzero(y))
        n0 = len(y) - n1
        node = _Node(label=1 if n1 > n0 else 0, counts=(n0, n1))
        if depth >= self.max_depth or n0 == 0 or n1 == 0:
            return node

        d = X.shape[1]
        m = self.features_per_split
        if m is not None and m < d:
            candidates = np.sort(rng.choice(d, size=m, replace=False))
        else:
            candidates = np.arange(d)

        best_gain, best_feature, best_threshold = 0.0, -1, 0.0
        for j in candidates:
            gain, threshold = _best_split_feature(X[:, j], y)
            if gain > best_gain:
                best_gain, best_feature, best_threshold = gain, int(j), threshold
        if best_feature < 0:
            return node

        mask = X[:, best_feature] <= best_threshold
        node.feature = best_feature
        node.threshold = best_threshold
        node.gain = best_gain
        node.left = self._grow(X[mask], y[mask], depth + 1, rng)
        node.right = self._grow(X[~mask], y[~mask], depth + 1, rng)
        return node

    def predict(self, X) -> np.ndarray:
        if self.root_ is None:
            raise ValueError("model is not fit")
        X = check_X(X, self.n_features_)
        out = np.empty(X.shape[0], dtype=np.int64)
        for i, x in enumerate(X):
            node = self.root_
            while not node.is_leaf():
                node = node.left if x[node.feature] <= node.threshold else node.right
            out[i] = node.label
        return out

    def depth(self) -> int:
        def walk(node: _Node) -> int:
            if node.is_leaf():
                return 0
            return 1 + max(walk(node.left), walk(node.right))

        if self.root_ is None:
            raise ValueError("model is not fit")
        return walk(self.root_)


class RandomForest:
    """Majority vote over trees fit on bootstrap samples.

    Each tree considers floor(sqrt(d)) features per split by default.
    Per-tree seeds are derived up front from (seed, tree index), so
    results do not depend on fit order.  Tied votes go to label 0.
    """

    def __init__(self, n_trees: int = 100, max_depth: int = 5, seed: int = 9,
                 features_per_split: int | None = None, bootstrap: bool = True):
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.seed = seed
        self.features_per_split = features_per_split
        self.bootstrap = bootstrap
        self.trees_: list[DecisionTree] = []
        self.n_features_: int | None = None

    def fit(self, X, y) -> "RandomForest":
        X, y = check_X_y(X, y)
        self.n_features_ = X.shape[1]
        n, d = X.shape
        m = self.features_per_split
        if m is None:
            m = max(1, int(np.sqrt(d)))
        self.trees_ = []
        for t in range(self.n_trees):
            tree_seed = mix(self.seed, t)
            if self.bootstrap:
                idx = child_rng(tree_seed, "bootstrap").integers(0, n, size=n)
                Xt, yt = X[idx], y[idx]
            else:
                Xt, yt = X, y
            tree = DecisionTree(max_depth=self.max_depth,
                                seed=mix(tree_seed, "tree"),
                                features_per_split=m)
            tree.fit(Xt, yt)
            self.trees_.append(tree)
        return self

    def predict(self, X) -> np.ndarray:
        if not self.trees_:
            raise ValueError("model is not fit")
        X = check_X(X, self.n_features_)
        votes = np.zeros(X.shape[0], dtype=np.int64)
        for tree in self.trees_:
            votes += tree.predict(X)
        return (votes * 2 > self.n_trees).astype(np.int64)
