"""Naive Bayes under the feature-independence assumption.

Two variants share one class: multinomial (term counts or tf-idf
weights treated as fractional counts, Laplace-smoothed) and gaussian
(per-class per-feature mean and floored variance).  ``variant="auto"``
resolves from the feature representation tag at fit time: counts and
tfidf go multinomial, dense goes gaussian.  Posteriors are computed in
log space and normalized to sum to one.
"""

from __future__ import annotations

import numpy as np

from ..errors import NegativeFeatureForMultinomial
from .base import check_X, check_X_y

MULTINOMIAL = "multinomial"
GAUSSIAN = "gaussian"


def resolve_variant(representation: str) -> str:
    if representation in ("counts", "tfidf"):
        return MULTINOMIAL
    if representation == "dense":
        return GAUSSIAN
    raise ValueError(f"unknown representation tag {representation!r}")


class NaiveBayes:
    def __init__(self, variant: str = "auto", laplace: float = 1.0,
                 var_floor: float = 1e-9):
        if variant not in ("auto", MULTINOMIAL, GAUSSIAN):
            raise ValueError(f"unknown variant {variant!r}")
        self.variant = variant
        self.laplace = laplace
        self.var_floor = var_floor
        self.variant_: str | None = None
        self.log_prior_: np.ndarray | None = None
        self.feature_log_prob_: np.ndarray | None = None  # multinomial (2, d)
        self.mean_: np.ndarray | None = None              # gaussian (2, d)
        self.var_: np.ndarray | None = None
        self.n_features_: int | None = None

    def fit(self, X, y, representation: str | None = None) -> "NaiveBayes":
        X, y = check_X_y(X, y)
        self.n_features_ = X.shape[1]
        if self.variant == "auto":
            if representation is None:
                raise ValueError("variant='auto' needs the representation tag")
            self.variant_ = resolve_variant(representation)
        else:
            self.variant_ = self.variant

        n = len(y)
        counts = np.array([np.count_nonzero(y == 0), np.count_nonzero(y == 1)],
                          dtype=np.float64)
        with np.errstate(divide="ignore"):
            self.log_prior_ = np.log(counts / n)

        if self.variant_ == MULTINOMIAL:
            if np.any(X < 0):
                raise NegativeFeatureForMultinomial(
                    "multinomial naive Bayes requires non-negative features"
                )
            term_totals = np.vstack([X[y == 0].sum(axis=0), X[y == 1].sum(axis=0)])
            smoothed = term_totals + self.laplace
            self.feature_log_prob_ = np.log(
                smoothed / smoothed.sum(axis=1, keepdims=True)
            )
        else:
            d = X.shape[1]
            self.mean_ = np.zeros((2, d))
            var = np.ones((2, d))
            for c in (0, 1):
                rows = X[y == c]
                if len(rows):  # an absent class keeps the neutral fill;
                    self.mean_[c] = rows.mean(axis=0)  # its -inf prior rules
                    var[c] = rows.var(axis=0)
            self.var_ = np.maximum(var, self.var_floor)
        return self

    def _joint_log_likelihood(self, X: np.ndarray) -> np.ndarray:
        if self.variant_ == MULTINOMIAL:
            return self.log_prior_[None, :] + X @ self.feature_log_prob_.T
        ll = np.empty((X.shape[0], 2))
        for c in (0, 1):
            diff = X - self.mean_[c]
            ll[:, c] = (
                -0.5 * np.sum(np.log(2.0 * np.pi * self.var_[c]))
                - 0.5 * np.sum(diff * diff / self.var_[c], axis=1)
            )
        return self.log_prior_[None, :] + ll

    def predict_proba(self, X) -> np.ndarray:
        """Posterior pair (P(0|x), P(1|x)); rows sum to 1."""
        if self.variant_ is None:
            raise ValueError("model is not fit")
        X = check_X(X, self.n_features_)
        jll = self._joint_log_likelihood(X)
        log_norm = np.logaddexp(jll[:, 0], jll[:, 1])
        return np.exp(jll - log_norm[:, None])

    def predict(self, X) -> np.ndarray:
        # compare joint log likelihoods: P(1|x) >= 0.5 iff jll_1 >= jll_0,
        # and the comparison is exact at ties where exp() would round
        if self.variant_ is None:
            raise ValueError("model is not fit")
        X = check_X(X, self.n_features_)
        jll = self._joint_log_likelihood(X)
        return (jll[:, 1] >= jll[:, 0]).astype(np.int64)
