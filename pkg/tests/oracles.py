"""Independent reference implementations used as test oracles.

Everything here is deliberately written the slow, obvious way (plain
loops, math-module arithmetic) and never imports the implementation
paths it is used to check.
"""

import math

import numpy as np


def tfidf_oracle(token_docs):
    """Hand-computed tf-idf rows: raw tf, idf = ln((1+N)/(1+df)) + 1, L2 rows.

    Returns (sorted terms, list of row dicts term->weight).
    """
    n = len(token_docs)
    df = {}
    for tokens in token_docs:
        for term in set(tokens):
            df[term] = df.get(term, 0) + 1
    terms = sorted(df)
    idf = {t: math.log((1 + n) / (1 + df[t])) + 1.0 for t in terms}
    rows = []
    for tokens in token_docs:
        tf = {}
        for t in tokens:
            tf[t] = tf.get(t, 0) + 1
        raw = {t: tf.get(t, 0) * idf[t] for t in terms}
        norm = math.sqrt(sum(v * v for v in raw.values()))
        rows.append({t: (v / norm if norm > 0 else 0.0) for t, v in raw.items()})
    return terms, rows


def knn_oracle(X_train, y_train, X_query, k):
    """All-pairs nearest neighbors with explicit (distance, index) sorting."""
    preds = []
    for q in X_query:
        dists = [(float(np.sum((X_train[i] - q) ** 2)), i)
                 for i in range(len(X_train))]
        dists.sort()
        votes = [int(y_train[i]) for _, i in dists[:k]]
        ones = sum(votes)
        preds.append(1 if ones * 2 > k else 0)
    return np.array(preds, dtype=np.int64)


def fd_gradient(f, x, eps=1e-5):
    """Central finite differences of a scalar function of a flat vector."""
    x = np.asarray(x, dtype=np.float64)
    grad = np.zeros_like(x)
    for i in range(len(x)):
        hi = x.copy()
        lo = x.copy()
        hi[i] += eps
        lo[i] -= eps
        grad[i] = (f(hi) - f(lo)) / (2.0 * eps)
    return grad


def relative_error(a, b):
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    denom = max(np.linalg.norm(a), np.linalg.norm(b), 1e-12)
    return float(np.linalg.norm(a - b) / denom)


def sgns_pair_loss(v, u_rows, labels):
    """Pair loss from scratch: -sum of log-sigmoid terms via math.log."""
    total = 0.0
    for u, lab in zip(u_rows, labels):
        s = float(np.dot(u, v))
        p = 1.0 / (1.0 + math.exp(-s)) if s >= 0 else math.exp(s) / (1.0 + math.exp(s))
        total -= math.log(p) if lab else math.log(1.0 - p)
    return total


def kkt_max_violation(alpha, y, f_values, C, tol_zero=1e-12):
    """Largest violation of the soft-margin optimality conditions.

    alpha=0        requires y*f >= 1
    0 < alpha < C  requires y*f == 1
    alpha=C        requires y*f <= 1
    Returns max(0, violation) over all points.
    """
    worst = 0.0
    for a, yi, fi in zip(alpha, y, f_values):
        margin = yi * fi
        if a <= tol_zero:
            worst = max(worst, 1.0 - margin)
        elif a >= C - tol_zero:
            worst = max(worst, margin - 1.0)
        else:
            worst = max(worst, abs(margin - 1.0))
    return worst


def gini_oracle(labels):
    n = len(labels)
    if n == 0:
        return 0.0
    counts = {}
    for label in labels:
        counts[label] = counts.get(label, 0) + 1
    return 1.0 - sum((c / n) ** 2 for c in counts.values())


def best_split_oracle(X, y):
    """Exhaustive best (feature, threshold) by weighted-gini decrease.

    Thresholds are midpoints between consecutive distinct sorted values;
    ties break on the lowest feature index then the lowest threshold.
    """
    n, d = X.shape
    parent = gini_oracle(list(y))
    best = (0.0, None, None)  # gain, feature, threshold
    for j in range(d):
        values = sorted(set(float(v) for v in X[:, j]))
        for lo, hi in zip(values[:-1], values[1:]):
            theta = 0.5 * (lo + hi)
            left = [int(y[i]) for i in range(n) if X[i, j] <= theta]
            right = [int(y[i]) for i in range(n) if X[i, j] > theta]
            weighted = (len(left) * gini_oracle(left)
                        + len(right) * gini_oracle(right)) / n
            gain = parent - weighted
            if gain > best[0]:
                best = (gain, j, theta)
    return best
