"""Weighted-Euclidean nearest neighbors: distance, neighbor queries with
optional cluster-mean pre-selection, leave-one-out k selection, and the 1NN
classifier used by the evaluation harness.

Distance ties are always broken by ascending row index; inverse-distance
votes use 1 / (d + eps) with a tiny eps so exact duplicates do not divide by
zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError

VOTE_EPS = 1e-12


def as_weight_vector(weights, n_cols: int) -> np.ndarray:
    """Normalize the many accepted weight spellings to a non-negative vector."""
    if weights is None:
        return np.ones(n_cols)
    lam = getattr(weights, "lambda_", weights)
    lam = np.asarray(lam, dtype=np.float64)
    if lam.shape != (n_cols,):
        raise ValueError(f"weight vector of shape {lam.shape} for {n_cols} columns")
    if (lam < 0).any():
        raise ValueError("feature weights must be non-negative")
    return lam


@dataclass(frozen=True)
class KnnConfig:
    """Neighbor-query settings; ``k='auto'`` selects k by leave-one-out CV."""

    k: int | str = "auto"
    k_max: int | None = None
    weights: object = None
    use_cluster_preselect: bool = True

    def __post_init__(self):
        if self.k != "auto" and (not isinstance(self.k, int) or self.k < 1):
            raise ValueError(f"k must be a positive integer or 'auto', got {self.k!r}")


def weighted_distance(x, y, weights=None) -> float:
    """sqrt(sum_i lambda_i (x_i - y_i)^2)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch: {x.shape} vs {y.shape}")
    lam = as_weight_vector(weights, x.shape[0])
    diff = x - y
    return float(np.sqrt((lam * diff * diff).sum()))


def _distances_to_pool(query: np.ndarray, pool: np.ndarray, lam: np.ndarray) -> np.ndarray:
    diff = pool - query
    return np.sqrt((diff * diff * lam).sum(axis=1))


def nearest_neighbors(
    query,
    pool,
    k: int,
    weights=None,
    preselect=None,
    exclude: int | None = None,
) -> list[tuple[int, float]]:
    """The k nearest pool rows to the query, ascending by weighted distance.

    With ``preselect`` (a ClusterModel over the pool) the search is restricted
    to the cluster whose mean is nearest to the query; if that cluster has
    fewer than k usable members the full pool is searched instead. ``exclude``
    drops one pool index (the query itself when it is a pool member). Fewer
    than k usable rows returns them all.
    """
    query = np.asarray(query, dtype=np.float64)
    pool = np.asarray(pool, dtype=np.float64)
    if pool.shape[0] == 0:
        raise DataError("empty neighbor pool")
    if k < 1:
        raise ValueError("k must be >= 1")
    lam = as_weight_vector(weights, pool.shape[1])

    candidates = np.arange(pool.shape[0])
    if preselect is not None:
        mean_dists = _distances_to_pool(query, preselect.means, lam)
        nearest_cluster = int(np.argmin(mean_dists))
        restricted = candidates[preselect.assignments == nearest_cluster]
        usable = restricted[restricted != exclude] if exclude is not None else restricted
        if usable.size >= k:
            candidates = restricted
    if exclude is not None:
        candidates = candidates[candidates != exclude]
    if candidates.size == 0:
        raise DataError("no usable rows in neighbor pool")

    dists = _distances_to_pool(query, pool[candidates], lam)
    order = np.argsort(dists, kind="stable")[:k]
    return [(int(candidates[o]), float(dists[o])) for o in order]


def _vote(labels_k: np.ndarray, dists_k: np.ndarray) -> bool:
    """Inverse-distance vote; ties fall to the nearest neighbor's label."""
    w = 1.0 / (dists_k + VOTE_EPS)
    pos = w[labels_k].sum()
    neg = w[~labels_k].sum()
    if pos == neg:
        return bool(labels_k[0])
    return pos > neg


def select_k_loocv(dataset, cfg: KnnConfig = KnnConfig()) -> int:
    """Pick the neighbor count maximizing leave-one-out accuracy with a
    distance-weighted vote; ties go to the smallest k."""
    features, labels = dataset.features, dataset.labels
    n = features.shape[0]
    if n < 3:
        raise DataError("leave-one-out k selection needs at least 3 rows")
    n_pos = int(labels.sum())
    if n_pos == 0 or n_pos == n:
        raise DataError("leave-one-out k selection needs both classes")
    k_max = cfg.k_max if cfg.k_max is not None else min(25, max(1, n_pos - 1))
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    k_max = min(k_max, n - 1)

    lam = as_weight_vector(cfg.weights, features.shape[1])
    scaled = features * np.sqrt(lam)
    sq = (scaled * scaled).sum(axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (scaled @ scaled.T)
    np.maximum(d2, 0.0, out=d2)
    dist = np.sqrt(d2)
    np.fill_diagonal(dist, np.inf)
    order = np.argsort(dist, kind="stable")

    best_k, best_acc = 1, -1.0
    for k in range(1, k_max + 1):
        correct = 0
        for i in range(n):
            nbrs = order[i, :k]
            if _vote(labels[nbrs], dist[i, nbrs]) == labels[i]:
                correct += 1
        acc = correct / n
        if acc > best_acc:
            best_k, best_acc = k, acc
    return best_k


def classify_1nn(train, test_rows, weights=None) -> np.ndarray:
    """Label each test row by its single nearest training row."""
    features, labels = train.features, train.labels
    if features.shape[0] == 0:
        raise DataError("empty training set")
    test_rows = np.atleast_2d(np.asarray(test_rows, dtype=np.float64))
    lam = as_weight_vector(weights, features.shape[1])
    scaled_train = features * np.sqrt(lam)
    scaled_test = test_rows * np.sqrt(lam)
    sq_train = (scaled_train * scaled_train).sum(axis=1)
    d2 = sq_train[None, :] - 2.0 * (scaled_test @ scaled_train.T)
    nearest = np.argmin(d2, axis=1)  # first occurrence = smallest index on ties
    return labels[nearest]
