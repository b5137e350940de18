"""Average-linkage (UPGMA) hierarchical agglomerative clustering.

Used to assign labels when a dataset arrives without any, and to supply
cluster means for the nearest-neighbor pre-selection step. The implementation
is the naive bottom-up agglomeration with Lance-Williams distance updates;
ties are broken by the lexicographically smallest active pair of original
cluster indices, so results are deterministic in the input order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError
from .neighbors import as_weight_vector


@dataclass(frozen=True)
class ClusterModel:
    assignments: np.ndarray  # per-row cluster id in [0, k)
    means: np.ndarray  # (k, n_cols)
    sizes: np.ndarray  # (k,)


def _pairwise_distances(x: np.ndarray) -> np.ndarray:
    sq = (x * x).sum(axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (x @ x.T)
    np.maximum(d2, 0.0, out=d2)
    return np.sqrt(d2)


def hac(features, k_clusters: int, weights=None) -> ClusterModel:
    """Agglomerate bottom-up under weighted Euclidean distance until exactly
    ``k_clusters`` clusters remain."""
    x = np.asarray(features, dtype=np.float64)
    n = x.shape[0]
    if k_clusters < 1:
        raise ValueError("k_clusters must be >= 1")
    if k_clusters > n:
        raise DataError(f"k_clusters={k_clusters} exceeds {n} rows")
    lam = as_weight_vector(weights, x.shape[1])
    scaled = x * np.sqrt(lam)

    dist = _pairwise_distances(scaled)
    np.fill_diagonal(dist, np.inf)
    active = np.ones(n, dtype=bool)
    sizes = np.ones(n, dtype=np.int64)
    members: list[list[int]] = [[i] for i in range(n)]

    for _ in range(n - k_clusters):
        # argmin over the row-major matrix picks the smallest (i, j) on ties
        flat = int(np.argmin(dist))
        i, j = divmod(flat, n)
        if i > j:
            i, j = j, i
        others = active.copy()
        others[i] = others[j] = False
        si, sj = sizes[i], sizes[j]
        merged = (si * dist[i, others] + sj * dist[j, others]) / (si + sj)
        dist[i, others] = merged
        dist[others, i] = merged
        dist[j, :] = np.inf
        dist[:, j] = np.inf
        sizes[i] = si + sj
        active[j] = False
        members[i].extend(members[j])
        members[j] = []

    cluster_rows = sorted((sorted(members[i]) for i in range(n) if active[i]),
                          key=lambda rows: rows[0])
    assignments = np.empty(n, dtype=np.int64)
    means = np.empty((k_clusters, x.shape[1]))
    out_sizes = np.empty(k_clusters, dtype=np.int64)
    for cid, rows in enumerate(cluster_rows):
        assignments[rows] = cid
        means[cid] = x[rows].mean(axis=0)
        out_sizes[cid] = len(rows)
    return ClusterModel(assignments, means, out_sizes)


def label_by_cluster(model: ClusterModel) -> np.ndarray:
    """Label the smaller of two clusters positive; tie goes to cluster 0."""
    if model.means.shape[0] != 2:
        raise ValueError(f"label_by_cluster needs exactly 2 clusters, got {model.means.shape[0]}")
    positive_cluster = 0 if model.sizes[0] <= model.sizes[1] else 1
    return model.assignments == positive_cluster
