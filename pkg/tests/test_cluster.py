import itertools

import numpy as np
import pytest

from entrosmote.cluster import hac, label_by_cluster
from entrosmote.errors import DataError


def brute_force_hac(points, k):
    """Exhaustive average-linkage agglomeration over frozensets.

    Linkage is recomputed from raw pairwise distances at every step, so any
    bookkeeping bug in the incremental implementation shows up as a mismatch.
    Ties resolved by the smallest (min row of a, min row of b) pair.
    """
    points = np.asarray(points, dtype=float)
    n = len(points)
    d = np.sqrt(((points[:, None, :] - points[None, :, :]) ** 2).sum(-1))
    clusters = [frozenset([i]) for i in range(n)]
    while len(clusters) > k:
        best = None
        for a, b in itertools.combinations(clusters, 2):
            link = np.mean([d[i, j] for i in a for j in b])
            key = (link, min(min(a), min(b)), max(min(a), min(b)))
            if best is None or key < best[0]:
                best = (key, a, b)
        _, a, b = best
        clusters.remove(a)
        clusters.remove(b)
        clusters.append(a | b)
    return sorted((sorted(c) for c in clusters), key=lambda rows: rows[0])


class TestHac:
    def test_two_blob_memberships(self):
        rng = np.random.default_rng(0)
        a = rng.normal(0.0, 1.0, (20, 3))
        b = rng.normal(10.0, 1.0, (20, 3))
        model = hac(np.vstack([a, b]), 2)
        assert len(set(model.assignments[:20])) == 1
        assert len(set(model.assignments[20:])) == 1
        assert model.assignments[0] != model.assignments[20]

    def test_blob_agrees_with_brute_force(self):
        rng = np.random.default_rng(1)
        pts = np.vstack([rng.normal(0, 1, (4, 2)), rng.normal(10, 1, (4, 2))])
        model = hac(pts, 2)
        expected = brute_force_hac(pts, 2)
        got = sorted(
            (sorted(np.flatnonzero(model.assignments == c)) for c in range(2)),
            key=lambda rows: rows[0],
        )
        assert [list(map(int, g)) for g in got] == expected

    def test_single_point(self):
        model = hac(np.array([[1.0, 2.0]]), 1)
        assert model.assignments.tolist() == [0]
        assert model.means.tolist() == [[1.0, 2.0]]

    def test_duplicates_merge_first(self):
        pts = np.array([[0.0], [5.0], [0.0], [9.0]])
        model = hac(pts, 3)
        assert model.assignments[0] == model.assignments[2]

    def test_errors(self):
        pts = np.zeros((3, 1))
        with pytest.raises(DataError):
            hac(pts, 4)
        with pytest.raises(ValueError):
            hac(pts, 0)

    def test_means_match_members(self):
        rng = np.random.default_rng(7)
        pts = rng.normal(0, 1, (12, 3))
        model = hac(pts, 3)
        for c in range(3):
            members = pts[model.assignments == c]
            assert model.means[c] == pytest.approx(members.mean(axis=0), abs=1e-9)
            assert model.sizes[c] == len(members)

    def test_permutation_invariance_up_to_relabel(self):
        rng = np.random.default_rng(9)
        pts = rng.normal(0, 1, (10, 2))
        perm = rng.permutation(10)
        model = hac(pts, 3)
        model_p = hac(pts[perm], 3)
        # compare partitions as sets of original-row sets
        def partition(assign, order):
            groups = {}
            for local, cid in enumerate(assign):
                groups.setdefault(cid, set()).add(int(order[local]))
            return sorted(map(sorted, groups.values()))

        assert partition(model.assignments, np.arange(10)) == partition(
            model_p.assignments, perm)

    def test_small_instance_oracle(self):
        rng = np.random.default_rng(123)
        for _ in range(200):
            n = int(rng.integers(2, 9))
            k = int(rng.integers(1, n + 1))
            pts = rng.normal(0, 1, (n, 2))
            model = hac(pts, k)
            got = sorted(
                (sorted(map(int, np.flatnonzero(model.assignments == c))) for c in range(k)),
                key=lambda rows: rows[0],
            )
            assert got == brute_force_hac(pts, k)

    def test_weighted_distance_changes_merges(self):
        # under weights (1, 0) the second coordinate is invisible
        pts = np.array([[0.0, 0.0], [0.1, 100.0], [5.0, 0.0]])
        model = hac(pts, 2, weights=np.array([1.0, 0.0]))
        assert model.assignments[0] == model.assignments[1]


class TestLabelByCluster:
    def test_minority_positive(self):
        pts = np.vstack([np.zeros((5, 1)), np.full((95, 1), 10.0)])
        model = hac(pts, 2)
        labels = label_by_cluster(model)
        assert labels.sum() == 5
        assert labels[:5].all()

    def test_tie_goes_to_cluster_zero(self):
        pts = np.vstack([np.zeros((3, 1)), np.full((3, 1), 10.0)])
        model = hac(pts, 2)
        labels = label_by_cluster(model)
        assert labels.sum() == 3
        assert labels[model.assignments == 0].all()

    def test_requires_two_clusters(self):
        model = hac(np.zeros((3, 1)), 3)
        with pytest.raises(ValueError):
            label_by_cluster(model)
