import numpy as np
import pytest

from conftest import relabel_match
from rcclust.ensemble import (
    KMeansEnsemble,
    _lloyd,
    _plusplus_centers,
    build_ensemble,
    corrupt_ensemble,
    kmeans_labels,
)
from rcclust.partitions import average_coassociation
from rcclust.synth import make_blob_data


class TestKMeans:
    def test_two_separated_blobs(self):
        x = np.array([[0.0], [0.1], [10.0], [10.1]])
        labels = kmeans_labels(x, 2, seed=0)
        assert relabel_match(labels, [0, 0, 1, 1])

    def test_k_equals_one(self):
        x = np.arange(6, dtype=float).reshape(-1, 1)
        assert np.array_equal(kmeans_labels(x, 1, seed=3), np.zeros(6, dtype=int))

    def test_k_equals_n_distinct_points(self, rng):
        x = rng.standard_normal((5, 2)) * 3
        labels = kmeans_labels(x, 5, seed=1)
        assert sorted(labels.tolist()) == [0, 1, 2, 3, 4]

    def test_fewer_points_than_clusters(self):
        with pytest.raises(ValueError):
            kmeans_labels(np.zeros((2, 1)), 3, seed=0)

    def test_deterministic(self, rng):
        x = rng.standard_normal((30, 3))
        a = kmeans_labels(x, 4, seed=9)
        b = kmeans_labels(x, 4, seed=9)
        assert np.array_equal(a, b)

    def test_inertia_non_increasing(self, rng):
        x, _ = make_blob_data(90, 3, sep=2.0, std=1.5, seed=4)
        centers = _plusplus_centers(x, 3, np.random.default_rng(11))
        _, _, history = _lloyd(x, centers, max_iter=300, tol=0.0)
        assert all(b <= a + 1e-9 for a, b in zip(history, history[1:]))

    def test_empty_cluster_reseeded(self):
        # duplicate points force an initially empty cluster; k must stay constant
        x = np.array([[0.0], [0.0], [0.0], [5.0]])
        labels = kmeans_labels(x, 3, seed=2)
        assert len(set(labels.tolist())) == 3


class TestBuildEnsemble:
    def test_single_run_matches_kmeans(self, rng):
        x = rng.standard_normal((20, 2))
        views = build_ensemble(x, 3, n_runs=1, seed=5)
        expected = kmeans_labels(x, 3, seed=np.random.SeedSequence([5, 0]))
        assert np.array_equal(views[0], expected)

    def test_reproducible(self, rng):
        x = rng.standard_normal((25, 2))
        a = build_ensemble(x, 2, n_runs=6, seed=7)
        b = build_ensemble(x, 2, n_runs=6, seed=7)
        assert np.array_equal(a, b)

    def test_blobs_within_blob_coassociation(self):
        x, y = make_blob_data(60, 2, sep=5.0, std=1.0, seed=0)
        views = build_ensemble(x, 2, n_runs=40, seed=0)
        m = average_coassociation(views)
        within = m[np.ix_(y == 0, y == 0)]
        assert within.mean() >= 0.9

    def test_shape(self, rng):
        x = rng.standard_normal((15, 2))
        assert build_ensemble(x, 2, n_runs=4, seed=0).shape == (4, 15)


class TestCorruptEnsemble:
    def test_fraction_zero_identity(self, rng):
        views = rng.integers(0, 3, size=(5, 12))
        assert np.array_equal(corrupt_ensemble(views, 0.0, seed=0), views)

    def test_ceiling_rule(self, rng):
        views = rng.integers(0, 2, size=(4, 50))
        out = corrupt_ensemble(views, 0.5, seed=3)
        changed = sum(1 for a, b in zip(views, out) if not np.array_equal(a, b))
        assert changed == 2

    def test_shape_preserved(self, rng):
        views = rng.integers(0, 3, size=(7, 9))
        assert corrupt_ensemble(views, 0.4, seed=1).shape == (7, 9)

    def test_full_corruption_off_diagonal_near_uniform(self):
        # expected off-diagonal co-association of random labelings is 1/k
        k, acc = 3, []
        base = np.tile(np.arange(k), (6, 40 // k + 1))[:, :40]
        for seed in range(30):
            out = corrupt_ensemble(base, 1.0, seed=seed)
            m = average_coassociation(out)
            acc.append(m[~np.eye(m.shape[0], dtype=bool)].mean())
        assert np.mean(acc) == pytest.approx(1.0 / k, abs=0.05)

    def test_deterministic(self, rng):
        views = rng.integers(0, 4, size=(6, 20))
        a = corrupt_ensemble(views, 0.6, seed=8)
        b = corrupt_ensemble(views, 0.6, seed=8)
        assert np.array_equal(a, b)

    def test_bad_fraction(self, rng):
        with pytest.raises(ValueError):
            corrupt_ensemble(rng.integers(0, 2, size=(3, 5)), 1.5, seed=0)


class TestKMeansEnsembleEstimator:
    def test_fit_sets_attributes(self):
        x, _ = make_blob_data(40, 2, sep=4.0, seed=1)
        est = KMeansEnsemble(n_clusters=2, n_runs=5, random_state=0).fit(x)
        assert est.views_.shape == (5, 40)
        assert est.coassociation_.shape == (40, 40)
        assert np.array_equal(est.coassociation_, est.coassociation_.T)

    def test_fit_transform_equals_attribute(self):
        x, _ = make_blob_data(30, 3, sep=4.0, seed=2)
        est = KMeansEnsemble(n_clusters=3, n_runs=4, random_state=1)
        m = est.fit_transform(x)
        assert np.array_equal(m, est.coassociation_)

    def test_get_params_roundtrip(self):
        est = KMeansEnsemble(n_clusters=4, n_runs=7, corruption=0.25, random_state=3)
        params = est.get_params()
        clone = KMeansEnsemble(**params)
        assert clone.get_params() == params
