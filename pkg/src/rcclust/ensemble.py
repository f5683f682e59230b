"""Base-partition ensembles built from repeated k-means runs.

Consensus methods in this package consume an ensemble of hard partitions of
the same points.  The standard way to produce one is to run k-means many
times with different initializations and stack the label vectors; a
corruption helper replaces a controlled fraction of views with uniform
random labelings for robustness experiments.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator

from .partitions import average_coassociation
from .validation import check_data_matrix, check_views

DEFAULT_MAX_ITER = 300
DEFAULT_TOL = 1e-6


def _plusplus_centers(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ seeding: subsequent centers drawn proportionally to squared distance."""
    n = x.shape[0]
    centers = np.empty((k, x.shape[1]))
    centers[0] = x[rng.integers(n)]
    closest = ((x - centers[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = closest.sum()
        if total > 0:
            idx = rng.choice(n, p=closest / total)
        else:
            idx = rng.integers(n)
        centers[j] = x[idx]
        closest = np.minimum(closest, ((x - centers[j]) ** 2).sum(axis=1))
    return centers


def _lloyd(
    x: np.ndarray,
    centers: np.ndarray,
    max_iter: int,
    tol: float,
) -> tuple[np.ndarray, np.ndarray, list[float]]:
    """Lloyd iterations from given centers.

    Assignment ties break toward the lowest cluster index (argmin).  An
    empty cluster is reseeded to the point currently farthest from its
    assigned center, which keeps the cluster count constant.  Returns
    ``(labels, centers, inertia_history)`` with one inertia value per
    assignment step.
    """
    k = centers.shape[0]
    history: list[float] = []
    labels = np.zeros(x.shape[0], dtype=np.int64)
    for _ in range(max_iter):
        sq = ((x[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        labels = np.argmin(sq, axis=1)
        point_cost = sq[np.arange(x.shape[0]), labels]
        history.append(float(point_cost.sum()))

        new_centers = centers.copy()
        for j in range(k):
            mask = labels == j
            if mask.any():
                new_centers[j] = x[mask].mean(axis=0)
            else:
                far = int(np.argmax(point_cost))
                new_centers[j] = x[far]
                labels[far] = j
                point_cost = point_cost.copy()
                point_cost[far] = 0.0
        shift = np.sqrt(((new_centers - centers) ** 2).sum(axis=1)).max()
        centers = new_centers
        if shift <= tol:
            break
    return labels, centers, history


def kmeans_labels(
    x,
    n_clusters: int,
    seed: int | np.random.SeedSequence,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
) -> np.ndarray:
    """Single k-means run with k-means++ seeding, deterministic for a given seed."""
    arr = check_data_matrix(x)
    if n_clusters < 1:
        raise ValueError("n_clusters must be >= 1")
    if arr.shape[0] < n_clusters:
        raise ValueError(
            f"need at least n_clusters={n_clusters} points, got {arr.shape[0]}"
        )
    rng = np.random.default_rng(seed)
    centers = _plusplus_centers(arr, n_clusters, rng)
    labels, _, _ = _lloyd(arr, centers, max_iter, tol)
    return labels


def build_ensemble(
    x,
    n_clusters: int,
    n_runs: int = 40,
    seed: int = 0,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
) -> np.ndarray:
    """Stack ``n_runs`` independent k-means partitions as a (n_runs, n) array.

    Per-run seeds are derived deterministically from ``seed``, so identical
    arguments produce a bit-identical ensemble.
    """
    if n_runs < 1:
        raise ValueError("n_runs must be >= 1")
    arr = check_data_matrix(x)
    views = [
        kmeans_labels(arr, n_clusters, seed=np.random.SeedSequence([seed, run]), max_iter=max_iter, tol=tol)
        for run in range(n_runs)
    ]
    return np.vstack(views)


def corrupt_ensemble(views, fraction: float, seed: int) -> np.ndarray:
    """Replace ``ceil(fraction * n_views)`` views with uniform random labelings.

    The replaced views and their labels are drawn deterministically from
    ``seed``; labels are uniform over ``[0, k)`` with ``k`` inferred from the
    ensemble.  Shape is preserved.
    """
    arr = check_views(views)
    if not 0.0 <= fraction <= 1.0:
        raise ValueError("fraction must be in [0, 1]")
    n_views, n = arr.shape
    n_replace = math.ceil(fraction * n_views)
    if n_replace == 0:
        return arr.copy()
    k = int(arr.max()) + 1
    rng = np.random.default_rng(seed)
    chosen = rng.choice(n_views, size=n_replace, replace=False)
    out = arr.copy()
    for v in chosen:
        out[v] = rng.integers(0, k, size=n)
    return out


class KMeansEnsemble(BaseEstimator):
    """Fit a k-means partition ensemble and its average co-association matrix.

    Parameters mirror :func:`build_ensemble`; ``corruption`` optionally
    replaces that fraction of views with random labelings after fitting.

    Attributes set by :meth:`fit`: ``views_`` with shape (n_runs, n) and
    ``coassociation_`` with shape (n, n).
    """

    def __init__(
        self,
        n_clusters: int = 2,
        n_runs: int = 40,
        max_iter: int = DEFAULT_MAX_ITER,
        tol: float = DEFAULT_TOL,
        corruption: float = 0.0,
        random_state: int = 0,
    ):
        self.n_clusters = n_clusters
        self.n_runs = n_runs
        self.max_iter = max_iter
        self.tol = tol
        self.corruption = corruption
        self.random_state = random_state

    def fit(self, X, y=None):
        views = build_ensemble(
            X,
            self.n_clusters,
            n_runs=self.n_runs,
            seed=self.random_state,
            max_iter=self.max_iter,
            tol=self.tol,
        )
        if self.corruption > 0.0:
            views = corrupt_ensemble(views, self.corruption, seed=self.random_state)
        self.views_ = views
        self.coassociation_ = average_coassociation(views)
        return self

    def fit_transform(self, X, y=None) -> np.ndarray:
        return self.fit(X).coassociation_
