"""Reference consensus methods and spectral-objective machinery.

Two baselines the l1 solver is compared against, operating on the same
average co-association matrix: a plain l2 / spectral consensus (top-k
eigenvectors, then rounding) and k-means over the matrix rows.  The module
also exposes degree normalization of a similarity matrix and the paired
Frobenius / trace objectives whose equivalence links the spectral consensus
to normalized-cut clustering.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .ensemble import kmeans_labels
from .linalg import top_k_eigs
from .validation import check_symmetric


@dataclass(frozen=True)
class SimilarityMatrix:
    """Symmetric non-negative pairwise similarity with per-row degrees."""

    values: np.ndarray
    degrees: np.ndarray

    @classmethod
    def from_values(cls, values) -> "SimilarityMatrix":
        arr = check_symmetric(values, name="similarity matrix")
        if arr.min() < 0:
            raise ValueError("similarity entries must be non-negative")
        return cls(values=arr, degrees=arr.sum(axis=1))

    @property
    def n(self) -> int:
        return self.values.shape[0]


def _as_similarity(s) -> SimilarityMatrix:
    return s if isinstance(s, SimilarityMatrix) else SimilarityMatrix.from_values(s)


def normalize_similarity(s) -> np.ndarray:
    """Degree-normalize a similarity matrix: ``S_ij / sqrt(d_i * d_j)``.

    Raises ``ValueError`` naming the first zero-degree (isolated) row, since
    the normalization is undefined there.
    """
    sim = _as_similarity(s)
    isolated = np.flatnonzero(sim.degrees <= 0)
    if isolated.size:
        raise ValueError(f"isolated node: row {isolated[0]} has zero degree")
    inv_sqrt = 1.0 / np.sqrt(sim.degrees)
    return sim.values * np.outer(inv_sqrt, inv_sqrt)


def l2_consensus(m, n_clusters: int, seed: int = 0, normalize: bool = False) -> np.ndarray:
    """Spectral (l2-loss) consensus: cluster the rows of the top-k eigenvectors.

    With ``normalize=True`` the matrix is degree-normalized first, matching
    the normalized-cut formulation; by default the co-association matrix is
    used directly, as the l1 solver does.
    """
    sim = _as_similarity(m)
    if not 1 <= n_clusters <= sim.n:
        raise ValueError(f"n_clusters must be in [1, {sim.n}]")
    target = normalize_similarity(sim) if normalize else sim.values
    basis = top_k_eigs(target, n_clusters).vectors
    return kmeans_labels(basis, n_clusters, seed=seed)


def kc_baseline(m, n_clusters: int, seed: int = 0) -> np.ndarray:
    """k-means over the rows of the co-association matrix as feature vectors."""
    sim = _as_similarity(m)
    if not 1 <= n_clusters <= sim.n:
        raise ValueError(f"n_clusters must be in [1, {sim.n}]")
    return kmeans_labels(sim.values, n_clusters, seed=seed)


def spectral_objectives(s_hat, basis) -> tuple[float, float]:
    """Frobenius misfit and trace objective of an orthonormal basis.

    Returns ``(||S - H H.T||_F**2, trace(H.T S H))``.  For column-orthonormal
    H of fixed shape the combination ``frob + 2 * trace`` is a constant of S
    alone, so minimizing the first is equivalent to maximizing the second.
    """
    s = np.asarray(s_hat, dtype=float)
    h = np.asarray(basis, dtype=float)
    diff = s - h @ h.T
    frob = float((diff * diff).sum())
    trace = float(np.trace(h.T @ s @ h))
    return frob, trace


class SpectralConsensus(ClusterMixin, BaseEstimator):
    """Estimator wrapper around :func:`l2_consensus` (fit on a precomputed matrix)."""

    def __init__(self, n_clusters: int = 2, normalize: bool = False, random_state: int = 0):
        self.n_clusters = n_clusters
        self.normalize = normalize
        self.random_state = random_state

    def fit(self, X, y=None):
        self.labels_ = l2_consensus(
            X, self.n_clusters, seed=self.random_state, normalize=self.normalize
        )
        return self


class CoassociationKMeans(ClusterMixin, BaseEstimator):
    """Estimator wrapper around :func:`kc_baseline` (fit on a precomputed matrix)."""

    def __init__(self, n_clusters: int = 2, random_state: int = 0):
        self.n_clusters = n_clusters
        self.random_state = random_state

    def fit(self, X, y=None):
        self.labels_ = kc_baseline(X, self.n_clusters, seed=self.random_state)
        return self
