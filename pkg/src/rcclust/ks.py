"""Two-sample Kolmogorov-Smirnov machinery and similarity graphs.

Entities are compared through the largest gap between their empirical
CDFs, scaled by ``sqrt(m*n/(m+n))``.  Under the null of equal distributions
the scaled statistic has a parameter-free limiting distribution, so a
single critical value per significance level turns pairwise distances into
a binary similarity graph, which feeds the same spectral pipeline as
co-association matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from sklearn.base import BaseEstimator, ClusterMixin

from .baselines import SimilarityMatrix, normalize_similarity
from .ensemble import kmeans_labels
from .linalg import top_k_eigs

_SERIES_TOL = 1e-12


class EmpiricalCdf:
    """Right-continuous step CDF of one entity's observations."""

    def __init__(self, samples):
        arr = np.asarray(samples, dtype=float).ravel()
        if arr.size == 0:
            raise ValueError("need at least one observation")
        if not np.all(np.isfinite(arr)):
            raise ValueError("observations must be finite")
        self.samples = np.sort(arr)
        self.m = int(arr.size)

    def evaluate(self, x):
        """Fraction of samples <= x (a sample point counts at itself)."""
        pos = np.searchsorted(self.samples, x, side="right")
        out = pos / self.m
        return float(out) if np.isscalar(x) else out

    def __repr__(self) -> str:  # pragma: no cover
        return f"EmpiricalCdf(m={self.m})"


@dataclass(frozen=True)
class KsDecision:
    """Outcome of one two-sample comparison at significance ``alpha``."""

    distance: float
    critical: float
    similar: bool
    alpha: float


def cdf_sup_distance(f: EmpiricalCdf, g: EmpiricalCdf) -> float:
    """Supremum of ``|F - G|`` over the whole real line (unscaled).

    Both CDFs are piecewise constant, so the supremum is attained at a jump;
    it suffices to compare the functions just before and at every pooled
    sample point.
    """
    points = np.concatenate([f.samples, g.samples])
    before = np.abs(
        np.searchsorted(f.samples, points, side="left") / f.m
        - np.searchsorted(g.samples, points, side="left") / g.m
    )
    at = np.abs(
        np.searchsorted(f.samples, points, side="right") / f.m
        - np.searchsorted(g.samples, points, side="right") / g.m
    )
    return float(max(before.max(), at.max()))


def ks_statistic(f: EmpiricalCdf, g: EmpiricalCdf) -> float:
    """Scaled two-sample statistic ``sqrt(m*n/(m+n)) * sup|F - G|``."""
    scale = math.sqrt(f.m * g.m / (f.m + g.m))
    return scale * cdf_sup_distance(f, g)


def ks_limit_cdf(z: float) -> float:
    """Limiting distribution of the scaled statistic.

    ``1 - 2 * sum_{i>=1} (-1)**(i-1) * exp(-2 i**2 z**2)``, truncated once a
    term drops below 1e-12 in magnitude; 0 for z <= 0 by convention.
    """
    if z <= 0:
        return 0.0
    total = 0.0
    sign = 1.0
    i = 1
    while True:
        term = math.exp(-2.0 * i * i * z * z)
        if term < _SERIES_TOL:
            break
        total += sign * term
        sign = -sign
        i += 1
    return max(0.0, min(1.0, 1.0 - 2.0 * total))


def critical_value(alpha: float) -> float:
    """Threshold exceeded by the null statistic with probability ``alpha``.

    Solves ``ks_limit_cdf(c) = 1 - alpha`` by bisection on [0, 10] to 1e-10.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must be in (0, 1)")
    lo, hi = 0.0, 10.0
    target = 1.0 - alpha
    while hi - lo > 1e-10:
        mid = (lo + hi) / 2.0
        if ks_limit_cdf(mid) < target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def ks_decision(f: EmpiricalCdf, g: EmpiricalCdf, alpha: float) -> KsDecision:
    """Compare two entities: similar iff the scaled distance is within the critical value."""
    critical = critical_value(alpha)
    distance = ks_statistic(f, g)
    return KsDecision(distance=distance, critical=critical, similar=distance <= critical, alpha=alpha)


def pairwise_similarity(cdfs: Sequence[EmpiricalCdf], alpha: float) -> SimilarityMatrix:
    """Binary similarity graph over entities: 1 where the KS test accepts equality.

    Diagonal entries are 1; the matrix is symmetric by construction.
    """
    if len(cdfs) < 2:
        raise ValueError("need at least two entities")
    critical = critical_value(alpha)
    n = len(cdfs)
    values = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            similar = ks_statistic(cdfs[i], cdfs[j]) <= critical
            values[i, j] = values[j, i] = 1.0 if similar else 0.0
    return SimilarityMatrix(values=values, degrees=values.sum(axis=1))


def component_count(s: SimilarityMatrix | np.ndarray) -> int:
    """Number of connected components of the thresholded similarity graph."""
    values = s.values if isinstance(s, SimilarityMatrix) else np.asarray(s, dtype=float)
    n_comp, _ = connected_components(csr_matrix(values > 0), directed=False)
    return int(n_comp)


def similarity_clusters(s: SimilarityMatrix | np.ndarray, n_clusters: int, seed: int = 0) -> np.ndarray:
    """Partition a similarity graph into ``n_clusters`` groups.

    Degree-normalizes the graph, embeds it with the top-k eigenvectors and
    rounds with seeded k-means.  Zero-degree nodes cannot be normalized;
    each becomes its own provisional cluster and the remainder is embedded
    into the remaining cluster budget (at least one).
    """
    sim = s if isinstance(s, SimilarityMatrix) else SimilarityMatrix.from_values(s)
    if not 1 <= n_clusters <= sim.n:
        raise ValueError(f"n_clusters must be in [1, {sim.n}]")
    isolated = np.flatnonzero(sim.degrees <= 0)
    labels = np.zeros(sim.n, dtype=np.int64)
    if isolated.size == 0:
        basis = top_k_eigs(normalize_similarity(sim), n_clusters).vectors
        return kmeans_labels(basis, n_clusters, seed=seed)

    rest = np.setdiff1d(np.arange(sim.n), isolated)
    k_rest = max(1, n_clusters - isolated.size)
    if rest.size:
        sub = SimilarityMatrix.from_values(sim.values[np.ix_(rest, rest)])
        k_rest = min(k_rest, rest.size)
        basis = top_k_eigs(normalize_similarity(sub), k_rest).vectors
        labels[rest] = kmeans_labels(basis, k_rest, seed=seed)
    labels[isolated] = k_rest + np.arange(isolated.size)
    return labels


class KsSegmentation(ClusterMixin, BaseEstimator):
    """Segment entities from their raw observation samples.

    ``fit(X)`` takes a sequence of 1-D observation arrays (one per entity),
    builds the KS similarity graph at level ``alpha`` and partitions it into
    ``n_clusters`` groups.  Exposes ``labels_``, ``similarity_`` and
    ``n_components_`` (connected components of the thresholded graph, kept
    for reference alongside the requested cluster count).
    """

    def __init__(self, n_clusters: int = 2, alpha: float = 0.05, random_state: int = 0):
        self.n_clusters = n_clusters
        self.alpha = alpha
        self.random_state = random_state

    def fit(self, X, y=None):
        cdfs = [x if isinstance(x, EmpiricalCdf) else EmpiricalCdf(x) for x in X]
        self.similarity_ = pairwise_similarity(cdfs, self.alpha)
        self.n_components_ = component_count(self.similarity_)
        self.labels_ = similarity_clusters(
            self.similarity_, self.n_clusters, seed=self.random_state
        )
        return self
