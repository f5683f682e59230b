"""Input validation helpers shared across the package."""

from __future__ import annotations

import numpy as np


def check_labels(labels, n_clusters: int | None = None, n: int | None = None) -> np.ndarray:
    """Validate a hard cluster assignment and return it as a 1-D int array.

    Labels must already be dense ids in ``[0, n_clusters)``; use
    :func:`rcclust.partitions.dense_labels` to remap arbitrary tokens first.
    """
    arr = np.asarray(labels)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("labels must be a non-empty 1-D sequence")
    if not np.issubdtype(arr.dtype, np.integer):
        cast = arr.astype(np.int64)
        if not np.array_equal(cast, arr):
            raise ValueError("labels must be integers")
        arr = cast
    if arr.min() < 0:
        raise ValueError("labels must be non-negative")
    if n is not None and arr.size != n:
        raise ValueError(f"expected {n} labels, got {arr.size}")
    if n_clusters is not None and arr.max() >= n_clusters:
        raise ValueError(
            f"label {arr.max()} out of range for {n_clusters} clusters"
        )
    return arr.astype(np.int64, copy=False)


def check_views(views) -> np.ndarray:
    """Validate an ensemble of partitions as a (n_views, n) int array."""
    arr = np.asarray(views)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("ensemble must be a non-empty 2-D array of shape (n_views, n)")
    rows = [check_labels(row) for row in arr]
    return np.vstack(rows)


def check_square(a, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be a square 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_symmetric(a, tol: float = 1e-10, name: str = "matrix") -> np.ndarray:
    """Validate symmetry within ``tol`` and return the symmetrized matrix ``(A + A.T)/2``."""
    arr = check_square(a, name=name)
    asym = np.abs(arr - arr.T).max() if arr.size else 0.0
    if asym > tol:
        raise ValueError(f"{name} is not symmetric (max |A - A.T| = {asym:.3e} > {tol:.1e})")
    return (arr + arr.T) / 2.0


def check_coassociation(m, tol: float = 1e-10) -> np.ndarray:
    """Validate a co-association / similarity matrix: square, symmetric, entries in [0, 1]."""
    arr = check_symmetric(m, tol=tol, name="co-association matrix")
    if arr.size and (arr.min() < -tol or arr.max() > 1.0 + tol):
        raise ValueError("co-association entries must lie in [0, 1]")
    return np.clip(arr, 0.0, 1.0)


def check_data_matrix(x, name: str = "data") -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty 2-D array")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr
