"""Hard partitions, connectivity matrices and discrete consensus objectives.

A partition of ``n`` points is a 1-D integer array of dense cluster ids in
``[0, k)``.  An ensemble is a ``(n_views, n)`` array stacking one partition
per row; all views cover the same points.  The pairwise agreement structure
of a partition is its connectivity matrix (1 where two points share a
cluster), and the entrywise mean of those binary matrices over an ensemble
is the average co-association matrix.
"""

from __future__ import annotations

import numpy as np

from .validation import check_coassociation, check_labels, check_views


def dense_labels(labels) -> tuple[np.ndarray, int]:
    """Remap arbitrary label tokens to dense integer ids ``0..k-1``.

    Ids are assigned in order of first appearance, so the mapping is
    deterministic for a fixed input sequence.  Returns ``(labels, k)``.
    """
    arr = np.asarray(labels)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("labels must be a non-empty 1-D sequence")
    _, first_pos, inverse = np.unique(arr, return_index=True, return_inverse=True)
    order = np.argsort(np.argsort(first_pos))
    dense = order[inverse]
    return dense.astype(np.int64), int(dense.max()) + 1


def connectivity_matrix(labels) -> np.ndarray:
    """Binary same-cluster indicator matrix of a partition.

    ``out[i, j] == 1.0`` iff points i and j share a cluster; the diagonal is
    all ones and the result is symmetric.  Invariant under any relabeling of
    cluster ids.
    """
    arr = check_labels(labels)
    return (arr[:, None] == arr[None, :]).astype(float)


def average_coassociation(views) -> np.ndarray:
    """Entrywise mean of the connectivity matrices of all views.

    Entries are fractions with denominator ``n_views`` in [0, 1]; the
    diagonal is exactly 1.
    """
    arr = check_views(views)
    n = arr.shape[1]
    total = np.zeros((n, n))
    for row in arr:
        total += connectivity_matrix(row)
    return total / arr.shape[0]


def objective_l2(views, labels) -> float:
    """Mean squared entrywise distance between a candidate partition and each view."""
    arr = check_views(views)
    cand = connectivity_matrix(check_labels(labels, n=arr.shape[1]))
    total = 0.0
    for row in arr:
        diff = connectivity_matrix(row) - cand
        total += float((diff * diff).sum())
    return total / arr.shape[0]


def objective_l1(views, labels) -> float:
    """Mean entrywise absolute distance between a candidate partition and each view.

    For binary connectivity matrices this coincides exactly with
    :func:`objective_l2`, since ``|d| == d**2`` for ``d`` in {-1, 0, 1}.
    """
    arr = check_views(views)
    cand = connectivity_matrix(check_labels(labels, n=arr.shape[1]))
    total = 0.0
    for row in arr:
        total += float(np.abs(connectivity_matrix(row) - cand).sum())
    return total / arr.shape[0]


def objective_avg_l1(m_avg, labels) -> float:
    """Entrywise l1 distance between an average co-association matrix and a partition."""
    m = check_coassociation(m_avg)
    cand = connectivity_matrix(check_labels(labels, n=m.shape[0]))
    return float(np.abs(m - cand).sum())
