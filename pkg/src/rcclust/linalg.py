"""Dense numeric primitives: top-k symmetric eigenpairs, soft thresholding, norms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .validation import check_square


@dataclass(frozen=True)
class EigenPairs:
    """Top eigenpairs of a symmetric matrix.

    ``vectors`` is column-orthonormal of shape (n, k); ``values`` holds the
    matching eigenvalues sorted non-increasing.
    """

    vectors: np.ndarray
    values: np.ndarray


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its first non-negligible component is positive."""
    out = vectors.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        idx = np.argmax(np.abs(col) > 1e-12)
        if col[idx] < 0:
            out[:, j] = -col
    return out


def top_k_eigs(a, k: int, sym_tol: float = 1e-10) -> EigenPairs:
    """Largest-eigenvalue pairs of a symmetric matrix.

    The input is symmetrized as ``(A + A.T)/2`` when its asymmetry is within
    ``sym_tol`` (tiny asymmetry can be introduced by accumulated rounding),
    and rejected otherwise.  The returned eigenvectors follow a fixed sign
    convention (first non-negligible component positive) so output is
    deterministic; for repeated eigenvalues only the spanned subspace is
    meaningful.

    Raises ``ValueError`` on asymmetric input or invalid ``k``, and
    propagates ``numpy.linalg.LinAlgError`` if the eigensolver fails.
    """
    arr = check_square(a, name="matrix")
    n = arr.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    asym = np.abs(arr - arr.T).max() if arr.size else 0.0
    if asym > sym_tol:
        raise ValueError(
            f"matrix is not symmetric (max |A - A.T| = {asym:.3e} > {sym_tol:.1e})"
        )
    sym = (arr + arr.T) / 2.0
    vals, vecs = scipy.linalg.eigh(sym, subset_by_index=[n - k, n - 1])
    order = np.argsort(vals)[::-1]
    return EigenPairs(vectors=_fix_signs(vecs[:, order]), values=vals[order])


def soft_threshold(a, threshold: float):
    """Shrink magnitudes by ``threshold`` and zero anything smaller.

    ``sign(a) * max(|a| - threshold, 0)`` applied entrywise; this is the
    exact minimizer of ``(mu/2) * (e - a)**2 + |e|`` at ``threshold = 1/mu``.
    Accepts scalars or arrays.
    """
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    arr = np.asarray(a, dtype=float)
    out = np.sign(arr) * np.maximum(np.abs(arr) - threshold, 0.0)
    return float(out) if np.isscalar(a) or out.ndim == 0 else out


def norms(a) -> tuple[float, float]:
    """Entrywise l1 norm and Frobenius norm of a matrix."""
    arr = np.asarray(a, dtype=float)
    return float(np.abs(arr).sum()), float(np.sqrt((arr * arr).sum()))
