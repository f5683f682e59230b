"""Consensus clustering by l1-loss factorization of a co-association matrix.

Given an average co-association matrix M, the solver looks for a
column-orthonormal basis H (n x k) and non-negative diagonal scales D
minimizing the entrywise l1 objective ``|| M - H diag(D) H.T ||_1``, i.e. a
rank-k connectivity model whose misfit is charged linearly rather than
quadratically, so a minority of corrupted views cannot dominate the fit.

The split ``E = H D H.T - M`` (the model's signed excess over the data)
turns the problem into subproblems coupled by a multiplier matrix and an
increasing penalty:

* error step: soft-threshold ``H D H.T - M + multiplier/penalty`` at
  ``1/penalty`` (the exact minimizer of its LASSO-type subproblem);
* factor step: top-k eigenpairs of ``M + E - multiplier/penalty`` -- the
  data with the sparse misfit folded back in -- with eigenvalues clamped
  at zero to keep D feasible;
* penalty growth by a fixed factor, then a multiplier update against the
  current constraint violation ``E - (H D H.T - M)``.

The penalty is grown *before* the multiplier step, and the multiplier uses
the grown value; this ordering is deliberate and is what the update-order
tests pin down.  The problem is non-convex, so a run that never brings the
constraint violation under tolerance reports ``converged=False`` and
returns the best-residual iterate instead of the last one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .ensemble import kmeans_labels
from .linalg import norms, soft_threshold, top_k_eigs
from .validation import check_coassociation

DEFAULT_RHO = 1.05
DEFAULT_MU0 = 1e-2
DEFAULT_MU_MAX = 1e6
DEFAULT_MAX_ITER = 300

# Residuals this far above the best one seen mean the run is diverging;
# iterating further only accumulates float noise in the multiplier.
DIVERGENCE_FACTOR = 1e9


@dataclass
class AdmmState:
    """One solver iterate.

    ``error`` and ``multiplier`` are (n, n) symmetric matrices, ``basis`` is
    (n, k) column-orthonormal, ``scales`` holds the k non-negative diagonal
    values, and ``primal_residual`` is the Frobenius norm of the split
    violation ``error - (basis @ diag(scales) @ basis.T - m)``.
    """

    error: np.ndarray
    basis: np.ndarray
    scales: np.ndarray
    multiplier: np.ndarray
    penalty: float
    n_iter: int = 0
    primal_residual: float = 0.0

    def factorization(self) -> np.ndarray:
        """Current rank-k model ``basis @ diag(scales) @ basis.T``, symmetrized."""
        prod = (self.basis * self.scales) @ self.basis.T
        return (prod + prod.T) / 2.0


@dataclass
class ConsensusResult:
    """Outcome of :func:`solve_consensus`.

    ``objective_history`` has one l1-objective value per iteration run;
    ``residual_history`` and ``penalty_history`` match it entry for entry.
    ``state`` is the best-residual iterate (the last one when converged).
    """

    labels: np.ndarray
    state: AdmmState
    objective_history: np.ndarray
    residual_history: np.ndarray
    penalty_history: np.ndarray
    converged: bool
    best_iter: int = 0
    embedding: np.ndarray = field(default=None, repr=False)


def factorization_objective(m, basis, scales) -> float:
    """Entrywise l1 norm of ``m - basis @ diag(scales) @ basis.T``."""
    m = np.asarray(m, dtype=float)
    prod = (np.asarray(basis) * np.asarray(scales)) @ np.asarray(basis).T
    return norms(m - prod)[0]


def update_error(state: AdmmState, m) -> np.ndarray:
    """Error step: soft-threshold ``H D H.T - M + multiplier/penalty`` at 1/penalty."""
    target = state.factorization() - m + state.multiplier / state.penalty
    return soft_threshold(target, 1.0 / state.penalty)


def update_factors(state: AdmmState, m) -> tuple[np.ndarray, np.ndarray]:
    """Factor step: top-k eigenpairs of ``M + E - multiplier/penalty``.

    Eigenvalues are clamped at zero: early iterates can make the target
    indefinite, and a negative scale would leave the feasible set.  With the
    clamp this choice minimizes the Frobenius misfit over all feasible
    (basis, scales) pairs.
    """
    target = m + state.error - state.multiplier / state.penalty
    pairs = top_k_eigs(target, state.scales.shape[0])
    return pairs.vectors, np.maximum(pairs.values, 0.0)


def iterate_states(
    m,
    n_clusters: int,
    *,
    rho: float = DEFAULT_RHO,
    mu0: float = DEFAULT_MU0,
    mu_max: float = DEFAULT_MU_MAX,
    max_iter: int = DEFAULT_MAX_ITER,
) -> Iterator[AdmmState]:
    """Yield the solver state after each full update sweep.

    The basis starts at the top-k eigenpairs of ``m`` itself (the l2
    solution), so the first iterate of an exactly representable matrix is
    already optimal.  Consumers decide when to stop; :func:`solve_consensus`
    adds the tolerance / divergence logic.
    """
    m = check_coassociation(m)
    n = m.shape[0]
    if not 1 <= n_clusters <= n:
        raise ValueError(f"n_clusters must be in [1, {n}], got {n_clusters}")
    if rho <= 1.0:
        raise ValueError("rho must be > 1")
    if mu0 <= 0 or mu_max < mu0:
        raise ValueError("need mu0 > 0 and mu_max >= mu0")

    pairs = top_k_eigs(m, n_clusters)
    state = AdmmState(
        error=np.zeros_like(m),
        basis=pairs.vectors,
        scales=np.maximum(pairs.values, 0.0),
        multiplier=np.zeros_like(m),
        penalty=mu0,
    )
    for it in range(1, max_iter + 1):
        state.error = update_error(state, m)
        state.basis, state.scales = update_factors(state, m)
        state.penalty = min(rho * state.penalty, mu_max)
        violation = state.error - (state.factorization() - m)
        state.multiplier = state.multiplier - state.penalty * violation
        state.n_iter = it
        state.primal_residual = norms(violation)[1]
        yield state


def discretize(basis, scales, n_clusters: int, seed: int) -> np.ndarray:
    """Round a continuous factorization to hard labels.

    Runs seeded k-means on the rows of ``basis * sqrt(scales)`` (the
    natural point embedding of the rank-k connectivity model).
    """
    basis = np.asarray(basis, dtype=float)
    scales = np.maximum(np.asarray(scales, dtype=float), 0.0)
    return kmeans_labels(basis * np.sqrt(scales), n_clusters, seed=seed)


def solve_consensus(
    m,
    n_clusters: int,
    *,
    rho: float = DEFAULT_RHO,
    mu0: float = DEFAULT_MU0,
    mu_max: float = DEFAULT_MU_MAX,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float | None = None,
    seed: int = 0,
) -> ConsensusResult:
    """Run the l1 consensus solver on a co-association matrix.

    Stops once the constraint violation falls under ``tol`` (default
    ``1e-6 * n``) or after ``max_iter`` sweeps.  Labels are produced by
    :func:`discretize` from the best-residual iterate; ``converged`` is
    False when the tolerance was never met.
    """
    m = check_coassociation(m)
    if tol is None:
        tol = 1e-6 * m.shape[0]
    if tol <= 0:
        raise ValueError("tol must be positive")

    objective, residual, penalty = [], [], []
    best: AdmmState | None = None
    best_iter = 0
    converged = False
    for state in iterate_states(
        m, n_clusters, rho=rho, mu0=mu0, mu_max=mu_max, max_iter=max_iter
    ):
        objective.append(factorization_objective(m, state.basis, state.scales))
        residual.append(state.primal_residual)
        penalty.append(state.penalty)
        if best is None or state.primal_residual < best.primal_residual:
            best = AdmmState(
                error=state.error.copy(),
                basis=state.basis.copy(),
                scales=state.scales.copy(),
                multiplier=state.multiplier.copy(),
                penalty=state.penalty,
                n_iter=state.n_iter,
                primal_residual=state.primal_residual,
            )
            best_iter = state.n_iter
        if state.primal_residual <= tol:
            converged = True
            break
        if not np.isfinite(state.primal_residual) or (
            state.primal_residual > DIVERGENCE_FACTOR * max(best.primal_residual, 1e-12)
        ):
            break

    embedding = best.basis * np.sqrt(best.scales)
    return ConsensusResult(
        labels=discretize(best.basis, best.scales, n_clusters, seed),
        state=best,
        objective_history=np.asarray(objective),
        residual_history=np.asarray(residual),
        penalty_history=np.asarray(penalty),
        converged=converged,
        best_iter=best_iter,
        embedding=embedding,
    )


class RobustConsensusClustering(ClusterMixin, BaseEstimator):
    """Cluster points from a precomputed co-association / similarity matrix.

    The estimator wraps :func:`solve_consensus` in the usual fit/predict
    shape: ``fit(M)`` expects a symmetric (n, n) matrix with entries in
    [0, 1] (e.g. the output of :class:`rcclust.ensemble.KMeansEnsemble`)
    and exposes ``labels_`` plus the solver diagnostics.

    Parameters
    ----------
    n_clusters : target number of clusters.
    rho : penalty growth factor (> 1).
    mu0, mu_max : initial and maximum penalty.
    max_iter : iteration cap.
    tol : residual tolerance; None means ``1e-6 * n``.
    random_state : seed for the discretization step.
    """

    def __init__(
        self,
        n_clusters: int = 2,
        rho: float = DEFAULT_RHO,
        mu0: float = DEFAULT_MU0,
        mu_max: float = DEFAULT_MU_MAX,
        max_iter: int = DEFAULT_MAX_ITER,
        tol: float | None = None,
        random_state: int = 0,
    ):
        self.n_clusters = n_clusters
        self.rho = rho
        self.mu0 = mu0
        self.mu_max = mu_max
        self.max_iter = max_iter
        self.tol = tol
        self.random_state = random_state

    def fit(self, X, y=None):
        result = solve_consensus(
            X,
            self.n_clusters,
            rho=self.rho,
            mu0=self.mu0,
            mu_max=self.mu_max,
            max_iter=self.max_iter,
            tol=self.tol,
            seed=self.random_state,
        )
        self.labels_ = result.labels
        self.embedding_ = result.embedding
        self.state_ = result.state
        self.objective_history_ = result.objective_history
        self.converged_ = result.converged
        self.n_iter_ = len(result.objective_history)
        self.result_ = result
        return self
