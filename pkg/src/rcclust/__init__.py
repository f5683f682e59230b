"""Robust consensus clustering toolkit.

Aggregates ensembles of base partitions through an l1-loss factorization of
the average co-association matrix, compares distributions with two-sample
KS statistics, and ships the evaluation and benchmark machinery around both.
"""

from .admm import (
    AdmmState,
    ConsensusResult,
    RobustConsensusClustering,
    discretize,
    factorization_objective,
    solve_consensus,
)
from .baselines import (
    CoassociationKMeans,
    SimilarityMatrix,
    SpectralConsensus,
    kc_baseline,
    l2_consensus,
    normalize_similarity,
    spectral_objectives,
)
from .ensemble import KMeansEnsemble, build_ensemble, corrupt_ensemble, kmeans_labels
from .ks import (
    EmpiricalCdf,
    KsDecision,
    KsSegmentation,
    cdf_sup_distance,
    component_count,
    critical_value,
    ks_decision,
    ks_limit_cdf,
    ks_statistic,
    pairwise_similarity,
    similarity_clusters,
)
from .linalg import EigenPairs, norms, soft_threshold, top_k_eigs
from .metrics import ForecastInput, accuracy, consistency, forecast, mape, segment_forecast_error
from .partitions import (
    average_coassociation,
    connectivity_matrix,
    dense_labels,
    objective_avg_l1,
    objective_l1,
    objective_l2,
)
from .synth import AdvertiserPopulation, generate_synthetic_advertisers, make_blob_data, synthesize_advertisers

__version__ = "0.1.0"

__all__ = [
    "AdmmState",
    "AdvertiserPopulation",
    "CoassociationKMeans",
    "ConsensusResult",
    "EigenPairs",
    "EmpiricalCdf",
    "ForecastInput",
    "KMeansEnsemble",
    "KsDecision",
    "KsSegmentation",
    "RobustConsensusClustering",
    "SimilarityMatrix",
    "SpectralConsensus",
    "accuracy",
    "average_coassociation",
    "build_ensemble",
    "cdf_sup_distance",
    "component_count",
    "connectivity_matrix",
    "consistency",
    "corrupt_ensemble",
    "critical_value",
    "dense_labels",
    "discretize",
    "factorization_objective",
    "forecast",
    "generate_synthetic_advertisers",
    "kc_baseline",
    "kmeans_labels",
    "ks_decision",
    "ks_limit_cdf",
    "ks_statistic",
    "l2_consensus",
    "make_blob_data",
    "mape",
    "normalize_similarity",
    "norms",
    "objective_avg_l1",
    "objective_l1",
    "objective_l2",
    "pairwise_similarity",
    "segment_forecast_error",
    "similarity_clusters",
    "soft_threshold",
    "solve_consensus",
    "spectral_objectives",
    "synthesize_advertisers",
    "top_k_eigs",
]
