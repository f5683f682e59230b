"""Clustering quality metrics and forecast error formulas."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .validation import check_labels

logger = logging.getLogger(__name__)


def accuracy(truth, pred) -> float:
    """Clustering accuracy under the best one-to-one relabeling of predictions.

    The confusion matrix is padded to square when the two partitions use
    different numbers of clusters, and the matching that maximizes agreement
    is found by the Hungarian algorithm.  The result is invariant under any
    relabeling of either argument.
    """
    t = check_labels(truth)
    p = check_labels(pred)
    if t.size != p.size:
        raise ValueError(f"length mismatch: {t.size} vs {p.size}")
    size = int(max(t.max(), p.max())) + 1
    confusion = np.zeros((size, size), dtype=np.int64)
    np.add.at(confusion, (t, p), 1)
    rows, cols = linear_sum_assignment(confusion, maximize=True)
    return float(confusion[rows, cols].sum()) / t.size


def consistency(a, b) -> tuple[float, float]:
    """Pairwise agreement between two partitions of the same points.

    Over all point pairs i < j, the consistent fraction is where both
    partitions agree on same-cluster vs different-cluster membership;
    returns ``(consistent, 1 - consistent)``.
    """
    la = check_labels(a)
    lb = check_labels(b)
    if la.size != lb.size:
        raise ValueError(f"length mismatch: {la.size} vs {lb.size}")
    if la.size < 2:
        raise ValueError("need at least two points")
    iu = np.triu_indices(la.size, k=1)
    same_a = la[iu[0]] == la[iu[1]]
    same_b = lb[iu[0]] == lb[iu[1]]
    tpn = float(np.mean(same_a == same_b))
    return tpn, 1.0 - tpn


def mape(truth, pred) -> float:
    """Mean absolute percentage error; every ground-truth value must be positive."""
    y = np.asarray(truth, dtype=float)
    yhat = np.asarray(pred, dtype=float)
    if y.shape != yhat.shape or y.ndim != 1 or y.size == 0:
        raise ValueError("truth and pred must be equal-length non-empty 1-D sequences")
    if np.any(y <= 0):
        raise ValueError("ground-truth values must be positive")
    return float(np.mean(np.abs(y - yhat) / y))


@dataclass(frozen=True)
class ForecastInput:
    """Per-entity forecasting quantities.

    ``ecpm_cost`` is treated as cost per single impression; convert
    per-thousand quotes by dividing by 1000 at ingestion.
    """

    total_supply: float
    win_rate: float
    ecpm_cost: float

    def __post_init__(self):
        if self.total_supply < 0 or self.ecpm_cost < 0:
            raise ValueError("supply and cost must be non-negative")
        if not 0.0 <= self.win_rate <= 1.0:
            raise ValueError("win_rate must be in [0, 1]")


def forecast(inp: ForecastInput) -> tuple[float, float]:
    """Forecast identities: impressions = supply * win-rate; spend = impressions * cost."""
    impressions = inp.total_supply * inp.win_rate
    return impressions, impressions * inp.ecpm_cost


def segment_forecast_error(
    assignments, entities: Sequence[ForecastInput]
) -> tuple[float, float]:
    """Forecast error induced by replacing per-entity rates with segment-pooled ones.

    Within each assigned segment, win-rate and cost are replaced by the
    supply-weighted mean over the segment's entities; the forecast identities
    are then re-evaluated per entity and compared against each entity's own
    true impressions and spend via MAPE.  Declared-but-empty segments are
    skipped with a log warning (there is nothing to pool).
    """
    labels = check_labels(assignments, n=len(entities))
    supplies = np.array([e.total_supply for e in entities])
    win_rates = np.array([e.win_rate for e in entities])
    costs = np.array([e.ecpm_cost for e in entities])

    pooled_win = win_rates.copy()
    pooled_cost = costs.copy()
    for seg in range(int(labels.max()) + 1):
        mask = labels == seg
        if not mask.any():
            logger.warning("segment %d is empty; excluded from pooling", seg)
            continue
        weight = supplies[mask]
        if weight.sum() <= 0:
            weight = np.ones(int(mask.sum()))
        pooled_win[mask] = np.average(win_rates[mask], weights=weight)
        pooled_cost[mask] = np.average(costs[mask], weights=weight)

    true_imp = supplies * win_rates
    true_spend = true_imp * costs
    pred_imp = supplies * pooled_win
    pred_spend = pred_imp * pooled_cost
    return mape(true_imp, pred_imp), mape(true_spend, pred_spend)
