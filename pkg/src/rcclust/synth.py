"""Synthetic data generators for benchmarks and the advertiser pipeline.

The advertiser generator stands in for proprietary campaign data: each
segment has its own win-rate distribution (Beta) and cost distribution
(Gamma), every entity draws observation samples from its segment's
distributions, and a low-dimensional Gaussian "textual" feature vector
provides an intentionally imperfect third view.  Entity order is
segment-major, and all draws are deterministic in the seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .io import write_dataset, write_forecast_truth, write_samples
from .metrics import ForecastInput

# Per-segment (alpha, beta) for win rates and (shape, scale) for costs.
# Cycled when more segments are requested; means are well separated so
# segments are genuinely distinguishable from moderate sample sizes.
WIN_RATE_PARAMS = [(20.0, 5.0), (5.0, 20.0), (12.0, 12.0), (2.0, 8.0), (8.0, 2.0)]
COST_PARAMS = [(2.0, 0.010), (6.0, 0.012), (3.0, 0.030), (9.0, 0.004), (4.0, 0.020)]


def make_blob_data(
    n: int,
    n_clusters: int,
    dim: int = 2,
    sep: float = 4.0,
    std: float = 1.0,
    seed: int = 0,
) -> tuple[np.ndarray, np.ndarray]:
    """Isotropic Gaussian blobs around deterministically placed centers.

    Centers sit on a circle of radius ``sep`` in the first two dimensions,
    so their pairwise distance is ``2 * sep * sin(pi / k)``.  Returns
    ``(features, labels)`` with points grouped by blob.
    """
    if n_clusters < 1 or n < n_clusters or dim < 1:
        raise ValueError("need n >= n_clusters >= 1 and dim >= 1")
    rng = np.random.default_rng(seed)
    angles = 2.0 * np.pi * np.arange(n_clusters) / max(n_clusters, 2)
    centers = np.zeros((n_clusters, dim))
    centers[:, 0] = sep * np.cos(angles)
    if dim > 1:
        centers[:, 1] = sep * np.sin(angles)
    sizes = np.full(n_clusters, n // n_clusters)
    sizes[: n % n_clusters] += 1
    xs, ys = [], []
    for c in range(n_clusters):
        xs.append(centers[c] + std * rng.standard_normal((sizes[c], dim)))
        ys.append(np.full(sizes[c], c, dtype=np.int64))
    return np.vstack(xs), np.concatenate(ys)


@dataclass
class AdvertiserPopulation:
    """In-memory synthetic advertiser cohort (one entry per entity)."""

    win_samples: list[np.ndarray]
    cost_samples: list[np.ndarray]
    entities: list[ForecastInput]
    segments: np.ndarray
    textual: np.ndarray

    @property
    def n(self) -> int:
        return len(self.entities)


def synthesize_advertisers(
    n_segments: int,
    entities_per_segment: int,
    samples_per_entity: int,
    seed: int = 0,
    textual_noise: float = 1.0,
) -> AdvertiserPopulation:
    """Draw a synthetic advertiser population.

    Every entity in a segment shares the segment's true win rate and cost
    (the distribution means), so pooling within a correctly recovered
    segment reproduces the truth exactly.  Observation samples are noisy
    draws around those rates; textual features are 2-D Gaussians whose
    spread ``textual_noise`` controls how error-prone the textual view is.
    """
    if min(n_segments, entities_per_segment, samples_per_entity) < 1:
        raise ValueError("all counts must be >= 1")
    rng = np.random.default_rng(seed)
    win_samples, cost_samples, entities = [], [], []
    segments = np.repeat(np.arange(n_segments), entities_per_segment)
    angles = 2.0 * np.pi * np.arange(n_segments) / max(n_segments, 2)
    centers = 3.0 * np.column_stack([np.cos(angles), np.sin(angles)])
    textual = np.empty((segments.size, 2))

    for idx, seg in enumerate(segments):
        a, b = WIN_RATE_PARAMS[seg % len(WIN_RATE_PARAMS)]
        shape, scale = COST_PARAMS[seg % len(COST_PARAMS)]
        win_samples.append(rng.beta(a, b, size=samples_per_entity))
        cost_samples.append(rng.gamma(shape, scale, size=samples_per_entity))
        entities.append(
            ForecastInput(
                total_supply=float(rng.integers(5_000, 50_000)),
                win_rate=a / (a + b),
                ecpm_cost=shape * scale,
            )
        )
        textual[idx] = centers[seg] + textual_noise * rng.standard_normal(2)
    return AdvertiserPopulation(
        win_samples=win_samples,
        cost_samples=cost_samples,
        entities=entities,
        segments=segments,
        textual=textual,
    )


@dataclass(frozen=True)
class SyntheticFiles:
    """Paths of an on-disk synthetic advertiser cohort."""

    win_rate_samples: Path
    ecpm_samples: Path
    textual_features: Path
    forecast_truth: Path


def generate_synthetic_advertisers(
    n_segments: int,
    entities_per_segment: int,
    samples_per_entity: int,
    seed: int,
    out_dir,
    textual_noise: float = 1.0,
) -> SyntheticFiles:
    """Write a synthetic advertiser cohort to ``out_dir`` and return the file paths.

    Output conforms to the package's file schemas: two per-entity samples
    files (win rate and cost observations), a textual-proxy dataset file
    whose label column carries the true segment, and the forecast
    ground-truth file.  Entity ids are zero-padded so file order and sorted
    order agree.
    """
    pop = synthesize_advertisers(
        n_segments,
        entities_per_segment,
        samples_per_entity,
        seed=seed,
        textual_noise=textual_noise,
    )
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    width = len(str(pop.n - 1))
    ids = [f"adv{idx:0{width}d}" for idx in range(pop.n)]
    files = SyntheticFiles(
        win_rate_samples=out / "win_rate_samples.csv",
        ecpm_samples=out / "ecpm_samples.csv",
        textual_features=out / "textual_features.csv",
        forecast_truth=out / "forecast_truth.csv",
    )
    write_samples(files.win_rate_samples, ids, pop.win_samples)
    write_samples(files.ecpm_samples, ids, pop.cost_samples)
    write_dataset(files.textual_features, pop.textual, pop.segments)
    write_forecast_truth(files.forecast_truth, ids, pop.entities)
    return files
