"""Published reference accuracies for the UCI benchmark datasets.

These are the accuracy figures reported in the literature for the four
methods this package implements, on the eight standard benchmark datasets.
They ship purely as report context: stochastic initialization makes exact
reproduction impossible, so they are never asserted by tests.
"""

from __future__ import annotations

PUBLISHED_ACCURACY: dict[str, dict[str, float]] = {
    "cstr": {"kmeans": 0.45, "kc": 0.38, "l2cc": 0.61, "rcc": 0.65},
    "glass": {"kmeans": 0.38, "kc": 0.45, "l2cc": 0.49, "rcc": 0.52},
    "ionosphere": {"kmeans": 0.70, "kc": 0.71, "l2cc": 0.71, "rcc": 0.72},
    "iris": {"kmeans": 0.83, "kc": 0.72, "l2cc": 0.86, "rcc": 0.89},
    "reuters": {"kmeans": 0.45, "kc": 0.44, "l2cc": 0.43, "rcc": 0.45},
    "soybean_small": {"kmeans": 0.72, "kc": 0.82, "l2cc": 0.76, "rcc": 1.00},
    "wine": {"kmeans": 0.68, "kc": 0.68, "l2cc": 0.65, "rcc": 0.96},
    "zoo": {"kmeans": 0.61, "kc": 0.59, "l2cc": 0.80, "rcc": 0.84},
}


def published_accuracy(dataset: str) -> dict[str, float] | None:
    """Reference accuracies for a dataset name (stem of its file), if known."""
    return PUBLISHED_ACCURACY.get(dataset.strip().lower())
