import numpy as np
import pytest


def random_orthonormal(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    """Column-orthonormal (n, k) matrix from the QR of a Gaussian draw."""
    q, _ = np.linalg.qr(rng.standard_normal((n, k)))
    return q[:, :k]


def grid_argmin(fun, lo: float, hi: float, rounds: int = 4, points: int = 2001) -> float:
    """Iteratively refined grid search; independent of any closed-form solution."""
    for _ in range(rounds):
        xs = np.linspace(lo, hi, points)
        best = xs[int(np.argmin(fun(xs)))]
        width = (hi - lo) / (points - 1)
        lo, hi = best - width, best + width
    return float(best)


def relabel_match(a, b) -> bool:
    """True when two partitions are identical up to renaming of cluster ids."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        return False
    mapping = {}
    used = set()
    for x, y in zip(a, b):
        if x in mapping:
            if mapping[x] != y:
                return False
        else:
            if y in used:
                return False
            mapping[x] = y
            used.add(y)
    return True


def block_coassociation(sizes) -> np.ndarray:
    """Block-diagonal all-ones co-association for given block sizes."""
    n = sum(sizes)
    m = np.zeros((n, n))
    start = 0
    for s in sizes:
        m[start : start + s, start : start + s] = 1.0
        start += s
    return m


def block_labels(sizes) -> np.ndarray:
    return np.repeat(np.arange(len(sizes)), sizes)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
