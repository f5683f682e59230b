import numpy as np
import pytest

from conftest import grid_argmin, random_orthonormal
from rcclust.linalg import norms, soft_threshold, top_k_eigs


class TestTopKEigs:
    def test_diagonal_matrix(self):
        pairs = top_k_eigs(np.diag([3.0, 2.0, 1.0]), 2)
        assert np.allclose(pairs.values, [3.0, 2.0])
        assert np.allclose(np.abs(pairs.vectors), np.eye(3)[:, :2], atol=1e-12)

    def test_all_ones_rank_one(self):
        pairs = top_k_eigs(np.ones((3, 3)), 1)
        assert pairs.values[0] == pytest.approx(3.0, abs=1e-10)
        assert np.allclose(pairs.vectors[:, 0], np.ones(3) / np.sqrt(3))

    def test_full_spectrum_reconstruction(self, rng):
        a = rng.standard_normal((5, 5))
        a = (a + a.T) / 2
        pairs = top_k_eigs(a, 5)
        recon = (pairs.vectors * pairs.values) @ pairs.vectors.T
        assert np.abs(recon - a).max() < 1e-8

    def test_reconstruction_relative_tolerance(self, rng):
        for _ in range(10):
            a = rng.standard_normal((7, 7))
            a = (a + a.T) / 2
            pairs = top_k_eigs(a, 7)
            recon = (pairs.vectors * pairs.values) @ pairs.vectors.T
            _, fro = norms(a)
            assert norms(recon - a)[1] <= 1e-7 * fro

    def test_orthonormal_and_sorted(self, rng):
        a = rng.standard_normal((8, 8))
        a = (a + a.T) / 2
        pairs = top_k_eigs(a, 4)
        assert norms(pairs.vectors.T @ pairs.vectors - np.eye(4))[1] < 1e-8
        assert np.all(np.diff(pairs.values) <= 1e-12)

    def test_eigenpair_residuals(self, rng):
        a = rng.standard_normal((9, 9))
        a = (a + a.T) / 2
        pairs = top_k_eigs(a, 5)
        _, fro = norms(a)
        for j in range(5):
            h = pairs.vectors[:, j]
            residual = np.linalg.norm(a @ h - pairs.values[j] * h)
            assert residual <= 1e-8 * fro

    def test_rayleigh_quotient_matches_value(self, rng):
        a = rng.standard_normal((6, 6))
        a = (a + a.T) / 2
        pairs = top_k_eigs(a, 3)
        for j in range(3):
            h = pairs.vectors[:, j]
            assert h @ a @ h == pytest.approx(pairs.values[j], rel=1e-8, abs=1e-10)

    def test_returned_subspace_maximizes_trace(self, rng):
        a = rng.standard_normal((7, 7))
        a = (a + a.T) / 2
        pairs = top_k_eigs(a, 3)
        best = np.trace(pairs.vectors.T @ a @ pairs.vectors)
        for _ in range(200):
            h = random_orthonormal(rng, 7, 3)
            assert np.trace(h.T @ a @ h) <= best + 1e-8

    def test_sign_convention(self):
        pairs = top_k_eigs(np.diag([2.0, 1.0]), 2)
        for j in range(2):
            col = pairs.vectors[:, j]
            first = col[np.argmax(np.abs(col) > 1e-12)]
            assert first > 0

    def test_degenerate_eigenvalues_projector(self, rng):
        # repeated eigenvalues: only the projector H @ H.T is pinned down
        q = random_orthonormal(rng, 5, 5)
        a = q @ np.diag([2.0, 2.0, 1.0, 0.5, 0.1]) @ q.T
        a = (a + a.T) / 2
        pairs = top_k_eigs(a, 2)
        projector = pairs.vectors @ pairs.vectors.T
        expected = q[:, :2] @ q[:, :2].T
        assert np.abs(projector - expected).max() < 1e-8

    def test_small_asymmetry_symmetrized(self):
        a = np.diag([3.0, 1.0])
        a[0, 1] = 1e-12
        pairs = top_k_eigs(a, 1)
        assert pairs.values[0] == pytest.approx(3.0, abs=1e-10)

    def test_asymmetric_rejected(self):
        a = np.array([[1.0, 0.5], [0.0, 1.0]])
        with pytest.raises(ValueError, match="symmetric"):
            top_k_eigs(a, 1)

    def test_bad_k_rejected(self):
        with pytest.raises(ValueError):
            top_k_eigs(np.eye(3), 0)
        with pytest.raises(ValueError):
            top_k_eigs(np.eye(3), 4)


class TestSoftThreshold:
    def test_dead_zone(self):
        assert soft_threshold(0.5, 1.0) == 0.0

    def test_shrink_positive(self):
        assert soft_threshold(3.0, 0.5) == pytest.approx(2.5)

    def test_odd_symmetry(self):
        assert soft_threshold(-2.0, 0.5) == pytest.approx(-1.5)

    def test_matches_grid_minimizer(self, rng):
        # exact minimizer of (mu/2) * (e - a)**2 + |e| at threshold 1/mu
        for _ in range(25):
            a = float(rng.uniform(-4, 4))
            mu = float(rng.uniform(0.2, 5.0))
            oracle = grid_argmin(
                lambda e: 0.5 * mu * (e - a) ** 2 + np.abs(e), -6.0, 6.0
            )
            assert soft_threshold(a, 1.0 / mu) == pytest.approx(oracle, abs=1e-7)

    def test_worked_grid_example(self):
        # a = 3, mu = 2 -> threshold 0.5 -> 2.5
        oracle = grid_argmin(lambda e: 1.0 * (e - 3.0) ** 2 + np.abs(e), -6.0, 6.0)
        assert oracle == pytest.approx(2.5, abs=1e-7)
        assert soft_threshold(3.0, 0.5) == pytest.approx(2.5)

    def test_matrix_input(self, rng):
        a = rng.standard_normal((4, 4))
        out = soft_threshold(a, 0.3)
        for i in range(4):
            for j in range(4):
                assert out[i, j] == pytest.approx(soft_threshold(float(a[i, j]), 0.3))

    def test_zero_matrix(self):
        assert np.array_equal(soft_threshold(np.zeros((3, 3)), 0.7), np.zeros((3, 3)))

    def test_symmetric_preserved(self, rng):
        a = rng.standard_normal((5, 5))
        a = a + a.T
        out = soft_threshold(a, 0.4)
        assert np.array_equal(out, out.T)

    def test_negative_threshold_rejected(self):
        with pytest.raises(ValueError):
            soft_threshold(1.0, -0.1)


class TestNorms:
    def test_identity(self):
        l1, fro = norms(np.eye(3))
        assert l1 == 3.0
        assert fro == pytest.approx(np.sqrt(3))

    def test_zero(self):
        assert norms(np.zeros((2, 5))) == (0.0, 0.0)

    def test_hand_sum(self):
        l1, fro = norms(np.array([[1.0, -2.0], [3.0, -4.0]]))
        assert l1 == 10.0
        assert fro == pytest.approx(np.sqrt(30))
