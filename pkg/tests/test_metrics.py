import itertools
import logging

import numpy as np
import pytest

from rcclust.metrics import (
    ForecastInput,
    accuracy,
    consistency,
    forecast,
    mape,
    segment_forecast_error,
)


def brute_force_accuracy(truth, pred):
    """Enumerate every bijection between padded label sets."""
    truth = np.asarray(truth)
    pred = np.asarray(pred)
    size = int(max(truth.max(), pred.max())) + 1
    best = 0
    for perm in itertools.permutations(range(size)):
        mapped = np.array([perm[p] for p in pred])
        best = max(best, int((mapped == truth).sum()))
    return best / truth.size


class TestAccuracy:
    def test_pure_relabeling(self):
        assert accuracy([0, 0, 1, 1], [1, 1, 0, 0]) == 1.0

    def test_half_right(self):
        assert accuracy([0, 0, 1, 1], [0, 1, 0, 1]) == 0.5

    def test_identical(self):
        assert accuracy([0, 1, 2, 1], [0, 1, 2, 1]) == 1.0

    def test_matches_brute_force(self, rng):
        for _ in range(60):
            n = int(rng.integers(2, 9))
            truth = rng.integers(0, 4, size=n)
            pred = rng.integers(0, 4, size=n)
            assert accuracy(truth, pred) == pytest.approx(brute_force_accuracy(truth, pred))

    def test_unequal_cluster_counts(self):
        # pred uses more clusters than truth; confusion matrix is padded
        assert accuracy([0, 0, 0, 1], [0, 1, 2, 3]) == 0.5

    def test_relabeling_invariance(self, rng):
        truth = rng.integers(0, 3, size=12)
        pred = rng.integers(0, 3, size=12)
        perm = rng.permutation(3)
        assert accuracy(truth, pred) == accuracy(truth, perm[pred])

    def test_range(self, rng):
        for _ in range(10):
            truth = rng.integers(0, 3, size=10)
            pred = rng.integers(0, 3, size=10)
            assert 0.0 <= accuracy(truth, pred) <= 1.0

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            accuracy([0, 1], [0, 1, 1])


class TestConsistency:
    def test_identical_partitions(self):
        assert consistency([0, 1, 0, 2], [0, 1, 0, 2]) == (1.0, 0.0)

    def test_worked_example(self):
        # pairs: (0,1) same/diff, (0,2) diff/diff, (1,2) diff/same
        tpn, fpn = consistency([0, 0, 1], [0, 1, 1])
        assert tpn == pytest.approx(1 / 3)
        assert fpn == pytest.approx(2 / 3)

    def test_relabeling_invariance(self, rng):
        a = rng.integers(0, 3, size=10)
        b = rng.integers(0, 3, size=10)
        perm = rng.permutation(3)
        assert consistency(a, b) == consistency(perm[a], b)
        assert consistency(a, b) == consistency(a, perm[b])

    def test_sums_to_one_and_symmetric(self, rng):
        a = rng.integers(0, 4, size=15)
        b = rng.integers(0, 4, size=15)
        tpn, fpn = consistency(a, b)
        assert tpn + fpn == 1.0
        assert consistency(b, a) == (tpn, fpn)


class TestMape:
    def test_exact(self):
        assert mape([10.0, 20.0], [10.0, 20.0]) == 0.0

    def test_single_term(self):
        assert mape([100.0], [110.0]) == pytest.approx(0.10)

    def test_hand_sum(self):
        assert mape([100.0, 200.0], [90.0, 220.0]) == pytest.approx(0.10)

    def test_nonpositive_truth_rejected(self):
        with pytest.raises(ValueError):
            mape([1.0, 0.0], [1.0, 1.0])
        with pytest.raises(ValueError):
            mape([-1.0], [1.0])


class TestForecast:
    def test_direct_product(self):
        assert forecast(ForecastInput(1000, 0.2, 0.05)) == (200.0, 10.0)

    def test_zero_win_rate(self):
        assert forecast(ForecastInput(500, 0.0, 0.3)) == (0.0, 0.0)

    def test_linearity_in_supply(self):
        one = forecast(ForecastInput(100, 0.4, 0.02))
        two = forecast(ForecastInput(200, 0.4, 0.02))
        assert two == (2 * one[0], 2 * one[1])

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            ForecastInput(-1, 0.5, 0.1)
        with pytest.raises(ValueError):
            ForecastInput(10, 1.5, 0.1)


class TestSegmentForecastError:
    def test_identical_entities_any_assignment(self):
        entities = [ForecastInput(1000, 0.3, 0.02)] * 6
        for labels in ([0] * 6, [0, 1, 0, 1, 0, 1], [0, 1, 2, 3, 4, 5]):
            imp, spend = segment_forecast_error(labels, entities)
            assert imp == pytest.approx(0.0, abs=1e-12)
            assert spend == pytest.approx(0.0, abs=1e-12)

    def test_two_homogeneous_groups(self):
        group_a = [ForecastInput(1000 + 10 * i, 0.6, 0.01) for i in range(5)]
        group_b = [ForecastInput(2000 + 10 * i, 0.2, 0.05) for i in range(5)]
        entities = group_a + group_b
        truth = [0] * 5 + [1] * 5
        imp, spend = segment_forecast_error(truth, entities)
        assert imp == pytest.approx(0.0, abs=1e-12)
        assert spend == pytest.approx(0.0, abs=1e-12)
        merged_imp, merged_spend = segment_forecast_error([0] * 10, entities)
        assert merged_imp > 0.0
        assert merged_spend > 0.0

    def test_finer_than_truth_is_free(self):
        entities = [ForecastInput(1000, 0.4, 0.02)] * 4 + [ForecastInput(1000, 0.1, 0.08)] * 4
        finer = [0, 0, 1, 1, 2, 2, 3, 3]
        imp, spend = segment_forecast_error(finer, entities)
        assert imp == pytest.approx(0.0, abs=1e-12)
        assert spend == pytest.approx(0.0, abs=1e-12)

    def test_empty_segment_warns(self, caplog):
        entities = [ForecastInput(100, 0.5, 0.01)] * 3
        with caplog.at_level(logging.WARNING, logger="rcclust.metrics"):
            segment_forecast_error([0, 0, 2], entities)  # segment 1 declared via id 2
        assert any("empty" in rec.message for rec in caplog.records)
