from __future__ import annotations

import math
import random

import pytest

from taguchi_doe import (
    Approach,
    DegenerateMetricError,
    snr_for_approach,
    snr_larger,
    snr_smaller,
)

from published import PUBLISHED_RESPONSE_SNR


class TestSingleObservation:
    def test_larger_examples(self):
        assert snr_larger([0.89375]) == pytest.approx(-0.9757, abs=1e-3)
        assert snr_larger([1.0]) == 0.0
        assert snr_larger([0.09897]) == pytest.approx(-20.0902, abs=1e-3)

    def test_smaller_examples(self):
        assert snr_smaller([0.34625]) == pytest.approx(9.2122, abs=1e-3)
        assert snr_smaller([1.0]) == 0.0
        assert snr_smaller([1.10850]) == pytest.approx(-0.8947, abs=1e-3)

    def test_single_value_reduces_to_twenty_log(self):
        for y in (0.1, 0.5, 2.0, 37.5):
            assert snr_larger([y]) == pytest.approx(20 * math.log10(y), abs=1e-12)
            assert snr_smaller([y]) == pytest.approx(-20 * math.log10(y), abs=1e-12)


class TestReplicateSets:
    def test_matches_brute_force_formula(self):
        values = [0.4, 0.9, 1.7]
        expected_larger = -10 * math.log10(
            sum(1 / v**2 for v in values) / len(values)
        )
        expected_smaller = -10 * math.log10(
            sum(v**2 for v in values) / len(values)
        )
        assert snr_larger(values) == pytest.approx(expected_larger, abs=1e-12)
        assert snr_smaller(values) == pytest.approx(expected_smaller, abs=1e-12)

    def test_empty_set_rejected(self):
        with pytest.raises(ValueError):
            snr_larger([])
        with pytest.raises(ValueError):
            snr_smaller([])

    def test_zero_allowed_for_smaller_unless_all_zero(self):
        assert math.isfinite(snr_smaller([0.0, 0.5]))
        with pytest.raises(DegenerateMetricError):
            snr_smaller([0.0, 0.0])

    @pytest.mark.parametrize("bad", [0.0, -0.3])
    def test_nonpositive_rejected_for_larger(self, bad):
        with pytest.raises(DegenerateMetricError):
            snr_larger([0.5, bad])

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            snr_smaller([float("inf")])


class TestRandomizedProperties:
    N = 10_000

    def test_negation_symmetry_and_monotonicity(self):
        # one seeded pass over ten thousand random inputs covers both the
        # n=1 negation identity and strict monotonicity in each direction
        rng = random.Random(20240817)
        for _ in range(self.N):
            y = rng.uniform(1e-4, 50.0)
            assert snr_larger([y]) == pytest.approx(-snr_smaller([y]), abs=1e-9)
            step = rng.uniform(1e-3, 1.0)
            assert snr_larger([y + step]) > snr_larger([y])
            assert snr_smaller([y + step]) < snr_smaller([y])

    def test_uniform_scaling_shifts_by_twenty_log(self):
        rng = random.Random(99)
        for _ in range(200):
            values = [rng.uniform(0.05, 5.0) for _ in range(rng.randint(1, 6))]
            c = rng.uniform(0.1, 10.0)
            shift = 20 * math.log10(c)
            assert snr_larger([c * v for v in values]) == pytest.approx(
                snr_larger(values) + shift, abs=1e-9
            )


class TestApproachComposition:
    def test_exp5_log_blend(self, metrics):
        assert snr_for_approach(metrics[5], Approach(id=3)) == pytest.approx(
            6.5838, abs=1e-3
        )

    def test_exp6_accuracy_mean(self, metrics):
        assert snr_for_approach(metrics[6], Approach(id=1)) == pytest.approx(
            -13.0945, abs=1e-3
        )

    def test_exp5_loss_mean(self, metrics):
        assert snr_for_approach(metrics[5], Approach(id=2)) == pytest.approx(
            14.0492, abs=1e-3
        )

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_reproduces_published_snr_columns(self, metrics, k):
        for row, (_resp, snr) in enumerate(PUBLISHED_RESPONSE_SNR[k], start=1):
            got = snr_for_approach(metrics[row], Approach(id=k))
            assert got == pytest.approx(snr, abs=1e-3), f"row {row}"

    def test_negative_response_under_larger_rejected(self):
        from taguchi_doe import TrialMetrics

        # losses far above one drive the log blend negative
        m = TrialMetrics(ta=0.02, va=0.0, tl=4.0, vl=4.0)
        with pytest.raises(DegenerateMetricError, match="non-positive response"):
            snr_for_approach(m, Approach(id=3))
