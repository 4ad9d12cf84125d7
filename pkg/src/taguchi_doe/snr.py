"""Taguchi signal-to-noise ratios in decibels.

Larger-the-better:   eta = -10 log10( (1/n) sum 1/y_i^2 )
Smaller-the-better:  eta = -10 log10( (1/n) sum y_i^2 )

Both accept any number of replicates; with a single observation they reduce
to +-20 log10(y).
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence

from .errors import DegenerateMetricError
from .response import Approach, Direction, TrialMetrics, compute_response


def _as_replicates(values: Iterable[float]) -> Sequence[float]:
    reps = tuple(float(v) for v in values)
    if not reps:
        raise ValueError("replicate set must be nonempty")
    for v in reps:
        if not math.isfinite(v):
            raise ValueError(f"replicate values must be finite, got {v!r}")
    return reps


def snr_larger(values: Iterable[float]) -> float:
    """Larger-the-better SNR; every replicate must be strictly positive."""
    reps = _as_replicates(values)
    for v in reps:
        if v <= 0.0:
            raise DegenerateMetricError(
                f"larger-the-better SNR undefined for non-positive response {v!r}"
            )
    mean_inv_sq = sum(1.0 / (v * v) for v in reps) / len(reps)
    return -10.0 * math.log10(mean_inv_sq)


def snr_smaller(values: Iterable[float]) -> float:
    """Smaller-the-better SNR; an all-zero replicate set is degenerate."""
    reps = _as_replicates(values)
    mean_sq = sum(v * v for v in reps) / len(reps)
    if mean_sq == 0.0:
        raise DegenerateMetricError(
            "smaller-the-better SNR diverges for an all-zero replicate set"
        )
    return -10.0 * math.log10(mean_sq)


def snr_for_responses(responses: Iterable[float], direction: Direction) -> float:
    if direction is Direction.SMALLER:
        return snr_smaller(responses)
    return snr_larger(responses)


def snr_for_approach(metrics: TrialMetrics, approach: Approach) -> float:
    """Response plus the direction-appropriate SNR for one trial (n = 1)."""
    response = compute_response(metrics, approach)
    return snr_for_responses((response,), approach.direction)
