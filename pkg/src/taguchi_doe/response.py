"""Scalar responses for the five multi-objective optimization approaches.

Each trial yields four raw outcomes: training accuracy (ta), validation
accuracy (va), training loss (tl) and validation loss (vl).  The five
approaches collapse them to one scalar per trial:

  1  mean accuracy                        (larger the better)
  2  mean loss                            (smaller the better)
  3  mean of ta, va and the log-transformed mean loss
  4  mean of ta, va and the log-transformed individual losses
  5  even blend of mean accuracy and the log-transformed mean loss

The logarithm uses a base in (0, 1), so it is strictly decreasing: a small
loss maps to a large positive value and loss minimization becomes
maximization, letting accuracy and loss share one objective direction.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DegenerateMetricError

DEFAULT_LOG_BASE = 0.7

#: Number of weighted terms per approach (approaches 1 and 2 are plain
#: two-metric means and take no weights).
WEIGHT_COUNTS = {3: 3, 4: 4, 5: 2}


class Direction(enum.Enum):
    LARGER = "larger-the-better"
    SMALLER = "smaller-the-better"


@dataclass(frozen=True)
class TrialMetrics:
    """The four raw outcomes of one executed trial."""

    ta: float
    va: float
    tl: float
    vl: float

    def __post_init__(self) -> None:
        for field_name in ("ta", "va", "tl", "vl"):
            value = getattr(self, field_name)
            if not math.isfinite(value):
                raise ValueError(f"{field_name} must be finite, got {value!r}")
        for field_name in ("ta", "va"):
            value = getattr(self, field_name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(
                    f"{field_name} must lie in [0, 1], got {value!r}"
                )
        for field_name in ("tl", "vl"):
            value = getattr(self, field_name)
            if value < 0.0:
                raise ValueError(
                    f"{field_name} must be nonnegative, got {value!r}"
                )

    @property
    def mean_accuracy(self) -> float:
        return (self.ta + self.va) / 2.0

    @property
    def mean_loss(self) -> float:
        return (self.tl + self.vl) / 2.0


@dataclass(frozen=True)
class Approach:
    """One of the five response formulations, with tunable transform knobs.

    ``weights`` overrides the default exact equal weights of the combined
    approaches (1/3 each for approach 3, 1/4 for approach 4, 1/2 for
    approach 5).  Rounded weight literals such as 0.33 visibly shift the
    response scale, so the defaults stay exact rationals.
    """

    id: int
    log_base: float = DEFAULT_LOG_BASE
    weights: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.id not in (1, 2, 3, 4, 5):
            raise ValueError(f"approach id must be 1..5, got {self.id}")
        if not 0.0 < self.log_base < 1.0:
            raise ValueError(
                f"log base must lie strictly inside (0, 1), got {self.log_base}"
            )
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(self.weights))
            expected = WEIGHT_COUNTS.get(self.id)
            if expected is None:
                raise ValueError(
                    f"approach {self.id} takes no weights (plain mean of two metrics)"
                )
            if len(self.weights) != expected:
                raise ValueError(
                    f"approach {self.id} takes {expected} weights, "
                    f"got {len(self.weights)}"
                )

    @property
    def direction(self) -> Direction:
        return Direction.SMALLER if self.id == 2 else Direction.LARGER

    def effective_weights(self) -> tuple[float, ...] | None:
        if self.id in (1, 2):
            return None
        if self.weights is not None:
            return self.weights
        n = WEIGHT_COUNTS[self.id]
        return tuple(1.0 / n for _ in range(n))


def log_base(x: float, base: float = DEFAULT_LOG_BASE) -> float:
    """ln(x)/ln(base) for a base in (0, 1); strictly decreasing in x.

    A non-positive argument signals a degenerate trial (zero loss or zero
    accuracy) and raises rather than clamping.
    """
    if not 0.0 < base < 1.0:
        raise ValueError(f"log base must lie strictly inside (0, 1), got {base}")
    if x <= 0.0:
        raise DegenerateMetricError(
            f"logarithm undefined for non-positive value {x!r}"
        )
    return math.log(x) / math.log(base)


def _checked_log(x: float, base: float, what: str) -> float:
    if x <= 0.0:
        raise DegenerateMetricError(
            f"{what} is {x!r}; the log transform needs a strictly positive value"
        )
    return log_base(x, base)


def compute_response(metrics: TrialMetrics, approach: Approach) -> float:
    """Collapse one trial's metrics to the scalar response of an approach."""
    m = metrics
    base = approach.log_base
    w = approach.effective_weights()
    if approach.id == 1:
        return m.mean_accuracy
    if approach.id == 2:
        return m.mean_loss
    if approach.id == 3:
        log_loss = _checked_log(m.mean_loss, base, "mean loss (tl+vl)/2")
        return w[0] * m.ta + w[1] * m.va + w[2] * log_loss
    if approach.id == 4:
        log_tl = _checked_log(m.tl, base, "training loss tl")
        log_vl = _checked_log(m.vl, base, "validation loss vl")
        return w[0] * m.ta + w[1] * m.va + w[2] * log_tl + w[3] * log_vl
    # Approach 5 blends the accuracy mean, untransformed, with the
    # log-transformed loss mean.  Transforming the accuracy term as well
    # would invert its objective direction (the log is decreasing) and does
    # not reproduce the reference analysis; see the project README.
    log_loss = _checked_log(m.mean_loss, base, "mean loss (tl+vl)/2")
    return w[0] * m.mean_accuracy + w[1] * log_loss
