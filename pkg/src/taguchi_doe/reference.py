"""Bundled reference study: a CNN hyperparameter screen over an L12 plan.

The dataset ships the per-trial outcomes of twelve training runs of a
boxing-action-recognition classifier, one per row of the canonical 12-run
array over eight two-level hyperparameters.  It drives the worked examples,
the demo CLI flow, and the reproduction test suite.
"""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from .design import DesignMatrix, FactorSpace, build_l12
from .response import TrialMetrics

REFERENCE_FACTORS = (
    ("image_size", ("256×256", "512×512")),
    ("color_mode", ("Gray", "RGB")),
    ("activation", ("Tanh", "ReLU")),
    ("learning_rate", ("0.001", "0.005")),
    ("rescaling", ("True", "False")),
    ("shuffle", ("True", "False")),
    ("vertical_flip", ("True", "False")),
    ("horizontal_flip", ("True", "False")),
)

#: Final training outcome published for the recommended configuration
#: (approach 3 optimum).  The source videos are not distributable, so these
#: figures are fixture constants: recorded, never recomputed here.
VALIDATION_RUN = TrialMetrics(ta=0.9884, va=0.8625, tl=0.0442, vl=0.5784)

#: Published training outcomes of each approach's optimal configuration,
#: fixture constants for the same reason as VALIDATION_RUN.
OPTIMAL_CONFIG_OUTCOMES = {
    1: TrialMetrics(ta=0.9815, va=0.7931, tl=0.0537, vl=0.7157),
    2: TrialMetrics(ta=0.4527, va=0.0000, tl=0.7211, vl=0.6976),
    3: VALIDATION_RUN,
    4: TrialMetrics(ta=0.9902, va=0.7771, tl=0.0325, vl=0.7071),
    5: TrialMetrics(ta=0.9902, va=0.7771, tl=0.0325, vl=0.7071),
}


def reference_space() -> FactorSpace:
    return FactorSpace.from_pairs(REFERENCE_FACTORS)


def reference_plan() -> DesignMatrix:
    return build_l12(reference_space())


def reference_metrics_path() -> Path:
    with resources.as_file(
        resources.files("taguchi_doe").joinpath("data/reference_metrics.csv")
    ) as path:
        return Path(path)


def load_reference_metrics() -> dict[int, TrialMetrics]:
    """The twelve recorded metric rows, keyed by 1-based run index."""
    rows = {}
    text = reference_metrics_path().read_text(encoding="utf-8")
    for line in text.splitlines()[1:]:
        if not line.strip():
            continue
        exp, ta, va, tl, vl = line.split(",")
        rows[int(exp)] = TrialMetrics(
            ta=float(ta), va=float(va), tl=float(tl), vl=float(vl)
        )
    return rows
