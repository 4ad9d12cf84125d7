"""Main effects, interactions, ANOVA, effect-coded regression, prediction.

All operations work on a ResponseTable: the design matrix joined with each
run's metrics, scalar response and SNR.  Level means drive everything, which
is exact for balanced orthogonal plans.  When rows were explicitly excluded
the same estimators run over the surviving rows; the loss of balance is the
caller's responsibility to flag.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from statistics import fmean
from typing import Mapping, Sequence

from .design import DesignMatrix, Factor
from .errors import (
    DegenerateMetricError,
    IncompleteResultsError,
    SaturatedDesignError,
)
from .response import Approach, Direction, TrialMetrics, compute_response
from .snr import snr_for_responses


# ---------------------------------------------------------------------------
# Response tables


@dataclass(frozen=True)
class RowResult:
    """One run's metrics with its derived response and SNR."""

    row_index: int
    replicates: tuple[TrialMetrics, ...]
    response: float
    snr: float

    @property
    def metrics(self) -> TrialMetrics:
        return self.replicates[0]


@dataclass(frozen=True)
class ResponseTable:
    matrix: DesignMatrix
    approach: Approach
    rows: tuple[RowResult, ...]
    excluded_rows: tuple[int, ...] = ()

    @property
    def responses(self) -> tuple[float, ...]:
        return tuple(r.response for r in self.rows)

    @property
    def snrs(self) -> tuple[float, ...]:
        return tuple(r.snr for r in self.rows)

    def signal(self, on: str) -> tuple[float, ...]:
        if on == "snr":
            return self.snrs
        if on == "means":
            return self.responses
        raise ValueError(f"signal must be 'snr' or 'means', got {on!r}")

    def ranks(self) -> dict[int, int]:
        """Rank runs by response, 1 = best for the approach's direction."""
        reverse = self.approach.direction is Direction.LARGER
        ordered = sorted(
            self.rows, key=lambda r: r.response, reverse=reverse
        )
        return {r.row_index: pos + 1 for pos, r in enumerate(ordered)}


def _average_metrics(reps: Sequence[TrialMetrics]) -> TrialMetrics:
    return TrialMetrics(
        ta=fmean(m.ta for m in reps),
        va=fmean(m.va for m in reps),
        tl=fmean(m.tl for m in reps),
        vl=fmean(m.vl for m in reps),
    )


def build_response_table(
    matrix: DesignMatrix,
    metrics_by_row: Mapping[int, TrialMetrics | Sequence[TrialMetrics]],
    approach: Approach,
    *,
    allow_missing: bool = False,
    average_replicates: bool = False,
) -> ResponseTable:
    """Join metrics onto the plan and derive response and SNR per run.

    Rows carrying several replicate metric sets enter the SNR as an
    n-replicate set by default; ``average_replicates`` collapses them to a
    single averaged metric set first.
    """
    missing = [
        i for i in range(1, matrix.runs + 1) if not metrics_by_row.get(i)
    ]
    if missing and not allow_missing:
        raise IncompleteResultsError(missing)

    rows = []
    for i in range(1, matrix.runs + 1):
        entry = metrics_by_row.get(i)
        if not entry:
            continue
        reps = (entry,) if isinstance(entry, TrialMetrics) else tuple(entry)
        if average_replicates and len(reps) > 1:
            reps = (_average_metrics(reps),)
        try:
            responses = [compute_response(m, approach) for m in reps]
            snr = snr_for_responses(responses, approach.direction)
        except DegenerateMetricError as exc:
            raise DegenerateMetricError(f"row {i}: {exc}") from exc
        rows.append(
            RowResult(
                row_index=i,
                replicates=reps,
                response=fmean(responses),
                snr=snr,
            )
        )
    return ResponseTable(
        matrix=matrix,
        approach=approach,
        rows=tuple(rows),
        excluded_rows=tuple(missing),
    )


# ---------------------------------------------------------------------------
# Main effects


@dataclass(frozen=True)
class FactorEffect:
    factor: str
    level_one_mean: float
    level_two_mean: float
    delta: float
    rank: int


@dataclass(frozen=True)
class MainEffects:
    """Per-factor level means with delta ranking, over SNR or raw means."""

    signal: str
    direction: Direction
    grand_mean: float
    effects: tuple[FactorEffect, ...]
    tied_factors: tuple[str, ...] = ()

    def __getitem__(self, factor: str) -> FactorEffect:
        for e in self.effects:
            if e.factor == factor:
                return e
        raise KeyError(factor)

    def effect_of(self, factor: str, level: int) -> float:
        """Deviation of a factor level's mean from the grand mean."""
        e = self[factor]
        mean = e.level_one_mean if level == 1 else e.level_two_mean
        return mean - self.grand_mean

    def rank_of(self, factor: str) -> int:
        return self[factor].rank

    def best_levels(self) -> dict[str, int]:
        """Level per factor whose mean is most favorable for the direction.

        Larger mean wins except under smaller-the-better, where the smaller
        mean is the favorable one.  Ties fall to level one.
        """
        choose_smaller = (
            self.signal == "means" and self.direction is Direction.SMALLER
        )
        chosen = {}
        for e in self.effects:
            if choose_smaller:
                chosen[e.factor] = 1 if e.level_one_mean <= e.level_two_mean else 2
            else:
                chosen[e.factor] = 1 if e.level_one_mean >= e.level_two_mean else 2
        return chosen


def _level_rows(table: ResponseTable, factor_pos: int) -> tuple[list[int], list[int]]:
    ones, twos = [], []
    for idx, row in enumerate(table.rows):
        level = table.matrix.assignments[row.row_index - 1][factor_pos]
        (ones if level == 1 else twos).append(idx)
    return ones, twos


def main_effects(table: ResponseTable, on: str = "snr") -> MainEffects:
    """Level means, deltas and descending-delta ranks for every factor."""
    values = table.signal(on)
    if not values:
        raise IncompleteResultsError(
            range(1, table.matrix.runs + 1), "no rows available for main effects"
        )
    grand = fmean(values)
    names = table.matrix.factor_space.names

    raw = []
    for pos, name in enumerate(names):
        ones, twos = _level_rows(table, pos)
        if not ones or not twos:
            raise IncompleteResultsError(
                table.excluded_rows,
                f"factor {name!r} has no surviving rows at one level",
            )
        m1 = fmean(values[i] for i in ones)
        m2 = fmean(values[i] for i in twos)
        raw.append((name, m1, m2, abs(m1 - m2)))

    # Rank by descending delta; equal deltas keep factor order and are
    # reported as ties.
    order = sorted(range(len(raw)), key=lambda i: (-raw[i][3], i))
    ranks = {raw[i][0]: pos + 1 for pos, i in enumerate(order)}
    deltas = [r[3] for r in raw]
    tied = tuple(
        raw[i][0]
        for i in range(len(raw))
        if deltas.count(raw[i][3]) > 1
    )

    effects = tuple(
        FactorEffect(name, m1, m2, delta, ranks[name])
        for name, m1, m2, delta in raw
    )
    return MainEffects(
        signal=on,
        direction=table.approach.direction,
        grand_mean=grand,
        effects=effects,
        tied_factors=tied,
    )


# ---------------------------------------------------------------------------
# Two-factor interactions


@dataclass(frozen=True)
class InteractionCells:
    """2x2 grid of mean SNR per level combination of two factors."""

    factor_one: str
    factor_two: str
    cell_means: dict[tuple[int, int], float]
    cell_counts: dict[tuple[int, int], int]

    @property
    def magnitude(self) -> float:
        m = self.cell_means
        return abs((m[(1, 1)] - m[(1, 2)]) - (m[(2, 1)] - m[(2, 2)]))


def interaction_table(
    table: ResponseTable, f1: Factor | str, f2: Factor | str
) -> InteractionCells:
    """Mean SNR per (level, level) cell for a factor pair."""
    name1 = f1.name if isinstance(f1, Factor) else f1
    name2 = f2.name if isinstance(f2, Factor) else f2
    if name1 == name2:
        raise ValueError(f"interaction needs two distinct factors, got {name1!r} twice")
    pos1 = table.matrix.factor_space.position(name1)
    pos2 = table.matrix.factor_space.position(name2)

    buckets: dict[tuple[int, int], list[float]] = {
        combo: [] for combo in itertools.product((1, 2), (1, 2))
    }
    for row in table.rows:
        assignment = table.matrix.assignments[row.row_index - 1]
        buckets[(assignment[pos1], assignment[pos2])].append(row.snr)
    empty = [c for c, vals in buckets.items() if not vals]
    if empty:
        raise IncompleteResultsError(
            table.excluded_rows,
            f"interaction cells {empty} for ({name1!r}, {name2!r}) have no rows",
        )
    return InteractionCells(
        factor_one=name1,
        factor_two=name2,
        cell_means={c: fmean(vals) for c, vals in buckets.items()},
        cell_counts={c: len(vals) for c, vals in buckets.items()},
    )


# ---------------------------------------------------------------------------
# F-distribution tail via the regularized incomplete beta function

_CF_EPS = 1e-14
_CF_MAX_ITER = 300
_CF_TINY = 1e-300


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta, by the modified Lentz
    method."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise ArithmeticError(
        f"incomplete beta continued fraction failed to converge for "
        f"a={a}, b={b}, x={x}"
    )


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if a <= 0.0 or b <= 0.0:
        raise ValueError("incomplete beta requires a, b > 0")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"incomplete beta requires 0 <= x <= 1, got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log(1.0 - x)
    )
    front = math.exp(ln_front)
    # The continued fraction converges fast only on one side of the mean;
    # use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) for the other.
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def f_tail_probability(f: float, df_num: int, df_den: int) -> float:
    """Upper-tail probability of the F(df_num, df_den) distribution."""
    if df_num < 1 or df_den < 1:
        raise ValueError("degrees of freedom must be at least 1")
    if f <= 0.0:
        return 1.0
    x = df_den / (df_den + df_num * f)
    return regularized_incomplete_beta(df_den / 2.0, df_num / 2.0, x)


# ---------------------------------------------------------------------------
# ANOVA


@dataclass(frozen=True)
class AnovaRow:
    source: str
    df: int
    ss: float
    ms: float | None = None
    f: float | None = None
    p: float | None = None


@dataclass(frozen=True)
class AnovaTable:
    factors: tuple[AnovaRow, ...]
    error: AnovaRow
    total: AnovaRow

    def __getitem__(self, source: str) -> AnovaRow:
        for row in self.factors:
            if row.source == source:
                return row
        raise KeyError(source)


def anova(table: ResponseTable, on: str = "snr") -> AnovaTable:
    """Single-df factor sums of squares against a pooled error term.

    Two-level balanced designs give each factor one degree of freedom; the
    error term pools whatever the factors leave unexplained.
    """
    values = table.signal(on)
    n = len(values)
    names = table.matrix.factor_space.names
    k = len(names)
    error_df = n - 1 - k
    if error_df < 1:
        raise SaturatedDesignError(
            f"{n} runs with {k} factors leave {error_df} error degrees of "
            "freedom; no F test is possible"
        )

    grand = fmean(values)
    total_ss = sum((v - grand) ** 2 for v in values)

    factor_rows = []
    factor_ss_sum = 0.0
    for pos, name in enumerate(names):
        ones, twos = _level_rows(table, pos)
        m1 = fmean(values[i] for i in ones)
        m2 = fmean(values[i] for i in twos)
        ss = len(ones) * (m1 - grand) ** 2 + len(twos) * (m2 - grand) ** 2
        factor_ss_sum += ss
        factor_rows.append((name, ss))

    error_ss = total_ss - factor_ss_sum
    error_ms = error_ss / error_df
    rows = []
    for name, ss in factor_rows:
        if error_ms > 0.0:
            f_value = ss / error_ms
        else:
            # zero error mean square: a zero-effect factor carries no
            # evidence (F = 0), any other effect is infinitely significant
            f_value = 0.0 if ss == 0.0 else math.inf
        rows.append(
            AnovaRow(
                source=name,
                df=1,
                ss=ss,
                ms=ss,
                f=f_value,
                p=f_tail_probability(f_value, 1, error_df)
                if math.isfinite(f_value)
                else 0.0,
            )
        )
    return AnovaTable(
        factors=tuple(rows),
        error=AnovaRow(source="error", df=error_df, ss=error_ss, ms=error_ms),
        total=AnovaRow(source="total", df=n - 1, ss=total_ss),
    )


# ---------------------------------------------------------------------------
# Effect-coded regression and optimal-configuration prediction


@dataclass(frozen=True)
class RegressionModel:
    """Grand-mean intercept with one +-coefficient pair per factor.

    The two coefficients of a factor sum to zero exactly; the fitted value
    at any design point is the intercept plus the chosen-level coefficients.
    """

    intercept: float
    coefficients: dict[str, tuple[float, float]]
    signal: str = "snr"

    def coefficient(self, factor: str, level: int) -> float:
        return self.coefficients[factor][level - 1]

    def predict(self, levels: Mapping[str, int]) -> float:
        return self.intercept + sum(
            self.coefficient(name, level) for name, level in levels.items()
        )

    def fitted(self, matrix: DesignMatrix) -> tuple[float, ...]:
        return tuple(
            self.predict(
                {
                    name: matrix.level(i, name)
                    for name in matrix.factor_space.names
                }
            )
            for i in range(1, matrix.runs + 1)
        )


def fit_regression(table: ResponseTable, on: str = "snr") -> RegressionModel:
    """Effect-coded fit: intercept = grand mean, coefficients = half-deltas.

    On a balanced two-level plan this is the least-squares solution; the
    level-one coefficient is half the signed difference of level means, and
    the level-two coefficient its exact negation.
    """
    effects = main_effects(table, on=on)
    coefficients = {}
    for e in effects.effects:
        c1 = (e.level_one_mean - e.level_two_mean) / 2.0
        coefficients[e.factor] = (c1, -c1)
    return RegressionModel(
        intercept=effects.grand_mean, coefficients=coefficients, signal=on
    )


@dataclass(frozen=True)
class OptimalPrediction:
    """Additive-model prediction at the SNR-maximizing configuration.

    The means-favored configuration, which can differ (a level may raise the
    raw mean yet lower the SNR), is evaluated alongside as a cross-check.
    """

    chosen_levels: dict[str, int]
    predicted_snr: float
    predicted_response: float
    means_levels: dict[str, int]
    means_predicted_snr: float
    means_predicted_response: float
    tied_factors: tuple[str, ...] = ()

    @property
    def configurations_agree(self) -> bool:
        return self.chosen_levels == self.means_levels


def predict_optimum(
    model: RegressionModel, effects_on_means: MainEffects
) -> OptimalPrediction:
    """Pick the SNR-best level per factor and predict performance there.

    Predicted SNR sums the chosen coefficients onto the intercept; predicted
    response applies the same additive scheme to the raw-mean effects.  Ties
    on the SNR coefficients fall to level one and are flagged.
    """
    chosen: dict[str, int] = {}
    ties = []
    for name, (c1, c2) in model.coefficients.items():
        if c1 == c2:
            ties.append(name)
        chosen[name] = 1 if c1 >= c2 else 2

    def response_at(levels: Mapping[str, int]) -> float:
        return effects_on_means.grand_mean + sum(
            effects_on_means.effect_of(name, level)
            for name, level in levels.items()
        )

    means_levels = effects_on_means.best_levels()
    return OptimalPrediction(
        chosen_levels=chosen,
        predicted_snr=model.predict(chosen),
        predicted_response=response_at(chosen),
        means_levels=means_levels,
        means_predicted_snr=model.predict(means_levels),
        means_predicted_response=response_at(means_levels),
        tied_factors=tuple(ties),
    )
