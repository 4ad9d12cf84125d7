"""Human-readable tables and plot-ready CSV emission for one approach.

Rendering is a pure function of the bundle: the same bundle always yields
byte-identical documents.  Display rounding is fixed at four decimals for
SNR values, five for responses, two for F and three for p; internal
computation stays at full precision.
"""
from __future__ import annotations

import io
import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .analysis import (
    AnovaTable,
    InteractionCells,
    MainEffects,
    OptimalPrediction,
    RegressionModel,
    ResponseTable,
    anova,
    build_response_table,
    fit_regression,
    interaction_table,
    main_effects,
    predict_optimum,
)
from .design import DesignMatrix
from .response import Approach, TrialMetrics

RANK_FOOTNOTE = (
    "ranks follow strict response ordering; rank columns published with the "
    "reference dataset diverge from strict ordering for some rows"
)


@dataclass(frozen=True)
class ReportBundle:
    """Everything the report renders for one approach."""

    table: ResponseTable
    effects_snr: MainEffects
    effects_means: MainEffects
    anova_table: AnovaTable
    model: RegressionModel
    prediction: OptimalPrediction
    interactions: tuple[InteractionCells, ...]

    @property
    def approach(self) -> Approach:
        return self.table.approach


def build_bundle(
    matrix: DesignMatrix,
    metrics_by_row: Mapping[int, TrialMetrics | Sequence[TrialMetrics]],
    approach: Approach,
    *,
    allow_missing: bool = False,
    average_replicates: bool = False,
) -> ReportBundle:
    """Run the full analysis chain for one approach."""
    table = build_response_table(
        matrix,
        metrics_by_row,
        approach,
        allow_missing=allow_missing,
        average_replicates=average_replicates,
    )
    effects_snr = main_effects(table, on="snr")
    effects_means = main_effects(table, on="means")
    model = fit_regression(table, on="snr")
    prediction = predict_optimum(model, effects_means)
    names = matrix.factor_space.names
    interactions = tuple(
        interaction_table(table, a, b)
        for a, b in itertools.combinations(names, 2)
    )
    return ReportBundle(
        table=table,
        effects_snr=effects_snr,
        effects_means=effects_means,
        anova_table=anova(table),
        model=model,
        prediction=prediction,
        interactions=interactions,
    )


# ---------------------------------------------------------------------------
# Table rendering

_FORMATS = ("text", "csv", "markdown")


def _fmt(value: float, places: int) -> str:
    return f"{value:.{places}f}"


def _snr_table_rows(bundle: ReportBundle) -> tuple[list[str], list[list[str]]]:
    header = ["exp", "ta", "va", "tl", "vl", "response", "snr_db", "mean", "rank"]
    ranks = bundle.table.ranks()
    rows = []
    for r in bundle.table.rows:
        m = r.metrics
        rows.append(
            [
                str(r.row_index),
                _fmt(m.ta, 4),
                _fmt(m.va, 4),
                _fmt(m.tl, 4),
                _fmt(m.vl, 4),
                _fmt(r.response, 5),
                _fmt(r.snr, 4),
                _fmt(r.response, 5),
                str(ranks[r.row_index]),
            ]
        )
    return header, rows


def _effects_table_rows(effects: MainEffects) -> tuple[list[str], list[list[str]]]:
    places = 4 if effects.signal == "snr" else 5
    header = ["factor", "level1_mean", "level2_mean", "delta", "rank"]
    rows = [
        [
            e.factor,
            _fmt(e.level_one_mean, places),
            _fmt(e.level_two_mean, places),
            _fmt(e.delta, places),
            str(e.rank),
        ]
        for e in effects.effects
    ]
    return header, rows


def _anova_table_rows(table: AnovaTable) -> tuple[list[str], list[list[str]]]:
    header = ["source", "df", "ss", "ms", "f", "p"]
    rows = []
    for row in table.factors:
        rows.append(
            [
                row.source,
                str(row.df),
                _fmt(row.ss, 4),
                _fmt(row.ms, 4),
                _fmt(row.f, 2),
                _fmt(row.p, 3),
            ]
        )
    err, tot = table.error, table.total
    rows.append([err.source, str(err.df), _fmt(err.ss, 4), _fmt(err.ms, 4), "", ""])
    rows.append([tot.source, str(tot.df), _fmt(tot.ss, 4), "", "", ""])
    return header, rows


def _prediction_rows(bundle: ReportBundle) -> tuple[list[str], list[list[str]]]:
    space = bundle.table.matrix.factor_space
    pred = bundle.prediction
    header = ["factor", "chosen_level", "means_favored_level"]
    rows = [
        [
            f.name,
            f.label(pred.chosen_levels[f.name]),
            f.label(pred.means_levels[f.name]),
        ]
        for f in space
    ]
    rows.append(
        ["predicted_snr", _fmt(pred.predicted_snr, 4), _fmt(pred.means_predicted_snr, 4)]
    )
    rows.append(
        [
            "predicted_response",
            _fmt(pred.predicted_response, 5),
            _fmt(pred.means_predicted_response, 5),
        ]
    )
    return header, rows


def _interaction_rows(
    interactions: Sequence[InteractionCells],
) -> tuple[list[str], list[list[str]]]:
    header = ["factor1", "factor2", "m11", "m12", "m21", "m22", "magnitude"]
    rows = []
    for cells in interactions:
        m = cells.cell_means
        rows.append(
            [
                cells.factor_one,
                cells.factor_two,
                _fmt(m[(1, 1)], 4),
                _fmt(m[(1, 2)], 4),
                _fmt(m[(2, 1)], 4),
                _fmt(m[(2, 2)], 4),
                _fmt(cells.magnitude, 4),
            ]
        )
    return header, rows


def regression_equation(model: RegressionModel, space) -> str:
    """Render the fitted model in sign-paired effect-coded form."""
    parts = [f"SNR = {model.intercept:.3f}"]
    for factor in space:
        c1, c2 = model.coefficients[factor.name]
        for coefficient, label in ((c1, factor.level_one), (c2, factor.level_two)):
            sign = "+" if coefficient >= 0 else "-"
            parts.append(
                f"{sign} {abs(coefficient):.3f}·{factor.name}[{label}]"
            )
    return " ".join(parts)


def _render_grid(
    title: str, header: list[str], rows: list[list[str]], fmt: str, out: io.StringIO
) -> None:
    if fmt == "csv":
        out.write(f"# {title}\n")
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(row) + "\n")
        out.write("\n")
        return
    if fmt == "markdown":
        out.write(f"## {title}\n\n")
        out.write("| " + " | ".join(header) + " |\n")
        out.write("|" + "|".join("---" for _ in header) + "|\n")
        for row in rows:
            out.write("| " + " | ".join(row) + " |\n")
        out.write("\n")
        return
    widths = [
        max(len(header[j]), *(len(r[j]) for r in rows)) if rows else len(header[j])
        for j in range(len(header))
    ]
    out.write(f"=== {title} ===\n")
    out.write("  ".join(h.ljust(widths[j]) for j, h in enumerate(header)).rstrip() + "\n")
    for row in rows:
        out.write(
            "  ".join(cell.ljust(widths[j]) for j, cell in enumerate(row)).rstrip()
            + "\n"
        )
    out.write("\n")


def render_tables(bundle: ReportBundle | None, fmt: str = "text") -> str:
    """One document with every table for an approach, in the given format."""
    if fmt not in _FORMATS:
        raise ValueError(f"format must be one of {_FORMATS}, got {fmt!r}")
    out = io.StringIO()
    if bundle is None:
        out.write("no results ingested for this plan\n")
        return out.getvalue()

    k = bundle.approach.id
    title = f"approach {k}"
    if fmt == "markdown":
        out.write(f"# Taguchi analysis, {title}\n\n")
    elif fmt == "text":
        out.write(f"Taguchi analysis, {title}\n\n")

    header, rows = _snr_table_rows(bundle)
    _render_grid(f"{title}: responses and SNR", header, rows, fmt, out)
    note = f"note: {RANK_FOOTNOTE}\n\n"
    out.write(note if fmt != "markdown" else f"*{RANK_FOOTNOTE}*\n\n")

    if bundle.table.excluded_rows:
        out.write(
            "warning: rows "
            + ", ".join(str(i) for i in bundle.table.excluded_rows)
            + " were excluded from this analysis; the plan is no longer "
            "balanced\n\n"
        )

    header, rows = _effects_table_rows(bundle.effects_snr)
    _render_grid(f"{title}: main effects on SNR", header, rows, fmt, out)
    out.write(
        f"grand mean (snr): {_fmt(bundle.effects_snr.grand_mean, 4)}\n\n"
    )
    header, rows = _effects_table_rows(bundle.effects_means)
    _render_grid(f"{title}: main effects on means", header, rows, fmt, out)
    out.write(
        f"grand mean (means): {_fmt(bundle.effects_means.grand_mean, 5)}\n\n"
    )

    header, rows = _anova_table_rows(bundle.anova_table)
    _render_grid(f"{title}: anova", header, rows, fmt, out)

    equation = regression_equation(bundle.model, bundle.table.matrix.factor_space)
    if fmt == "markdown":
        out.write(f"## {title}: regression\n\n{equation}\n\n")
    else:
        out.write(f"=== {title}: regression ===\n{equation}\n\n")

    header, rows = _prediction_rows(bundle)
    _render_grid(f"{title}: optimal configuration", header, rows, fmt, out)
    if not bundle.prediction.configurations_agree:
        out.write(
            "note: the SNR-optimal and means-favored configurations differ; "
            "both predictions are shown\n\n"
        )
    if bundle.prediction.tied_factors:
        out.write(
            "note: tied effect coefficients for "
            + ", ".join(bundle.prediction.tied_factors)
            + "; level one chosen\n\n"
        )

    header, rows = _interaction_rows(bundle.interactions)
    _render_grid(f"{title}: pairwise interactions (SNR)", header, rows, fmt, out)
    return out.getvalue()


# ---------------------------------------------------------------------------
# Plot data


def emit_plot_data(bundle: ReportBundle) -> dict[str, str]:
    """Plot-ready CSVs: long-form main effects (both signals) and the full
    interaction grid."""
    docs = {}

    for name, effects in (
        ("main_effects_means", bundle.effects_means),
        ("main_effects_snr", bundle.effects_snr),
    ):
        buf = io.StringIO()
        buf.write("factor,level,mean\n")
        space = bundle.table.matrix.factor_space
        for e in effects.effects:
            factor = space[e.factor]
            buf.write(f"{e.factor},{factor.level_one},{e.level_one_mean!r}\n")
            buf.write(f"{e.factor},{factor.level_two},{e.level_two_mean!r}\n")
        docs[name] = buf.getvalue()

    buf = io.StringIO()
    buf.write("factor1,level1,factor2,level2,cell_mean\n")
    space = bundle.table.matrix.factor_space
    for cells in bundle.interactions:
        f1, f2 = space[cells.factor_one], space[cells.factor_two]
        for (l1, l2), mean in sorted(cells.cell_means.items()):
            buf.write(
                f"{cells.factor_one},{f1.label(l1)},"
                f"{cells.factor_two},{f2.label(l2)},{mean!r}\n"
            )
    docs["interactions"] = buf.getvalue()
    return docs


def report_file_names(approach_id: int, fmt: str = "text") -> dict[str, str]:
    """File naming scheme used when a bundle is written to a directory."""
    suffix = {"text": "txt", "markdown": "md", "csv": "csv"}[fmt]
    return {
        "tables": f"approach{approach_id}_tables.{suffix}",
        "main_effects_means": f"approach{approach_id}_main_effects_means.csv",
        "main_effects_snr": f"approach{approach_id}_main_effects_snr.csv",
        "interactions": f"approach{approach_id}_interactions.csv",
    }


def write_report(bundle: ReportBundle, out_dir, fmt: str = "text") -> list[Path]:
    """Write the rendered tables plus the plot CSVs; returns written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    names = report_file_names(bundle.approach.id, fmt)
    written = []

    path = out / names["tables"]
    path.write_text(render_tables(bundle, fmt), encoding="utf-8")
    written.append(path)
    for key, doc in emit_plot_data(bundle).items():
        path = out / names[key]
        path.write_text(doc, encoding="utf-8")
        written.append(path)
    return written
