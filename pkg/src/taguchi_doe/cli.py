"""Command-line workflow: design, run, ingest, analyze, predict, report.

Exit codes: 0 success, 2 configuration or plan error, 3 incomplete result
store, 4 degenerate metrics, 5 runner failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .analysis import predict_optimum
from .config import ProjectConfig, default_config, load_config
from .design import build_l12, export_plan
from .errors import (
    ConfigError,
    DegenerateMetricError,
    IncompleteResultsError,
    StoreError,
    TaguchiError,
)
from .orchestrate import ResultStore, ingest_results, plan_fingerprint, run_plan
from .reference import reference_metrics_path
from .report import build_bundle, render_tables, write_report

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INCOMPLETE = 3
EXIT_DEGENERATE = 4
EXIT_RUNNER = 5


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-c",
        "--config",
        type=Path,
        help="project config file (defaults to the bundled reference study)",
    )
    common.add_argument("--out", type=Path, help="override the output directory")
    common.add_argument(
        "-v", "--verbose", action="store_true", help="log runner chatter"
    )

    parser = argparse.ArgumentParser(
        prog="taguchi-doe",
        description="Orthogonal-array experiment planning, orchestration "
        "and signal-to-noise analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser(
        "design", parents=[common], help="write the experiment plan (CSV and JSON)"
    )

    p_run = sub.add_parser(
        "run", parents=[common], help="execute the plan through a trial runner"
    )
    p_run.add_argument("--runner-cmd", help="runner command line")
    p_run.add_argument("--parallelism", type=int, help="trials in flight")
    p_run.add_argument("--timeout", type=float, help="per-trial timeout, seconds")

    p_ingest = sub.add_parser(
        "ingest", parents=[common], help="load a results CSV into the store"
    )
    p_ingest.add_argument(
        "results",
        nargs="?",
        help="results CSV path (omit with --fixture for the bundled dataset)",
    )
    p_ingest.add_argument(
        "--fixture",
        action="store_true",
        help="ingest the bundled reference metrics",
    )

    for name, help_text in (
        ("analyze", "compute tables for the selected approaches"),
        ("predict", "print the optimal configuration per approach"),
        ("report", "write report documents and plot CSVs"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument(
            "--approach",
            default="all",
            help="approach id 1..5 or 'all' (default all)",
        )
        p.add_argument("--log-base", type=float, help="override the log base")
        p.add_argument(
            "--allow-missing-rows",
            action="store_true",
            help="analyze despite missing or failed rows (recorded in the report)",
        )
        if name == "report":
            p.add_argument(
                "--format",
                choices=("text", "csv", "markdown"),
                default="text",
            )
    return parser


def _load(args) -> ProjectConfig:
    config = load_config(args.config) if args.config else default_config()
    if args.out:
        config.output_dir = args.out
    return config


def _approaches(args, config: ProjectConfig) -> tuple[int, ...]:
    if args.approach == "all":
        return config.approaches
    try:
        k = int(args.approach)
    except ValueError:
        raise ConfigError(f"--approach must be 1..5 or 'all', got {args.approach!r}")
    if k not in (1, 2, 3, 4, 5):
        raise ConfigError(f"--approach must be 1..5 or 'all', got {k}")
    return (k,)


def _open_store(config: ProjectConfig) -> ResultStore:
    matrix = build_l12(config.space)
    return ResultStore.load(
        config.store_path, plan_fingerprint(matrix), append=False
    )


def _cmd_design(args, config: ProjectConfig) -> int:
    matrix = build_l12(config.space)
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    (out / "plan.csv").write_text(export_plan(matrix, "csv"), encoding="utf-8")
    (out / "plan.json").write_text(export_plan(matrix, "json"), encoding="utf-8")
    sys.stdout.write(export_plan(matrix, "csv"))
    print(f"plan written to {out / 'plan.csv'} and {out / 'plan.json'}")
    return EXIT_OK


def _cmd_run(args, config: ProjectConfig) -> int:
    runner = args.runner_cmd or config.runner_command
    if not runner:
        raise ConfigError("no runner command configured (set [run] command or --runner-cmd)")
    matrix = build_l12(config.space)
    config.output_dir.mkdir(parents=True, exist_ok=True)
    store = run_plan(
        matrix,
        runner,
        parallelism=args.parallelism or config.parallelism,
        store_path=config.store_path,
        timeout=args.timeout if args.timeout is not None else config.timeout,
    )
    failed = store.failed_rows()
    done = matrix.runs - len(failed)
    print(f"{done}/{matrix.runs} rows completed; log at {config.store_path}")
    if failed:
        for row in failed:
            print(f"row {row} failed: {store.latest()[row].failure}")
        return EXIT_RUNNER
    return EXIT_OK


def _cmd_ingest(args, config: ProjectConfig) -> int:
    if args.fixture:
        source: Path | str = reference_metrics_path()
    elif args.results:
        source = Path(args.results)
        if not source.is_file():
            raise ConfigError(f"results file {source} does not exist")
    else:
        raise ConfigError("give a results CSV path or --fixture")
    matrix = build_l12(config.space)
    config.output_dir.mkdir(parents=True, exist_ok=True)
    if config.store_path.exists():
        config.store_path.unlink()
    store = ingest_results(matrix, source, store_path=config.store_path)
    for diagnostic in store.diagnostics:
        print(f"rejected: {diagnostic}", file=sys.stderr)
    print(
        f"{len(store.metrics_by_row())}/{matrix.runs} rows ingested; "
        f"log at {config.store_path}"
    )
    return EXIT_OK


def _bundles(args, config: ProjectConfig):
    matrix = build_l12(config.space)
    store = _open_store(config)
    if args.log_base is not None:
        config.log_base = args.log_base
    metrics = store.metrics_by_row()
    for k in _approaches(args, config):
        yield build_bundle(
            matrix,
            metrics,
            config.approach(k),
            allow_missing=args.allow_missing_rows,
        )


def _cmd_analyze(args, config: ProjectConfig) -> int:
    wrote = []
    for bundle in _bundles(args, config):
        sys.stdout.write(render_tables(bundle, "text"))
        wrote += write_report(bundle, config.output_dir, "text")
    print(f"wrote {len(wrote)} files under {config.output_dir}")
    return EXIT_OK


def _cmd_predict(args, config: ProjectConfig) -> int:
    for bundle in _bundles(args, config):
        pred = predict_optimum(bundle.model, bundle.effects_means)
        space = bundle.table.matrix.factor_space
        print(f"approach {bundle.approach.id} optimal configuration:")
        for factor in space:
            print(f"  {factor.name} = {factor.label(pred.chosen_levels[factor.name])}")
        print(f"  predicted SNR: {pred.predicted_snr:.4f} dB")
        print(f"  predicted response: {pred.predicted_response:.5f}")
        if not pred.configurations_agree:
            labels = ", ".join(
                f"{f.name}={f.label(pred.means_levels[f.name])}"
                for f in space
                if pred.means_levels[f.name] != pred.chosen_levels[f.name]
            )
            print(
                f"  means-favored configuration differs ({labels}): "
                f"SNR {pred.means_predicted_snr:.4f} dB, "
                f"response {pred.means_predicted_response:.5f}"
            )
    return EXIT_OK


def _cmd_report(args, config: ProjectConfig) -> int:
    store = _open_store(config)
    if not store.metrics_by_row():
        doc = render_tables(None, args.format)
        config.output_dir.mkdir(parents=True, exist_ok=True)
        path = config.output_dir / "report_empty.txt"
        path.write_text(doc, encoding="utf-8")
        sys.stdout.write(doc)
        return EXIT_INCOMPLETE
    wrote = []
    for bundle in _bundles(args, config):
        wrote += write_report(bundle, config.output_dir, args.format)
    print(f"wrote {len(wrote)} files under {config.output_dir}")
    return EXIT_OK


_COMMANDS = {
    "design": _cmd_design,
    "run": _cmd_run,
    "ingest": _cmd_ingest,
    "analyze": _cmd_analyze,
    "predict": _cmd_predict,
    "report": _cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
    )
    try:
        config = _load(args)
        return _COMMANDS[args.command](args, config)
    except IncompleteResultsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(
            "re-run or re-ingest the missing rows, or pass "
            "--allow-missing-rows to analyze without them",
            file=sys.stderr,
        )
        return EXIT_INCOMPLETE
    except DegenerateMetricError as exc:
        print(f"error: degenerate metrics: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ConfigError, StoreError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except TaguchiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
