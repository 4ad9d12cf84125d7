"""Taguchi design-of-experiments engine for multi-objective hyperparameter
screening: orthogonal-array planning, external-trial orchestration,
signal-to-noise analysis and optimal-configuration prediction."""

from .analysis import (
    AnovaRow,
    AnovaTable,
    InteractionCells,
    MainEffects,
    OptimalPrediction,
    RegressionModel,
    ResponseTable,
    anova,
    build_response_table,
    f_tail_probability,
    fit_regression,
    interaction_table,
    main_effects,
    predict_optimum,
    regularized_incomplete_beta,
)
from .config import ProjectConfig, default_config, load_config
from .design import (
    DesignMatrix,
    Factor,
    FactorSpace,
    ValidationReport,
    build_l12,
    export_plan,
    import_plan,
    validate_orthogonality,
)
from .errors import (
    CapacityError,
    ConfigError,
    DegenerateMetricError,
    IncompleteResultsError,
    PlanFormatError,
    SaturatedDesignError,
    StoreError,
    TaguchiError,
)
from .orchestrate import (
    ResultStore,
    RunRecord,
    ingest_results,
    plan_fingerprint,
    run_plan,
)
from .report import ReportBundle, build_bundle, emit_plot_data, render_tables, write_report
from .response import (
    Approach,
    Direction,
    TrialMetrics,
    compute_response,
    log_base,
)
from .snr import snr_for_approach, snr_larger, snr_smaller

__version__ = "0.1.0"

__all__ = [
    "AnovaRow",
    "AnovaTable",
    "Approach",
    "CapacityError",
    "ConfigError",
    "DegenerateMetricError",
    "DesignMatrix",
    "Direction",
    "Factor",
    "FactorSpace",
    "IncompleteResultsError",
    "InteractionCells",
    "MainEffects",
    "OptimalPrediction",
    "PlanFormatError",
    "ProjectConfig",
    "RegressionModel",
    "ReportBundle",
    "ResponseTable",
    "ResultStore",
    "RunRecord",
    "SaturatedDesignError",
    "StoreError",
    "TaguchiError",
    "TrialMetrics",
    "ValidationReport",
    "anova",
    "build_bundle",
    "build_l12",
    "build_response_table",
    "compute_response",
    "default_config",
    "emit_plot_data",
    "export_plan",
    "f_tail_probability",
    "fit_regression",
    "import_plan",
    "ingest_results",
    "interaction_table",
    "load_config",
    "log_base",
    "main_effects",
    "plan_fingerprint",
    "predict_optimum",
    "regularized_incomplete_beta",
    "render_tables",
    "run_plan",
    "snr_for_approach",
    "snr_larger",
    "snr_smaller",
    "validate_orthogonality",
    "write_report",
]
