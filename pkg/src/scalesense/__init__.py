"""Discretized diagnostic scales: quantile binning of continuous risk
scores, threshold selection, refinement monotonicity checks, and Monte
Carlo partition sweeps."""

__version__ = "0.1.0"

from .core import (
    MASS_TOLERANCE,
    Cohort,
    ConditionalPMF,
    DiagnosticSummary,
    LabeledSample,
    Outcome,
    PartitionSpec,
    ScaleAnalysis,
    ScaleAssignment,
    ThresholdCriterion,
    analyze_cohort,
    discretize,
    estimate_conditional_pmfs,
    roc_points,
    select_threshold,
    sensitivity,
    specificity,
)
from .errors import (
    AlignmentError,
    DegenerateCohortError,
    DimensionMismatchError,
    EmptyExperimentError,
    EmptyGridError,
    EmptyInputError,
    FileIOError,
    InsufficientSamplesError,
    InvalidClassCountError,
    InvalidDeltaError,
    InvariantViolationError,
    NegativeProbabilityError,
    NotCoveredError,
    ParseError,
    ScaleSenseError,
    SchemaError,
    SpecValidationError,
    ThresholdOutOfRangeError,
)
from .refinement import (
    MonotonicityVerdict,
    RefinementWitness,
    VerdictStatus,
    apply_refinement,
    check_mass_control,
    search_counterexample,
    verify_monotonicity,
)
from .simulate import (
    DEFAULT_CLASS_LADDER,
    DEFAULT_REPS,
    CohortSpec,
    ExperimentReport,
    SweepRecord,
    generate_cohort,
    replication_seed,
    run_partition_sweep,
)
from .io import (
    FLAT_CSV_HEADER,
    SCHEMA_VERSION,
    CohortFileSchema,
    Provenance,
    ReportDocument,
    load_cohort,
    read_report,
    write_cohort,
    write_report,
)

__all__ = [
    "__version__",
    "MASS_TOLERANCE",
    "Outcome",
    "LabeledSample",
    "Cohort",
    "PartitionSpec",
    "ScaleAssignment",
    "ConditionalPMF",
    "ThresholdCriterion",
    "DiagnosticSummary",
    "ScaleAnalysis",
    "discretize",
    "estimate_conditional_pmfs",
    "sensitivity",
    "specificity",
    "select_threshold",
    "roc_points",
    "analyze_cohort",
    "RefinementWitness",
    "MonotonicityVerdict",
    "VerdictStatus",
    "apply_refinement",
    "check_mass_control",
    "verify_monotonicity",
    "search_counterexample",
    "CohortSpec",
    "SweepRecord",
    "ExperimentReport",
    "DEFAULT_CLASS_LADDER",
    "DEFAULT_REPS",
    "replication_seed",
    "generate_cohort",
    "run_partition_sweep",
    "CohortFileSchema",
    "Provenance",
    "ReportDocument",
    "SCHEMA_VERSION",
    "FLAT_CSV_HEADER",
    "load_cohort",
    "write_cohort",
    "write_report",
    "read_report",
    "ScaleSenseError",
    "InvariantViolationError",
    "InvalidClassCountError",
    "InsufficientSamplesError",
    "EmptyInputError",
    "DegenerateCohortError",
    "AlignmentError",
    "ThresholdOutOfRangeError",
    "DimensionMismatchError",
    "NegativeProbabilityError",
    "InvalidDeltaError",
    "NotCoveredError",
    "EmptyGridError",
    "SpecValidationError",
    "EmptyExperimentError",
    "SchemaError",
    "ParseError",
    "FileIOError",
]
