"""Domain error hierarchy.

Every error carries a stable machine-readable ``code`` (kebab-case); the CLI
prints it verbatim and maps any :class:`ScaleSenseError` to exit status 1.
"""


class ScaleSenseError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "domain-error"


class InvariantViolationError(ScaleSenseError):
    """A value type was constructed with fields violating its invariants."""

    code = "invariant-violation"


class InvalidClassCountError(ScaleSenseError):
    code = "invalid-class-count"


class InsufficientSamplesError(ScaleSenseError):
    code = "insufficient-samples"


class EmptyInputError(ScaleSenseError):
    code = "empty-input"


class DegenerateCohortError(ScaleSenseError):
    code = "degenerate-cohort"


class AlignmentError(ScaleSenseError):
    code = "alignment-error"


class ThresholdOutOfRangeError(ScaleSenseError):
    code = "threshold-out-of-range"


class DimensionMismatchError(ScaleSenseError):
    code = "dimension-mismatch"


class NegativeProbabilityError(ScaleSenseError):
    code = "negative-probability"


class InvalidDeltaError(ScaleSenseError):
    code = "invalid-delta"


class NotCoveredError(ScaleSenseError):
    """Raised when a threshold pair falls outside the proven c <= c' case."""

    code = "not-covered"


class EmptyGridError(ScaleSenseError):
    code = "empty-grid"


class SpecValidationError(ScaleSenseError):
    code = "spec-validation-error"


class EmptyExperimentError(ScaleSenseError):
    code = "empty-experiment"


class SchemaError(ScaleSenseError):
    code = "schema-error"


class ParseError(ScaleSenseError):
    code = "parse-error"


class FileIOError(ScaleSenseError):
    code = "io-error"
