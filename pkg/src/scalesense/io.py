"""Cohort CSV ingestion and deterministic report serialization.

Reports serialize either as structured JSON (lossless floats via shortest
round-trip repr, fixed key order, so identical inputs give byte-identical
files) or as a flat CSV of sweep records for spreadsheet use (12 significant
digits).  Provenance carries no wall-clock data unless a timestamp is passed
explicitly, keeping outputs reproducible by default.
"""

from __future__ import annotations

import csv
import io as _stdio
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .core import (
    ConditionalPMF,
    Cohort,
    DiagnosticSummary,
    Outcome,
    PartitionSpec,
    ScaleAnalysis,
    ThresholdCriterion,
)
from .errors import (
    EmptyInputError,
    FileIOError,
    InvariantViolationError,
    ParseError,
    SchemaError,
)
from .simulate import CohortSpec, ExperimentReport, SweepRecord

SCHEMA_VERSION = "1"

FLAT_CSV_HEADER = ("k", "mean_se", "sd_se", "mean_sp", "sd_sp", "mean_c")


@dataclass(frozen=True)
class CohortFileSchema:
    """Column layout of a cohort CSV."""

    score_column: str = "score"
    outcome_column: str = "outcome"
    delimiter: str = ","
    has_header: bool = True

    def __post_init__(self) -> None:
        if not self.score_column or not self.outcome_column:
            raise InvariantViolationError("column names must be non-empty")
        if self.score_column == self.outcome_column:
            raise InvariantViolationError("column names must be distinct")
        if len(self.delimiter) != 1:
            raise InvariantViolationError("delimiter must be a single character")


@dataclass(frozen=True)
class Provenance:
    """Reproducibility trail attached to every report document."""

    seed: Optional[int]
    tool_version: str
    timestamp: Optional[str] = None


@dataclass(frozen=True)
class ReportDocument:
    """Versioned envelope around a sweep report or a single-cohort analysis."""

    schema_version: str
    provenance: Provenance
    payload: Union[ExperimentReport, ScaleAnalysis]


def load_cohort(
    path: Union[str, Path], schema: Optional[CohortFileSchema] = None
) -> Cohort:
    """Read a cohort CSV, validating every row.

    Rows with an unparseable or non-finite score, or an outcome other than
    0/1, fail with a parse error naming the 1-based data row.  A missing
    column fails with a schema error; a file with no data rows fails with
    empty-input.
    """
    schema = schema or CohortFileSchema()
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FileIOError(f"cannot read {path}: {exc}") from exc
    rows = [row for row in csv.reader(_stdio.StringIO(text), delimiter=schema.delimiter)]
    rows = [row for row in rows if any(field.strip() for field in row)]
    if schema.has_header:
        if not rows:
            raise EmptyInputError(f"{path} has no rows")
        header = [h.strip() for h in rows[0]]
        try:
            score_idx = header.index(schema.score_column)
        except ValueError:
            raise SchemaError(
                f"missing column '{schema.score_column}' in {path}"
            ) from None
        try:
            outcome_idx = header.index(schema.outcome_column)
        except ValueError:
            raise SchemaError(
                f"missing column '{schema.outcome_column}' in {path}"
            ) from None
        data = rows[1:]
    else:
        score_idx, outcome_idx = 0, 1
        data = rows
    if not data:
        raise EmptyInputError(f"{path} has no data rows")

    scores = []
    outcomes = []
    needed = max(score_idx, outcome_idx) + 1
    for rownum, row in enumerate(data, start=1):
        if len(row) < needed:
            raise ParseError(
                f"row {rownum}: expected at least {needed} fields, got {len(row)}"
            )
        raw_score = row[score_idx].strip()
        try:
            score = float(raw_score)
        except ValueError:
            raise ParseError(
                f"row {rownum}: score {raw_score!r} is not a number"
            ) from None
        if not math.isfinite(score):
            raise ParseError(f"row {rownum}: score {raw_score!r} is not finite")
        raw_outcome = row[outcome_idx].strip()
        if raw_outcome not in ("0", "1"):
            raise ParseError(
                f"row {rownum}: outcome must be 0 or 1, got {raw_outcome!r}"
            )
        scores.append(score)
        outcomes.append(int(raw_outcome))
    return Cohort(scores=scores, outcomes=outcomes)


def write_cohort(
    cohort: Cohort, path: Union[str, Path], schema: Optional[CohortFileSchema] = None
) -> None:
    """Write a cohort CSV that :func:`load_cohort` reads back exactly.

    Scores are written with shortest round-trip precision.
    """
    schema = schema or CohortFileSchema()
    buffer = _stdio.StringIO()
    writer = csv.writer(buffer, delimiter=schema.delimiter, lineterminator="\n")
    if schema.has_header:
        writer.writerow([schema.score_column, schema.outcome_column])
    for score, outcome in zip(cohort.scores, cohort.outcomes):
        writer.writerow([repr(float(score)), int(outcome)])
    _write_text(path, buffer.getvalue())


def _write_text(path: Union[str, Path], text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise FileIOError(f"cannot write {path}: {exc}") from exc


def _spec_to_dict(spec: CohortSpec) -> dict:
    return {
        "n": spec.n,
        "prevalence": spec.prevalence,
        "mu_healthy": spec.mu_healthy,
        "mu_diseased": spec.mu_diseased,
        "sigma": spec.sigma,
        "seed": spec.seed,
    }


def _payload_to_dict(payload: Union[ExperimentReport, ScaleAnalysis]) -> dict:
    if isinstance(payload, ExperimentReport):
        return {
            "kind": "partition_sweep",
            "spec": _spec_to_dict(payload.spec),
            "criterion": payload.criterion.value,
            "reps": payload.reps,
            "k_values": list(payload.k_values),
            "records": [
                {
                    "k": r.k,
                    "mean_se": r.mean_se,
                    "sd_se": r.sd_se,
                    "mean_sp": r.mean_sp,
                    "sd_sp": r.sd_sp,
                    "mean_c": r.mean_c,
                }
                for r in payload.records
            ],
        }
    if isinstance(payload, ScaleAnalysis):
        return {
            "kind": "scale_analysis",
            "criterion": payload.criterion.value,
            "partition": {
                "k": payload.partition.k,
                "boundaries": list(payload.partition.boundaries),
            },
            "pmf_diseased": list(payload.pmf_diseased.probs),
            "pmf_healthy": list(payload.pmf_healthy.probs),
            "roc_points": [list(point) for point in payload.roc],
            "summary": {
                "c": payload.summary.c,
                "se": payload.summary.se,
                "sp": payload.summary.sp,
                "criterion_value": payload.summary.criterion_value,
            },
        }
    raise SchemaError(f"unsupported payload type {type(payload).__name__}")


def write_report(
    document: ReportDocument, path: Union[str, Path], fmt: str = "structured-json"
) -> None:
    """Serialize a report document.

    ``structured-json`` handles both payload kinds losslessly.  ``flat-csv``
    is defined for sweep payloads only: one row per class count, ascending
    by ``k``, 12 significant digits.
    """
    if fmt == "structured-json":
        body = {
            "schema_version": document.schema_version,
            "provenance": {
                "seed": document.provenance.seed,
                "tool_version": document.provenance.tool_version,
                "timestamp": document.provenance.timestamp,
            },
            "payload": _payload_to_dict(document.payload),
        }
        _write_text(path, json.dumps(body, indent=2) + "\n")
    elif fmt == "flat-csv":
        if not isinstance(document.payload, ExperimentReport):
            raise SchemaError("flat-csv output is defined for sweep reports only")
        lines = [",".join(FLAT_CSV_HEADER)]
        for record in sorted(document.payload.records, key=lambda r: r.k):
            lines.append(
                ",".join(
                    [str(record.k)]
                    + [
                        format(value, ".12g")
                        for value in (
                            record.mean_se,
                            record.sd_se,
                            record.mean_sp,
                            record.sd_sp,
                            record.mean_c,
                        )
                    ]
                )
            )
        _write_text(path, "\n".join(lines) + "\n")
    else:
        raise SchemaError(f"unknown report format {fmt!r}")


def _require(mapping: dict, key: str, context: str):
    if not isinstance(mapping, dict) or key not in mapping:
        raise SchemaError(f"report {context} lacks key '{key}'")
    return mapping[key]


def _parse_criterion(value, context: str) -> ThresholdCriterion:
    try:
        return ThresholdCriterion(value)
    except ValueError:
        raise SchemaError(f"report {context} has unknown criterion {value!r}") from None


def read_report(path: Union[str, Path]) -> ReportDocument:
    """Parse a structured JSON report back into typed objects.

    Inverse of :func:`write_report` for the ``structured-json`` format:
    reading a written document reproduces it exactly, floats included.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FileIOError(f"cannot read {path}: {exc}") from exc
    try:
        body = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc

    version = _require(body, "schema_version", "envelope")
    prov = _require(body, "provenance", "envelope")
    payload_dict = _require(body, "payload", "envelope")
    provenance = Provenance(
        seed=_require(prov, "seed", "provenance"),
        tool_version=_require(prov, "tool_version", "provenance"),
        timestamp=_require(prov, "timestamp", "provenance"),
    )
    kind = _require(payload_dict, "kind", "payload")
    if kind == "partition_sweep":
        spec_dict = _require(payload_dict, "spec", "payload")
        spec = CohortSpec(
            n=_require(spec_dict, "n", "spec"),
            prevalence=_require(spec_dict, "prevalence", "spec"),
            mu_healthy=_require(spec_dict, "mu_healthy", "spec"),
            mu_diseased=_require(spec_dict, "mu_diseased", "spec"),
            sigma=_require(spec_dict, "sigma", "spec"),
            seed=_require(spec_dict, "seed", "spec"),
        )
        records = tuple(
            SweepRecord(
                k=_require(r, "k", "record"),
                mean_se=_require(r, "mean_se", "record"),
                sd_se=_require(r, "sd_se", "record"),
                mean_sp=_require(r, "mean_sp", "record"),
                sd_sp=_require(r, "sd_sp", "record"),
                mean_c=_require(r, "mean_c", "record"),
            )
            for r in _require(payload_dict, "records", "payload")
        )
        payload: Union[ExperimentReport, ScaleAnalysis] = ExperimentReport(
            spec=spec,
            criterion=_parse_criterion(
                _require(payload_dict, "criterion", "payload"), "payload"
            ),
            reps=_require(payload_dict, "reps", "payload"),
            k_values=tuple(_require(payload_dict, "k_values", "payload")),
            records=records,
        )
    elif kind == "scale_analysis":
        partition_dict = _require(payload_dict, "partition", "payload")
        summary_dict = _require(payload_dict, "summary", "payload")
        payload = ScaleAnalysis(
            partition=PartitionSpec(
                k=_require(partition_dict, "k", "partition"),
                boundaries=tuple(_require(partition_dict, "boundaries", "partition")),
            ),
            pmf_diseased=ConditionalPMF(
                probs=tuple(_require(payload_dict, "pmf_diseased", "payload")),
                conditioning_outcome=Outcome.DISEASED,
            ),
            pmf_healthy=ConditionalPMF(
                probs=tuple(_require(payload_dict, "pmf_healthy", "payload")),
                conditioning_outcome=Outcome.HEALTHY,
            ),
            roc=tuple(
                (float(point[0]), float(point[1]))
                for point in _require(payload_dict, "roc_points", "payload")
            ),
            summary=DiagnosticSummary(
                c=_require(summary_dict, "c", "summary"),
                se=_require(summary_dict, "se", "summary"),
                sp=_require(summary_dict, "sp", "summary"),
                criterion_value=_require(summary_dict, "criterion_value", "summary"),
            ),
            criterion=_parse_criterion(
                _require(payload_dict, "criterion", "payload"), "payload"
            ),
        )
    else:
        raise SchemaError(f"unknown payload kind {kind!r}")
    return ReportDocument(
        schema_version=version, provenance=provenance, payload=payload
    )
