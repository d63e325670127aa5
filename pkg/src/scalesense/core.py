"""Discretized diagnostic scales and threshold analytics.

A continuous risk score is binned into ``k`` ordered classes by pooled
quantiles.  Conditional class probabilities given the binary outcome then
yield sensitivity and specificity at every candidate threshold, from which
an optimal cutpoint is selected under a configurable criterion.

Threshold convention: a subject is called positive when its class index is
``>= c``, for ``c`` in ``1 .. k+1``.  The sentinel ``c = k+1`` calls nobody
positive, so sensitivity spans the exact range ``[0, 1]`` endpoints at
``c = k+1`` and ``c = 1`` respectively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AlignmentError,
    DegenerateCohortError,
    DimensionMismatchError,
    EmptyInputError,
    InsufficientSamplesError,
    InvalidClassCountError,
    InvariantViolationError,
    ThresholdOutOfRangeError,
)

MASS_TOLERANCE = 1e-9
"""Absolute slack allowed on probability sums after float arithmetic."""


class Outcome(IntEnum):
    """Binary reference standard: 1 = condition present, 0 = absent."""

    HEALTHY = 0
    DISEASED = 1


@dataclass(frozen=True)
class LabeledSample:
    """One subject: a continuous risk score plus its true outcome."""

    score: float
    outcome: Outcome

    def __post_init__(self) -> None:
        score = float(self.score)
        if not math.isfinite(score):
            raise InvariantViolationError("sample score must be finite")
        try:
            outcome = Outcome(self.outcome)
        except ValueError:
            raise InvariantViolationError(
                f"sample outcome must be 0 or 1, got {self.outcome!r}"
            ) from None
        object.__setattr__(self, "score", score)
        object.__setattr__(self, "outcome", outcome)


@dataclass(frozen=True, eq=False)
class Cohort:
    """Ordered study sample.

    Attributes
    ----------
    scores:
        Finite float64 risk scores, one per subject, in row order.
    outcomes:
        int64 array of 0/1 labels aligned with ``scores``.
    """

    scores: np.ndarray
    outcomes: np.ndarray

    def __post_init__(self) -> None:
        scores = np.array(self.scores, dtype=np.float64, copy=True)
        outcomes = np.array(self.outcomes, dtype=np.int64, copy=True)
        if scores.ndim != 1 or outcomes.ndim != 1:
            raise InvariantViolationError("cohort arrays must be one-dimensional")
        if scores.shape[0] != outcomes.shape[0]:
            raise AlignmentError(
                f"{scores.shape[0]} scores vs {outcomes.shape[0]} outcomes"
            )
        if not np.all(np.isfinite(scores)):
            raise InvariantViolationError("all scores must be finite")
        if not np.isin(outcomes, (0, 1)).all():
            raise InvariantViolationError("all outcomes must be 0 or 1")
        scores.setflags(write=False)
        outcomes.setflags(write=False)
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "outcomes", outcomes)

    @classmethod
    def from_samples(cls, samples: Iterable[LabeledSample]) -> "Cohort":
        items = list(samples)
        return cls(
            scores=np.array([s.score for s in items], dtype=np.float64),
            outcomes=np.array([int(s.outcome) for s in items], dtype=np.int64),
        )

    def __len__(self) -> int:
        return int(self.scores.shape[0])

    @property
    def n_diseased(self) -> int:
        return int(np.sum(self.outcomes == 1))

    @property
    def n_healthy(self) -> int:
        return int(np.sum(self.outcomes == 0))

    @property
    def samples(self) -> tuple[LabeledSample, ...]:
        return tuple(
            LabeledSample(float(s), Outcome(int(o)))
            for s, o in zip(self.scores, self.outcomes)
        )


@dataclass(frozen=True)
class PartitionSpec:
    """``k`` ordered classes split by ``k - 1`` upper cut points.

    Boundaries are non-decreasing rather than strictly increasing: with
    tie-heavy scores two quantile ranks can land on the same value, and the
    class squeezed between equal boundaries is simply empty.
    """

    k: int
    boundaries: tuple[float, ...]

    def __post_init__(self) -> None:
        k = int(self.k)
        if k < 1:
            raise InvariantViolationError(f"class count must be >= 1, got {k}")
        boundaries = tuple(float(b) for b in self.boundaries)
        if len(boundaries) != k - 1:
            raise InvariantViolationError(
                f"expected {k - 1} boundaries for k={k}, got {len(boundaries)}"
            )
        if any(not math.isfinite(b) for b in boundaries):
            raise InvariantViolationError("boundaries must be finite")
        if any(a > b for a, b in zip(boundaries, boundaries[1:])):
            raise InvariantViolationError("boundaries must be non-decreasing")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "boundaries", boundaries)


@dataclass(frozen=True, eq=False)
class ScaleAssignment:
    """Class index in ``1 .. k`` for each subject, aligned with its cohort."""

    k: int
    class_indices: np.ndarray

    def __post_init__(self) -> None:
        k = int(self.k)
        if k < 1:
            raise InvariantViolationError(f"class count must be >= 1, got {k}")
        idx = np.array(self.class_indices, dtype=np.int64, copy=True)
        if idx.ndim != 1:
            raise InvariantViolationError("class indices must be one-dimensional")
        if idx.size and (idx.min() < 1 or idx.max() > k):
            raise InvariantViolationError(f"class indices must lie in 1..{k}")
        idx.setflags(write=False)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "class_indices", idx)

    def __len__(self) -> int:
        return int(self.class_indices.shape[0])


@dataclass(frozen=True)
class ConditionalPMF:
    """Class probabilities of the discretized score given one outcome.

    Attributes
    ----------
    probs:
        Probability of each class ``1 .. k``; entries are >= 0 and sum to 1
        within :data:`MASS_TOLERANCE`.
    conditioning_outcome:
        The outcome this distribution conditions on.
    """

    probs: tuple[float, ...]
    conditioning_outcome: Outcome

    def __post_init__(self) -> None:
        probs = tuple(float(p) for p in self.probs)
        if len(probs) < 1:
            raise InvariantViolationError("a pmf needs at least one class")
        if any(not math.isfinite(p) for p in probs):
            raise InvariantViolationError("pmf entries must be finite")
        if any(p < 0.0 for p in probs):
            raise InvariantViolationError("pmf entries must be non-negative")
        total = math.fsum(probs)
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise InvariantViolationError(
                f"pmf mass must be 1 within {MASS_TOLERANCE}, got {total!r}"
            )
        outcome = Outcome(self.conditioning_outcome)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "conditioning_outcome", outcome)

    @property
    def k(self) -> int:
        return len(self.probs)


class ThresholdCriterion(Enum):
    """Cutpoint selection rule applied across candidate thresholds."""

    YOUDEN_J = "youden"
    CLOSEST_TO_TOP_LEFT = "closest-topleft"
    SE_SP_PRODUCT = "se-sp-product"


@dataclass(frozen=True)
class DiagnosticSummary:
    """Selected threshold and its operating characteristics."""

    c: int
    se: float
    sp: float
    criterion_value: float

    def __post_init__(self) -> None:
        c = int(self.c)
        se = float(self.se)
        sp = float(self.sp)
        value = float(self.criterion_value)
        if c < 1:
            raise InvariantViolationError(f"threshold index must be >= 1, got {c}")
        if not 0.0 <= se <= 1.0 or not 0.0 <= sp <= 1.0:
            raise InvariantViolationError("se and sp must lie in [0, 1]")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "se", se)
        object.__setattr__(self, "sp", sp)
        object.__setattr__(self, "criterion_value", value)


@dataclass(frozen=True)
class ScaleAnalysis:
    """Full single-cohort result: partition, pmfs, ROC set, chosen cut."""

    partition: PartitionSpec
    pmf_diseased: ConditionalPMF
    pmf_healthy: ConditionalPMF
    roc: tuple[tuple[float, float], ...]
    summary: DiagnosticSummary
    criterion: ThresholdCriterion


def _tail_sums(probs: Sequence[float]) -> np.ndarray:
    """Sensitivity at every threshold: ``out[c-1] = P(class >= c)``.

    Built by sequential accumulation from the top class down, so the result
    is non-increasing entry by entry in float arithmetic, clipped into
    ``[0, 1]``, with the ``c = 1`` and ``c = k+1`` endpoints exactly 1 and 0.
    """
    p = np.asarray(probs, dtype=np.float64)
    k = p.size
    out = np.empty(k + 1, dtype=np.float64)
    out[:k] = np.minimum(np.cumsum(p[::-1])[::-1], 1.0)
    out[0] = 1.0
    out[k] = 0.0
    return out


def _head_sums(probs: Sequence[float]) -> np.ndarray:
    """Specificity at every threshold: ``out[c-1] = P(class < c)``."""
    p = np.asarray(probs, dtype=np.float64)
    k = p.size
    out = np.empty(k + 1, dtype=np.float64)
    out[0] = 0.0
    out[1:] = np.minimum(np.cumsum(p), 1.0)
    out[k] = 1.0
    return out


def _check_threshold(c: int, k: int) -> int:
    if isinstance(c, bool) or not isinstance(c, (int, np.integer)):
        raise ThresholdOutOfRangeError(f"threshold must be an integer, got {c!r}")
    c = int(c)
    if not 1 <= c <= k + 1:
        raise ThresholdOutOfRangeError(
            f"threshold {c} outside 1..{k + 1} for a {k}-class scale"
        )
    return c


def discretize(cohort: Cohort, k: int) -> tuple[PartitionSpec, ScaleAssignment]:
    """Bin cohort scores into ``k`` classes at pooled sample quantiles.

    Boundary ``j`` is the sorted pooled score of 1-based rank
    ``ceil(j * n / k)``; a subject lands in the smallest class ``j`` with
    ``score <= boundary_j``, else class ``k``.  Tied scores always share a
    class, so heavy ties can leave interior classes empty.
    """
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise InvalidClassCountError(f"class count must be an integer, got {k!r}")
    k = int(k)
    if k < 1:
        raise InvalidClassCountError(f"class count must be >= 1, got {k}")
    n = len(cohort)
    if n == 0:
        raise EmptyInputError("cannot discretize an empty cohort")
    if k > n:
        raise InsufficientSamplesError(f"k={k} exceeds cohort size n={n}")
    ordered = np.sort(cohort.scores)
    ranks = (np.arange(1, k) * n + k - 1) // k
    boundaries = tuple(float(b) for b in ordered[ranks - 1])
    indices = 1 + np.searchsorted(
        np.asarray(boundaries, dtype=np.float64), cohort.scores, side="left"
    )
    spec = PartitionSpec(k=k, boundaries=boundaries)
    assignment = ScaleAssignment(k=k, class_indices=indices.astype(np.int64))
    return spec, assignment


def estimate_conditional_pmfs(
    assignment: ScaleAssignment, cohort: Cohort
) -> tuple[ConditionalPMF, ConditionalPMF]:
    """Empirical class frequencies within each outcome group.

    Returns ``(pmf_diseased, pmf_healthy)``.
    """
    if len(assignment) != len(cohort):
        raise AlignmentError(
            f"{len(assignment)} class indices vs {len(cohort)} cohort rows"
        )
    n1 = cohort.n_diseased
    n0 = cohort.n_healthy
    if n1 == 0 or n0 == 0:
        raise DegenerateCohortError(
            f"both outcome groups must be non-empty (n1={n1}, n0={n0})"
        )
    k = assignment.k
    idx = assignment.class_indices
    counts1 = np.bincount(idx[cohort.outcomes == 1], minlength=k + 1)[1:]
    counts0 = np.bincount(idx[cohort.outcomes == 0], minlength=k + 1)[1:]
    pmf1 = ConditionalPMF(
        probs=tuple(float(c) / n1 for c in counts1),
        conditioning_outcome=Outcome.DISEASED,
    )
    pmf0 = ConditionalPMF(
        probs=tuple(float(c) / n0 for c in counts0),
        conditioning_outcome=Outcome.HEALTHY,
    )
    return pmf1, pmf0


def sensitivity(pmf: ConditionalPMF, c: int) -> float:
    """Probability of a positive call (class >= ``c``) under ``pmf``.

    Meaningful as sensitivity when ``pmf`` conditions on the diseased
    outcome.  ``c`` may be ``k + 1``, the call-nobody-positive sentinel.
    """
    c = _check_threshold(c, pmf.k)
    return float(_tail_sums(pmf.probs)[c - 1])


def specificity(pmf: ConditionalPMF, c: int) -> float:
    """Probability of a negative call (class < ``c``) under ``pmf``.

    Meaningful as specificity when ``pmf`` conditions on the healthy
    outcome.
    """
    c = _check_threshold(c, pmf.k)
    return float(_head_sums(pmf.probs)[c - 1])


def _criterion_values(
    criterion: ThresholdCriterion, se: np.ndarray, sp: np.ndarray
) -> np.ndarray:
    if criterion is ThresholdCriterion.YOUDEN_J:
        return se + sp - 1.0
    if criterion is ThresholdCriterion.CLOSEST_TO_TOP_LEFT:
        return (1.0 - se) ** 2 + (1.0 - sp) ** 2
    if criterion is ThresholdCriterion.SE_SP_PRODUCT:
        return se * sp
    raise InvariantViolationError(f"unknown criterion {criterion!r}")


def select_threshold(
    pmf_diseased: ConditionalPMF,
    pmf_healthy: ConditionalPMF,
    criterion: ThresholdCriterion = ThresholdCriterion.YOUDEN_J,
) -> DiagnosticSummary:
    """Pick the criterion-optimal threshold among ``c = 1 .. k``.

    Youden J and the se*sp product are maximized; distance to the ideal
    top-left ROC corner is minimized.  Exact criterion ties resolve to the
    smallest ``c``.
    """
    if pmf_diseased.k != pmf_healthy.k:
        raise DimensionMismatchError(
            f"pmf class counts differ: {pmf_diseased.k} vs {pmf_healthy.k}"
        )
    k = pmf_diseased.k
    se = _tail_sums(pmf_diseased.probs)[:k]
    sp = _head_sums(pmf_healthy.probs)[:k]
    values = _criterion_values(criterion, se, sp)
    objective = -values if criterion is ThresholdCriterion.CLOSEST_TO_TOP_LEFT else values
    best = int(np.argmax(objective))
    return DiagnosticSummary(
        c=best + 1,
        se=float(se[best]),
        sp=float(sp[best]),
        criterion_value=float(values[best]),
    )


def roc_points(
    pmf_diseased: ConditionalPMF, pmf_healthy: ConditionalPMF
) -> list[tuple[float, float]]:
    """``(fpr, tpr)`` at every threshold ``c = 1 .. k+1``, in that order.

    Starts at exactly ``(1, 1)`` and ends at exactly ``(0, 0)``; both
    coordinates are non-increasing along the list.  These points suffice to
    re-derive :func:`select_threshold` for any criterion.
    """
    if pmf_diseased.k != pmf_healthy.k:
        raise DimensionMismatchError(
            f"pmf class counts differ: {pmf_diseased.k} vs {pmf_healthy.k}"
        )
    k = pmf_diseased.k
    se = _tail_sums(pmf_diseased.probs)
    sp = _head_sums(pmf_healthy.probs)
    return [(float(1.0 - sp[i]), float(se[i])) for i in range(k + 1)]


def analyze_cohort(
    cohort: Cohort,
    k: int,
    criterion: ThresholdCriterion = ThresholdCriterion.YOUDEN_J,
) -> ScaleAnalysis:
    """Run the full pipeline: discretize, estimate, select, trace the ROC."""
    partition, assignment = discretize(cohort, k)
    pmf1, pmf0 = estimate_conditional_pmfs(assignment, cohort)
    summary = select_threshold(pmf1, pmf0, criterion)
    return ScaleAnalysis(
        partition=partition,
        pmf_diseased=pmf1,
        pmf_healthy=pmf0,
        roc=tuple(roc_points(pmf1, pmf0)),
        summary=summary,
        criterion=criterion,
    )
