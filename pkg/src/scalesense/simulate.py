"""Synthetic two-group cohorts and the Monte Carlo partition sweep.

Scores are Gaussian within each outcome group, with the diseased mean above
the healthy mean.  The sweep repeatedly regenerates a cohort, discretizes it
at each requested class count, and records the criterion-optimal operating
point, so the effect of partition granularity on the chosen cut can be
studied empirically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .core import (
    ThresholdCriterion,
    Cohort,
    discretize,
    estimate_conditional_pmfs,
    select_threshold,
)
from .errors import (
    EmptyExperimentError,
    InvalidClassCountError,
    InvariantViolationError,
    SpecValidationError,
)

DEFAULT_CLASS_LADDER = (2, 3, 4, 5, 6, 8, 10, 15, 50, 100, 200, 500, 800)
"""Granularities swept by default, from a median split up to 800-tiles."""

DEFAULT_REPS = 1000

_SEED_BOUND = 2**64


@dataclass(frozen=True)
class CohortSpec:
    """Parameters of one synthetic cohort draw.

    ``n`` subjects receive i.i.d. Bernoulli(``prevalence``) outcomes; scores
    are Normal(``mu_diseased``, ``sigma``) for the diseased and
    Normal(``mu_healthy``, ``sigma``) for the healthy.
    """

    n: int
    prevalence: float
    mu_healthy: float
    mu_diseased: float
    sigma: float
    seed: int

    def __post_init__(self) -> None:
        n = int(self.n)
        if n < 2:
            raise SpecValidationError(f"cohort size must be >= 2, got {n}")
        prevalence = float(self.prevalence)
        if not 0.0 < prevalence < 1.0:
            raise SpecValidationError(
                f"prevalence must lie strictly inside (0, 1), got {prevalence!r}"
            )
        mu_healthy = float(self.mu_healthy)
        mu_diseased = float(self.mu_diseased)
        sigma = float(self.sigma)
        if not all(map(math.isfinite, (mu_healthy, mu_diseased, sigma))):
            raise SpecValidationError("means and sigma must be finite")
        if not mu_diseased > mu_healthy:
            raise SpecValidationError(
                f"diseased mean must exceed healthy mean, got "
                f"{mu_diseased!r} <= {mu_healthy!r}"
            )
        if not sigma > 0.0:
            raise SpecValidationError(f"sigma must be positive, got {sigma!r}")
        seed = int(self.seed)
        if not 0 <= seed < _SEED_BOUND:
            raise SpecValidationError("seed must be an unsigned 64-bit integer")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "prevalence", prevalence)
        object.__setattr__(self, "mu_healthy", mu_healthy)
        object.__setattr__(self, "mu_diseased", mu_diseased)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "seed", seed)


@dataclass(frozen=True)
class SweepRecord:
    """Aggregates over replications for one class count."""

    k: int
    mean_se: float
    sd_se: float
    mean_sp: float
    sd_sp: float
    mean_c: float

    def __post_init__(self) -> None:
        if int(self.k) < 2:
            raise InvariantViolationError(f"k must be >= 2, got {self.k}")
        for name in ("mean_se", "mean_sp"):
            value = float(getattr(self, name))
            if not -1e-12 <= value <= 1.0 + 1e-12:
                raise InvariantViolationError(f"{name} must lie in [0, 1]")
        for name in ("sd_se", "sd_sp"):
            if float(getattr(self, name)) < 0.0:
                raise InvariantViolationError(f"{name} must be >= 0")
        if float(self.mean_c) < 1.0:
            raise InvariantViolationError("mean_c must be >= 1")


@dataclass(frozen=True)
class ExperimentReport:
    """Everything needed to reproduce and read one sweep."""

    spec: CohortSpec
    criterion: ThresholdCriterion
    reps: int
    k_values: tuple[int, ...]
    records: tuple[SweepRecord, ...]

    def __post_init__(self) -> None:
        if len(self.records) != len(self.k_values):
            raise InvariantViolationError("one record per requested k value")
        if any(r.k != k for r, k in zip(self.records, self.k_values)):
            raise InvariantViolationError("records must align with k_values")


def replication_seed(master_seed: int, replication: int) -> int:
    """Derive the child seed for one replication from the master seed.

    Children are split off counter-style, so any replication's seed can be
    recomputed without generating its predecessors.
    """
    seq = np.random.SeedSequence(entropy=master_seed, spawn_key=(replication,))
    return int(seq.generate_state(1, np.uint64)[0])


def generate_cohort(spec: CohortSpec) -> Cohort:
    """Draw one cohort; identical specs give bit-identical cohorts."""
    rng = np.random.default_rng(spec.seed)
    outcomes = (rng.random(spec.n) < spec.prevalence).astype(np.int64)
    means = np.where(outcomes == 1, spec.mu_diseased, spec.mu_healthy)
    scores = rng.standard_normal(spec.n) * spec.sigma + means
    return Cohort(scores=scores, outcomes=outcomes)


def run_partition_sweep(
    spec: CohortSpec,
    k_values: tuple[int, ...] = DEFAULT_CLASS_LADDER,
    reps: int = DEFAULT_REPS,
    criterion: ThresholdCriterion = ThresholdCriterion.YOUDEN_J,
) -> ExperimentReport:
    """Monte Carlo sweep over class counts.

    Each replication draws a fresh cohort from a child seed of
    ``spec.seed`` and analyzes it once per ``k``, recording the
    criterion-optimal sensitivity, specificity, and threshold.  Means and
    standard deviations (population form, so one replication gives sd 0)
    are aggregated per ``k``.  A draw that leaves one outcome group empty
    fails downstream with a degenerate-cohort error.
    """
    reps = int(reps)
    if reps < 1:
        raise EmptyExperimentError(f"need at least one replication, got {reps}")
    ks = tuple(int(k) for k in k_values)
    if not ks:
        raise EmptyExperimentError("need at least one class count to sweep")
    for k in ks:
        if not 2 <= k <= spec.n:
            raise InvalidClassCountError(
                f"swept class counts must lie in 2..n={spec.n}, got {k}"
            )

    se = np.empty((reps, len(ks)), dtype=np.float64)
    sp = np.empty((reps, len(ks)), dtype=np.float64)
    cc = np.empty((reps, len(ks)), dtype=np.float64)
    for r in range(reps):
        child = replace(spec, seed=replication_seed(spec.seed, r))
        cohort = generate_cohort(child)
        for j, k in enumerate(ks):
            _, assignment = discretize(cohort, k)
            pmf1, pmf0 = estimate_conditional_pmfs(assignment, cohort)
            summary = select_threshold(pmf1, pmf0, criterion)
            se[r, j] = summary.se
            sp[r, j] = summary.sp
            cc[r, j] = summary.c

    records = tuple(
        SweepRecord(
            k=k,
            mean_se=float(np.mean(se[:, j])),
            sd_se=float(np.std(se[:, j])),
            mean_sp=float(np.mean(sp[:, j])),
            sd_sp=float(np.std(sp[:, j])),
            mean_c=float(np.mean(cc[:, j])),
        )
        for j, k in enumerate(ks)
    )
    return ExperimentReport(
        spec=spec, criterion=criterion, reps=reps, k_values=ks, records=records
    )
