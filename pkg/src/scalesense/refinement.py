"""Mass-shaving refinement of class PMFs and sensitivity monotonicity.

A ``k``-class pmf is refined to ``k + 1`` classes by shaving mass
``deltas[i]`` out of each class ``i`` and pooling the shaved mass into one
appended class.  With thresholds ``c`` on the base scale and ``c'`` on the
refined scale, sensitivity cannot drop as long as ``c <= c'`` and the base
mass sitting between the two thresholds is covered by the shaved mass drawn
from below ``c'`` (the mass-control condition).  Outside those conditions a
drop is possible; :func:`search_counterexample` hunts for explicit witnesses
on a rational grid.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .core import MASS_TOLERANCE, ConditionalPMF, Outcome, sensitivity
from .errors import (
    DimensionMismatchError,
    EmptyGridError,
    InvalidClassCountError,
    InvalidDeltaError,
    InvariantViolationError,
    NegativeProbabilityError,
    NotCoveredError,
)


class VerdictStatus(Enum):
    """Outcome of checking one refinement against the monotonicity claim."""

    HOLDS = "holds"
    VIOLATED = "violated"
    ASSUMPTION_FAILED = "assumption_failed"
    INVALID_DELTAS = "invalid_deltas"
    NOT_COVERED = "not_covered_by_theorem"


@dataclass(frozen=True)
class MonotonicityVerdict:
    """Verdict plus the two sensitivities it compared."""

    status: VerdictStatus
    se_base: float
    se_refined: float


@dataclass(frozen=True)
class RefinementWitness:
    """One concrete refinement scenario.

    Attributes
    ----------
    base:
        The ``k``-class pmf being refined.
    deltas:
        Mass shaved from each base class; may be negative only in research
        mode (see :func:`apply_refinement`).
    refined:
        The resulting ``k + 1``-class pmf; class ``i <= k`` holds
        ``base[i] - deltas[i]`` and class ``k + 1`` holds the shaved total.
    c, c_prime:
        Positive thresholds on the base (``1 <= c <= k``) and refined
        (``1 <= c_prime <= k + 1``) scales.
    """

    base: ConditionalPMF
    deltas: tuple[float, ...]
    refined: ConditionalPMF
    c: int
    c_prime: int

    def __post_init__(self) -> None:
        deltas = tuple(float(d) for d in self.deltas)
        k = self.base.k
        if len(deltas) != k:
            raise InvariantViolationError(
                f"expected {k} deltas, got {len(deltas)}"
            )
        if self.refined.k != k + 1:
            raise InvariantViolationError(
                f"refined pmf must have {k + 1} classes, got {self.refined.k}"
            )
        for i, (p, d, q) in enumerate(zip(self.base.probs, deltas, self.refined.probs)):
            if abs(q - (p - d)) > MASS_TOLERANCE:
                raise InvariantViolationError(
                    f"refined class {i + 1} is not base minus delta"
                )
        if abs(self.refined.probs[k] - math.fsum(deltas)) > MASS_TOLERANCE:
            raise InvariantViolationError(
                "appended class must hold exactly the shaved mass"
            )
        c = int(self.c)
        c_prime = int(self.c_prime)
        if not 1 <= c <= k:
            raise InvariantViolationError(f"c must lie in 1..{k}, got {c}")
        if not 1 <= c_prime <= k + 1:
            raise InvariantViolationError(
                f"c_prime must lie in 1..{k + 1}, got {c_prime}"
            )
        object.__setattr__(self, "deltas", deltas)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "c_prime", c_prime)

    @classmethod
    def build(
        cls,
        base: ConditionalPMF,
        deltas: tuple[float, ...],
        c: int,
        c_prime: int,
        validate_deltas: bool = True,
    ) -> "RefinementWitness":
        """Construct the refined pmf from ``base`` and ``deltas`` and wrap it."""
        refined = apply_refinement(base, deltas, validate_deltas=validate_deltas)
        return cls(
            base=base,
            deltas=tuple(float(d) for d in deltas),
            refined=refined,
            c=c,
            c_prime=c_prime,
        )


def apply_refinement(
    base: ConditionalPMF,
    deltas: tuple[float, ...],
    validate_deltas: bool = True,
) -> ConditionalPMF:
    """Shave ``deltas`` off the base classes and pool them into a new class.

    With ``validate_deltas`` (the default) each delta must satisfy
    ``0 <= deltas[i] <= base.probs[i]``.  Research mode drops the
    non-negativity requirement so deliberately malformed refinements can be
    studied, but the refined vector must still be a valid pmf.
    """
    deltas = tuple(float(d) for d in deltas)
    if len(deltas) != base.k:
        raise DimensionMismatchError(
            f"expected {base.k} deltas, got {len(deltas)}"
        )
    if any(not math.isfinite(d) for d in deltas):
        raise InvalidDeltaError("deltas must be finite")
    if validate_deltas:
        for i, (p, d) in enumerate(zip(base.probs, deltas)):
            if d < 0.0:
                raise InvalidDeltaError(f"delta {i + 1} is negative: {d!r}")
            if d > p:
                raise InvalidDeltaError(
                    f"delta {i + 1} exceeds class mass: {d!r} > {p!r}"
                )
    kept = tuple(p - d for p, d in zip(base.probs, deltas))
    shaved = math.fsum(deltas)
    if any(q < -MASS_TOLERANCE for q in kept) or shaved < -MASS_TOLERANCE:
        raise NegativeProbabilityError(
            "refinement would drive a class probability below zero"
        )
    # Mixed-sign deltas can leave a rounding residue like -1e-17 where the
    # exact sum is zero; clamp it rather than reject the whole refinement.
    kept = tuple(max(q, 0.0) for q in kept)
    shaved = max(shaved, 0.0)
    return ConditionalPMF(
        probs=kept + (shaved,),
        conditioning_outcome=base.conditioning_outcome,
    )


def check_mass_control(witness: RefinementWitness) -> bool:
    """Does the shaved mass below ``c'`` cover the base mass in ``[c, c')``?

    This is the control condition under which sensitivity monotonicity is
    guaranteed for ``c <= c'``.  Requires ``c <= c_prime``; the case
    ``c > c_prime`` is outside the guarantee entirely.
    """
    if witness.c > witness.c_prime:
        raise NotCoveredError(
            f"c={witness.c} > c_prime={witness.c_prime} is not covered"
        )
    between = math.fsum(witness.base.probs[witness.c - 1 : witness.c_prime - 1])
    shaved_below = math.fsum(witness.deltas[: witness.c_prime - 1])
    return between <= shaved_below


def verify_monotonicity(witness: RefinementWitness) -> MonotonicityVerdict:
    """Compare base and refined sensitivity and classify the scenario.

    The status ladder is checked in order: malformed deltas, threshold pair
    outside the guarantee, mass-control failure, then the actual
    sensitivity comparison (``holds`` or ``violated``).  Sensitivities are
    reported in every case.
    """
    se_base = sensitivity(witness.base, witness.c)
    se_refined = sensitivity(witness.refined, witness.c_prime)
    deltas_ok = all(
        0.0 <= d <= p for d, p in zip(witness.deltas, witness.base.probs)
    )
    if not deltas_ok:
        status = VerdictStatus.INVALID_DELTAS
    elif witness.c > witness.c_prime:
        status = VerdictStatus.NOT_COVERED
    elif not check_mass_control(witness):
        status = VerdictStatus.ASSUMPTION_FAILED
    elif se_refined >= se_base - MASS_TOLERANCE:
        status = VerdictStatus.HOLDS
    else:
        status = VerdictStatus.VIOLATED
    return MonotonicityVerdict(status=status, se_base=se_base, se_refined=se_refined)


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` non-negative ints summing to ``total``, in
    lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def search_counterexample(
    k: int,
    grid_step: float,
    allow_negative_deltas: bool = False,
    enforce_assumption: bool = True,
) -> Optional[RefinementWitness]:
    """Exhaustively hunt for a sensitivity drop on a rational grid.

    Base pmfs and deltas range over multiples of ``grid_step``; thresholds
    range over ``1 <= c <= k`` and ``c <= c' <= k + 1``.  Arithmetic is done
    on integer grid units, so comparisons are exact.  Returns the first
    witness (in lexicographic order over base, deltas, c, c') whose refined
    sensitivity is strictly below its base sensitivity, or ``None`` when the
    whole grid is clean.

    ``enforce_assumption`` keeps only scenarios passing the mass-control
    condition; ``allow_negative_deltas`` additionally admits negative
    shavings (mass moved down-scale).  With validation on and the condition
    enforced the search is expected to come up empty.
    """
    if isinstance(k, bool) or not isinstance(k, int):
        raise InvalidClassCountError(f"class count must be an integer, got {k!r}")
    if k < 2:
        raise InvalidClassCountError(f"class count must be >= 2, got {k}")
    grid_step = float(grid_step)
    if not 0.0 < grid_step <= 0.5:
        raise EmptyGridError(f"grid step must lie in (0, 0.5], got {grid_step!r}")
    units = round(1.0 / grid_step)
    if abs(units * grid_step - 1.0) > MASS_TOLERANCE:
        raise EmptyGridError(
            f"grid step {grid_step!r} does not evenly divide the unit interval"
        )

    for base_units in _compositions(units, k):
        delta_ranges = [
            range(b - units, b + 1) if allow_negative_deltas else range(0, b + 1)
            for b in base_units
        ]
        for delta_units in itertools.product(*delta_ranges):
            shaved = sum(delta_units)
            if shaved < 0:
                continue
            refined_units = tuple(
                b - d for b, d in zip(base_units, delta_units)
            ) + (shaved,)
            for c in range(1, k + 1):
                base_tail = sum(base_units[c - 1 :])
                for c_prime in range(c, k + 2):
                    if enforce_assumption:
                        between = sum(base_units[c - 1 : c_prime - 1])
                        covered = sum(delta_units[: c_prime - 1])
                        if between > covered:
                            continue
                    if sum(refined_units[c_prime - 1 :]) < base_tail:
                        base_pmf = ConditionalPMF(
                            probs=tuple(u * grid_step for u in base_units),
                            conditioning_outcome=Outcome.DISEASED,
                        )
                        return RefinementWitness.build(
                            base=base_pmf,
                            deltas=tuple(u * grid_step for u in delta_units),
                            c=c,
                            c_prime=c_prime,
                            validate_deltas=False,
                        )
    return None
