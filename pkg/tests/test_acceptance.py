"""Acceptance gate: one test per shipping criterion, one printed line each.

Run with ``pytest tests/test_acceptance.py -v`` (add ``-s`` to see the lines
immediately; they are also echoed in the terminal summary).  Criteria 4 and 5
assert a claimed ordinal behavior of the Monte Carlo sweep that the pinned
design does not actually produce; they are kept faithful to the stated
thresholds and are expected to fail.  See the README for the analysis.
"""

import hashlib
import subprocess
import sys
import time

import numpy as np
import pytest
from scipy.stats import spearmanr

from scalesense import (
    CohortSpec,
    ConditionalPMF,
    DEFAULT_CLASS_LADDER,
    Outcome,
    RefinementWitness,
    ThresholdCriterion,
    VerdictStatus,
    check_mass_control,
    run_partition_sweep,
    search_counterexample,
    select_threshold,
    sensitivity,
    specificity,
    verify_monotonicity,
)
from conftest import ACCEPTANCE_RESULTS


def record(number: int, name: str, ok: bool, detail: str) -> str:
    line = f"criterion {number} [{name}]: {'PASS' if ok else 'FAIL'} {detail}"
    print(line, flush=True)
    ACCEPTANCE_RESULTS.append(line)
    return line


def random_pmf_pair(rng, k: int, grid: int = 0):
    """One diseased/healthy pmf pair; grid > 0 gives tie-prone coarse masses."""
    if grid:
        p1 = rng.multinomial(grid, np.ones(k) / k) / grid
        p0 = rng.multinomial(grid, np.ones(k) / k) / grid
    else:
        p1 = rng.exponential(1.0, k)
        p1 = p1 / p1.sum()
        p0 = rng.exponential(1.0, k)
        p0 = p0 / p0.sum()
    return (
        ConditionalPMF(tuple(p1), Outcome.DISEASED),
        ConditionalPMF(tuple(p0), Outcome.HEALTHY),
    )


def test_criterion_1_monotonicity_property_suite():
    rng = np.random.default_rng(20250815)
    start = time.perf_counter()
    generated = 10_000
    passed_filter = 0
    violated = 0
    for _ in range(generated):
        k = int(rng.integers(2, 11))
        gaps = rng.exponential(1.0, k)
        base = ConditionalPMF(tuple(gaps / gaps.sum()), Outcome.DISEASED)
        deltas = tuple(rng.uniform(0.0, np.asarray(base.probs)))
        c = int(rng.integers(1, k + 1))
        c_prime = int(rng.integers(c, k + 2))
        witness = RefinementWitness.build(base, deltas, c, c_prime)
        if not check_mass_control(witness):
            continue
        passed_filter += 1
        if verify_monotonicity(witness).status is VerdictStatus.VIOLATED:
            violated += 1
    elapsed = time.perf_counter() - start
    ok = violated == 0 and elapsed < 10.0
    line = record(
        1,
        "monotonicity property suite",
        ok,
        f"{generated} witnesses, {passed_filter} passed the mass-control "
        f"filter, {violated} violated, {elapsed:.1f}s (budget 10s)",
    )
    assert ok, line


def test_criterion_2_uncontrolled_search_finds_a_drop():
    start = time.perf_counter()
    witness = search_counterexample(
        k=2, grid_step=0.05, allow_negative_deltas=True, enforce_assumption=False
    )
    elapsed = time.perf_counter() - start
    found = witness is not None
    if found:
        verdict = verify_monotonicity(witness)
        drop = verdict.se_refined < verdict.se_base
        detail = (
            f"witness base={witness.base.probs} deltas={witness.deltas} "
            f"c={witness.c} c'={witness.c_prime}, se {verdict.se_base:g} -> "
            f"{verdict.se_refined:g}, {elapsed:.2f}s (budget 1s)"
        )
    else:
        drop = False
        detail = f"no witness found, {elapsed:.2f}s"
    ok = found and drop and elapsed < 1.0
    line = record(2, "uncontrolled search finds a sensitivity drop", ok, detail)
    assert ok, line


def test_criterion_3_threshold_selection_matches_exhaustive_oracle():
    rng = np.random.default_rng(31415)
    mismatches = 0
    pairs = 0
    for i in range(1000):
        k = int(rng.integers(2, 13))
        grid = 8 if i % 5 == 0 else (10 if i % 5 == 1 else 0)
        pmf1, pmf0 = random_pmf_pair(rng, k, grid)
        pairs += 1
        for criterion in ThresholdCriterion:
            summary = select_threshold(pmf1, pmf0, criterion)
            best_c = None
            best_value = None
            for c in range(1, k + 1):
                se = sensitivity(pmf1, c)
                sp = specificity(pmf0, c)
                if criterion is ThresholdCriterion.YOUDEN_J:
                    value = se + sp - 1.0
                    better = best_value is None or value > best_value
                elif criterion is ThresholdCriterion.CLOSEST_TO_TOP_LEFT:
                    dse = 1.0 - se
                    dsp = 1.0 - sp
                    value = dse * dse + dsp * dsp
                    better = best_value is None or value < best_value
                else:
                    value = se * sp
                    better = best_value is None or value > best_value
                if better:
                    best_c, best_value = c, value
            if summary.c != best_c:
                mismatches += 1
    ok = mismatches == 0
    line = record(
        3,
        "threshold selection equals exhaustive argmax",
        ok,
        f"{pairs} pmf pairs x {len(ThresholdCriterion)} criteria, "
        f"{mismatches} index mismatches",
    )
    assert ok, line


def test_criterion_4_sweep_reproduces_ordinal_gain():
    spec = CohortSpec(
        n=2000, prevalence=0.3, mu_healthy=0.0, mu_diseased=1.0, sigma=1.0, seed=42
    )
    ks = (2, 3, 4, 5, 6, 8, 10, 15, 50, 100)
    start = time.perf_counter()
    report = run_partition_sweep(spec, k_values=ks, reps=200)
    elapsed = time.perf_counter() - start
    mean_se = {r.k: r.mean_se for r in report.records}
    rho = float(spearmanr(ks, [mean_se[k] for k in ks]).statistic)
    gain = mean_se[100] - mean_se[2]
    ok = rho >= 0.9 and gain > 0.02 and elapsed < 60.0
    line = record(
        4,
        "sweep mean sensitivity rises with class count",
        ok,
        f"spearman={rho:+.3f} (needs >= 0.9), mean_se(100)-mean_se(2)="
        f"{gain:+.4f} (needs > 0.02), {elapsed:.1f}s (budget 60s)",
    )
    assert ok, line


def test_criterion_5_continuous_ceiling():
    n = 500
    spec = CohortSpec(
        n=n, prevalence=0.3, mu_healthy=0.0, mu_diseased=1.0, sigma=1.0, seed=42
    )
    ks = tuple(k for k in DEFAULT_CLASS_LADDER if k < n) + (n,)
    report = run_partition_sweep(spec, k_values=ks, reps=200)
    mean_se = {r.k: r.mean_se for r in report.records}
    ceiling = mean_se[n]
    worst_k = max((k for k in ks if k != n), key=lambda k: mean_se[k])
    excess = mean_se[worst_k] - ceiling
    ok = all(ceiling >= mean_se[k] - 0.01 for k in ks)
    line = record(
        5,
        "k=n sweep is a ceiling within 0.01",
        ok,
        f"mean_se(k=n={n})={ceiling:.4f}, worst k={worst_k} exceeds it by "
        f"{excess:+.4f} (tolerance 0.01)",
    )
    assert ok, line


def test_criterion_6_cli_sweep_is_byte_deterministic(tmp_path):
    digests = {}
    for fmt, suffix in (("flat-csv", "csv"), ("structured-json", "json")):
        hashes = []
        for run_idx in (1, 2):
            out = tmp_path / f"sweep_{run_idx}.{suffix}"
            result = subprocess.run(
                [
                    sys.executable, "-m", "scalesense",
                    "sweep", "--seed", "2024", "--n", "400",
                    "--prevalence", "0.3", "--mu0", "0", "--mu1", "1",
                    "--sigma", "1", "--k-list", "2,3,4,5", "--reps", "20",
                    "--format", fmt, "--out", str(out),
                ],
                capture_output=True,
                text=True,
            )
            assert result.returncode == 0, result.stderr
            hashes.append(hashlib.sha256(out.read_bytes()).hexdigest())
        digests[fmt] = hashes
    ok = all(pair[0] == pair[1] for pair in digests.values())
    shown = ", ".join(f"{fmt} {pair[0][:12]}" for fmt, pair in digests.items())
    line = record(
        6,
        "repeated sweep runs are byte-identical",
        ok,
        f"sha256 prefixes: {shown}",
    )
    assert ok, line


def test_criterion_7_boundary_identities_and_monotonicity_are_exact():
    rng = np.random.default_rng(2718281)
    bad = 0
    for _ in range(1000):
        k = int(rng.integers(1, 25))
        gaps = rng.exponential(1.0, k)
        pmf = ConditionalPMF(tuple(gaps / gaps.sum()), Outcome.DISEASED)
        se = [sensitivity(pmf, c) for c in range(1, k + 2)]
        sp = [specificity(pmf, c) for c in range(1, k + 2)]
        exact = (
            se[0] == 1.0
            and se[-1] == 0.0
            and sp[0] == 0.0
            and sp[-1] == 1.0
            and all(a >= b for a, b in zip(se, se[1:]))
            and all(a <= b for a, b in zip(sp, sp[1:]))
        )
        if not exact:
            bad += 1
    ok = bad == 0
    line = record(
        7,
        "boundary identities and monotonicity exact",
        ok,
        f"1000 random pmfs, {bad} with an inexact identity or ordering",
    )
    assert ok, line
