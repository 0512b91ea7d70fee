"""Per-process log analyses: cache flags, close-time overhead,
stonewall-relative ratios, straggler detection/classification, and
parallel-find load imbalance.

Straggler detection combines a Tukey fence (Q3 + 1.5 IQR over the stonewall
ratios) with an absolute 1.2 floor: a few percent of wear-down past the
stonewall is normal bulk-synchronous behavior and must not be flagged just
because the distribution is tight.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateInputError,
    NotAvailableError,
    SampleSizeError,
)
from .metrics import SummaryStats, summary_stats
from .types import Phase, PhaseResult, ProcessTimingTable, Submission

NOMINAL_STONEWALL_S = 300.0


class Pattern(str, Enum):
    NONE = "NONE"
    CONTIGUOUS = "CONTIGUOUS"
    CLUSTERED = "CLUSTERED"
    DISPERSED = "DISPERSED"

    def __str__(self):
        return self.value


def flag_cache_affected(
    phases: Iterable[PhaseResult], threshold_s: float = 10.0
) -> tuple[list[PhaseResult], list[str]]:
    """Mark read/stat phases whose runtime is under the caching threshold.

    Flagged phases stay in every analysis; the flag is an annotation, not an
    exclusion. Write phases are governed by the stonewall and never flagged.
    Returns the updated phase list and notes for phases lacking a runtime.
    """
    updated: list[PhaseResult] = []
    notes: list[str] = []
    for result in phases:
        if not result.phase.is_read_or_stat:
            updated.append(result)
            continue
        if result.runtime_s is None:
            notes.append(f"{result.phase}: no runtime recorded, cache flag left unset")
            updated.append(result)
            continue
        flag = result.runtime_s < threshold_s
        updated.append(dataclasses.replace(result, cache_flag=flag) if flag != result.cache_flag else result)
    return updated, notes


@dataclass
class CloseTimeReport:
    phase: Phase
    ranks: list[int]
    close_s_per_rank: list[float]
    stats: SummaryStats
    fraction_of_runtime: list[float]
    omitted_ranks: int = 0  # rows without a close value


def close_time_report(timing: ProcessTimingTable) -> CloseTimeReport:
    """Per-rank file-close durations and their share of each rank's runtime."""
    ranks: list[int] = []
    closes: list[float] = []
    fractions: list[float] = []
    omitted = 0
    for row in timing.rows:
        if row.close_s is None:
            omitted += 1
            continue
        ranks.append(row.rank)
        closes.append(row.close_s)
        runtime = row.runtime_s
        fraction = row.close_s / runtime if runtime > 0 else 0.0
        fractions.append(min(max(fraction, 0.0), 1.0))
    if not closes:
        raise NotAvailableError(f"{timing.phase}: no close times recorded")
    return CloseTimeReport(
        phase=timing.phase,
        ranks=ranks,
        close_s_per_rank=closes,
        stats=summary_stats(closes),
        fraction_of_runtime=fractions,
        omitted_ranks=omitted,
    )


@dataclass
class StonewallRatios:
    phase: Phase
    stonewall_s: float
    ranks: list[int]
    ratios: list[float]  # rank order, runtime / stonewall
    qq: list[tuple[float, float]]  # (k/n, sorted ratio), k = 1..n


def stonewall_ratios(
    timing: ProcessTimingTable, stonewall_s: float | None = None
) -> StonewallRatios:
    """Per-rank runtime/stonewall ratios plus sorted empirical quantile pairs."""
    stonewall = stonewall_s if stonewall_s is not None else timing.stonewall_s
    if stonewall is None:
        raise NotAvailableError(
            f"{timing.phase}: timing table carries no stonewall duration; "
            f"pass stonewall_s={NOMINAL_STONEWALL_S:g} explicitly to use the nominal value"
        )
    if stonewall <= 0:
        raise ValueError(f"stonewall_s must be > 0, got {stonewall}")
    if not timing.rows:
        raise SampleSizeError(f"{timing.phase}: timing table has no rows")
    ranks = [row.rank for row in timing.rows]
    ratios = [row.runtime_s / stonewall for row in timing.rows]
    n = len(ratios)
    ordered = sorted(ratios)
    qq = [((k + 1) / n, ordered[k]) for k in range(n)]
    return StonewallRatios(
        phase=timing.phase, stonewall_s=stonewall, ranks=ranks, ratios=ratios, qq=qq
    )


def detect_stragglers(
    ratios: Sequence[float],
    ranks: Sequence[int] | None = None,
    iqr_multiplier: float = 1.5,
    ratio_floor: float | None = 1.2,
) -> set[int]:
    """Ranks whose ratio exceeds Q3 + multiplier*IQR and the absolute floor.

    Both conditions must hold (pass ratio_floor=None to test the fence
    alone). Needs at least 4 observations for the quartiles to mean anything.
    """
    arr = np.asarray(ratios, dtype=float)
    if arr.ndim != 1 or not np.all(np.isfinite(arr)):
        raise ValueError("ratios must be a finite 1-d sequence")
    if arr.size < 4:
        raise SampleSizeError(f"straggler detection needs n >= 4, got {arr.size}")
    if ranks is None:
        ranks = range(arr.size)
    elif len(ranks) != arr.size:
        raise ValueError("ranks and ratios must have equal length")
    q1, q3 = np.percentile(arr, [25.0, 75.0])
    fence = q3 + iqr_multiplier * (q3 - q1)
    mask = arr > fence
    if ratio_floor is not None:
        mask &= arr >= ratio_floor
    return {int(rank) for rank, hit in zip(ranks, mask) if hit}


@dataclass
class PatternResult:
    pattern: Pattern
    adjacency_index: float
    run_count: int


def _runs(sorted_ranks: list[int]) -> list[int]:
    """Lengths of maximal runs of consecutive ranks."""
    lengths: list[int] = []
    i = 0
    while i < len(sorted_ranks):
        j = i
        while j + 1 < len(sorted_ranks) and sorted_ranks[j + 1] == sorted_ranks[j] + 1:
            j += 1
        lengths.append(j - i + 1)
        i = j + 1
    return lengths


def classify_straggler_pattern(
    stragglers: Iterable[int],
    n_ranks: int,
    min_pattern_size: int = 3,
    contiguous_fraction: float = 0.9,
    clustered_fraction: float = 0.6,
    min_run_length: int = 2,
) -> PatternResult:
    """Label the rank-space arrangement of a straggler set.

    CONTIGUOUS when one run covers nearly all stragglers, CLUSTERED when two
    or more multi-rank runs cover most of them, DISPERSED otherwise; sets
    below the minimum size are NONE.
    """
    ranks = sorted(set(int(r) for r in stragglers))
    for r in ranks:
        if r < 0 or r >= n_ranks:
            raise ValueError(f"straggler rank {r} outside [0, {n_ranks})")
    s = len(ranks)
    run_lengths = _runs(ranks)
    run_count = len(run_lengths)
    adjacent_pairs = s - run_count
    adjacency = adjacent_pairs / (s - 1) if s >= 2 else 0.0
    if s < min_pattern_size:
        return PatternResult(Pattern.NONE, adjacency, run_count)
    if max(run_lengths) >= contiguous_fraction * s:
        return PatternResult(Pattern.CONTIGUOUS, adjacency, run_count)
    multi = [length for length in run_lengths if length >= min_run_length]
    if len(multi) >= 2 and sum(multi) >= clustered_fraction * s:
        return PatternResult(Pattern.CLUSTERED, adjacency, run_count)
    return PatternResult(Pattern.DISPERSED, adjacency, run_count)


@dataclass
class StragglerReport:
    phase: Phase
    stonewall_s: float
    ranks: list[int]
    ratios: list[float]
    straggler_ranks: set[int]
    pattern: Pattern
    adjacency_index: float
    run_count: int
    qq: list[tuple[float, float]]


def straggler_report(
    timing: ProcessTimingTable,
    stonewall_s: float | None = None,
    iqr_multiplier: float = 1.5,
    ratio_floor: float | None = 1.2,
    min_pattern_size: int = 3,
    contiguous_fraction: float = 0.9,
    clustered_fraction: float = 0.6,
    min_run_length: int = 2,
) -> StragglerReport:
    """Full stonewall-relative straggler analysis for one timing table."""
    ratios = stonewall_ratios(timing, stonewall_s=stonewall_s)
    stragglers = detect_stragglers(
        ratios.ratios,
        ranks=ratios.ranks,
        iqr_multiplier=iqr_multiplier,
        ratio_floor=ratio_floor,
    )
    n_ranks = max(ratios.ranks) + 1 if ratios.ranks else 0
    result = classify_straggler_pattern(
        stragglers,
        n_ranks,
        min_pattern_size=min_pattern_size,
        contiguous_fraction=contiguous_fraction,
        clustered_fraction=clustered_fraction,
        min_run_length=min_run_length,
    )
    return StragglerReport(
        phase=timing.phase,
        stonewall_s=ratios.stonewall_s,
        ranks=ratios.ranks,
        ratios=ratios.ratios,
        straggler_ranks=stragglers,
        pattern=result.pattern,
        adjacency_index=result.adjacency_index,
        run_count=result.run_count,
        qq=ratios.qq,
    )


def gini(counts: Sequence[float]) -> float:
    """Gini coefficient in the mean-absolute-difference form.

    Computed via the sorted-rank identity, which is algebraically equal to
    sum |x_i - x_j| / (2 n^2 mean) but O(n log n).
    """
    arr = np.sort(np.asarray(counts, dtype=float))
    if arr.size == 0:
        raise ValueError("gini needs at least one count")
    if np.any(arr < 0):
        raise ValueError("gini requires nonnegative counts")
    total = float(np.sum(arr))
    if total == 0.0:
        raise DegenerateInputError("all counts are zero")
    n = arr.size
    index = np.arange(1, n + 1, dtype=float)
    return float((2.0 * np.sum(index * arr) - (n + 1) * total) / (n * total))


@dataclass
class ImbalanceReport:
    phase: Phase
    ranks: list[int]
    items_per_rank: list[int]
    max_over_median: float  # inf when the median is zero but the max is not
    gini: float
    utilization_per_rank: list[float] | None = None
    waiting_fraction_median: float | None = None
    omitted_ranks: int = 0


def pfind_imbalance(
    timing: ProcessTimingTable, active_s: Sequence[float] | None = None
) -> ImbalanceReport:
    """Item-count imbalance across find processes.

    active_s, when supplied (same order as the table rows that carry items),
    gives per-rank active traversal time; utilization is active/elapsed and
    the median waiting fraction is 1 - median utilization.
    """
    ranks: list[int] = []
    items: list[int] = []
    runtimes: list[float] = []
    omitted = 0
    for row in timing.rows:
        if row.items is None:
            omitted += 1
            continue
        ranks.append(row.rank)
        items.append(row.items)
        runtimes.append(row.runtime_s)
    if not items:
        raise NotAvailableError(f"{timing.phase}: no item counts recorded")
    if len(items) < 2:
        raise SampleSizeError(f"{timing.phase}: imbalance needs n >= 2 ranks with items")
    arr = np.asarray(items, dtype=float)
    if not np.any(arr > 0):
        raise DegenerateInputError(f"{timing.phase}: all item counts are zero")
    median = float(np.median(arr))
    max_over_median = float(np.max(arr)) / median if median > 0 else math.inf

    utilization: list[float] | None = None
    waiting_median: float | None = None
    if active_s is not None:
        if len(active_s) != len(items):
            raise ValueError("active_s must align with the rows carrying items")
        utilization = [
            min(max(a / t, 0.0), 1.0) if t > 0 else 0.0
            for a, t in zip(active_s, runtimes)
        ]
        waiting_median = 1.0 - float(np.median(np.asarray(utilization)))
    return ImbalanceReport(
        phase=timing.phase,
        ranks=ranks,
        items_per_rank=items,
        max_over_median=max_over_median,
        gini=gini(arr),
        utilization_per_rank=utilization,
        waiting_fraction_median=waiting_median,
        omitted_ranks=omitted,
    )


@dataclass
class StonewallViolation:
    submission_id: str
    phase: Phase
    runtime_s: float


@dataclass
class RuntimeDistribution:
    per_phase: dict[Phase, SummaryStats]
    violations: list[StonewallViolation] = field(default_factory=list)


def runtime_distribution(
    submissions: Sequence[Submission],
    stonewall_nominal_s: float = NOMINAL_STONEWALL_S,
    tolerance_s: float = 1.0,
) -> RuntimeDistribution:
    """Per-phase runtime summaries plus stonewall-compliance violations.

    A write phase finishing more than tolerance_s below the nominal
    stonewall is listed as a violation (it can never legitimately happen,
    since writes must run at least the stonewall duration).
    """
    runtimes: dict[Phase, list[float]] = {}
    violations: list[StonewallViolation] = []
    for sub in submissions:
        for phase, result in sub.phases.items():
            if result.runtime_s is None:
                continue
            runtimes.setdefault(phase, []).append(result.runtime_s)
            if phase.is_write and result.runtime_s < stonewall_nominal_s - tolerance_s:
                violations.append(
                    StonewallViolation(
                        submission_id=sub.meta.submission_id,
                        phase=phase,
                        runtime_s=result.runtime_s,
                    )
                )
    per_phase = {
        phase: summary_stats(values)
        for phase, values in sorted(runtimes.items(), key=lambda kv: kv[0].value)
    }
    return RuntimeDistribution(per_phase=per_phase, violations=violations)
