"""Core domain records: benchmark phases, submission metadata, timing tables.

These are plain dataclasses with no behavior beyond construction-time
validation; parsing lives in `ingest`, math in `metrics`/`stats`/`loginsight`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import ValidationError


class Phase(str, Enum):
    """The twelve IO500 benchmark phases."""

    IOR_EASY_WRITE = "ior-easy-write"
    IOR_EASY_READ = "ior-easy-read"
    IOR_HARD_WRITE = "ior-hard-write"
    IOR_HARD_READ = "ior-hard-read"
    MDTEST_EASY_WRITE = "mdtest-easy-write"
    MDTEST_EASY_STAT = "mdtest-easy-stat"
    MDTEST_EASY_DELETE = "mdtest-easy-delete"
    MDTEST_HARD_WRITE = "mdtest-hard-write"
    MDTEST_HARD_STAT = "mdtest-hard-stat"
    MDTEST_HARD_READ = "mdtest-hard-read"
    MDTEST_HARD_DELETE = "mdtest-hard-delete"
    FIND = "find"

    def __str__(self):
        return self.value

    @property
    def unit(self) -> str:
        """IOR phases report GiB/s, metadata and find phases kIOPS."""
        return "GiB/s" if self.value.startswith("ior-") else "kIOPS"

    @property
    def is_write(self) -> bool:
        return self.value.endswith("-write")

    @property
    def is_read_or_stat(self) -> bool:
        return self.value.endswith(("-read", "-stat"))


# Phases entering the bandwidth composite (4th-root geometric mean).
BW_SCORE_PHASES = (
    Phase.IOR_EASY_WRITE,
    Phase.IOR_EASY_READ,
    Phase.IOR_HARD_WRITE,
    Phase.IOR_HARD_READ,
)

# Phases entering the metadata composite (5th-root geometric mean).
# Delete and read metadata phases are recorded but do not score.
MD_SCORE_PHASES = (
    Phase.MDTEST_EASY_WRITE,
    Phase.MDTEST_EASY_STAT,
    Phase.MDTEST_HARD_WRITE,
    Phase.MDTEST_HARD_STAT,
    Phase.FIND,
)


class Filesystem(str, Enum):
    LUSTRE = "lustre"
    GPFS = "gpfs-spectrumscale"
    DAOS = "daos"
    WEKAFS = "wekafs"
    BEEGFS = "beegfs"
    OTHER = "other"

    def __str__(self):
        return self.value


LIST_LABELS = ("ISC21", "SC21", "ISC22", "SC22", "other")


@dataclass
class SubmissionMeta:
    submission_id: str
    list_label: str = "other"
    institution: str | None = None
    filesystem_raw: str = ""
    filesystem_norm: Filesystem = Filesystem.OTHER
    interconnect_raw: str = ""
    interconnect_gbps: float | None = None
    nic_count_reported: int | None = None
    client_nodes: int = 1
    procs_per_node: int | None = None
    total_procs: int | None = None

    def __post_init__(self):
        if self.client_nodes < 1:
            raise ValidationError(f"client_nodes must be >= 1, got {self.client_nodes}")
        if self.total_procs is not None and self.total_procs < self.client_nodes:
            raise ValidationError(
                f"total_procs ({self.total_procs}) < client_nodes ({self.client_nodes})"
            )
        if self.interconnect_gbps is not None and self.interconnect_gbps <= 0:
            raise ValidationError("interconnect_gbps must be > 0 when set")
        if self.list_label not in LIST_LABELS:
            raise ValidationError(f"unknown list label {self.list_label!r}")


@dataclass
class PhaseResult:
    phase: Phase
    value: float
    unit: str
    runtime_s: float | None = None
    cache_flag: bool = False

    def __post_init__(self):
        if self.value < 0:
            raise ValidationError(f"{self.phase}: value must be >= 0, got {self.value}")
        if self.unit != self.phase.unit:
            raise ValidationError(
                f"{self.phase}: unit {self.unit!r} does not match expected {self.phase.unit!r}"
            )
        if self.runtime_s is not None and self.runtime_s < 0:
            raise ValidationError(f"{self.phase}: runtime_s must be >= 0")


@dataclass
class TimingRow:
    rank: int
    start_s: float
    end_s: float
    close_s: float | None = None
    items: int | None = None

    def __post_init__(self):
        if self.rank < 0:
            raise ValidationError(f"rank must be >= 0, got {self.rank}")
        if self.end_s < self.start_s:
            raise ValidationError(f"rank {self.rank}: end {self.end_s} < start {self.start_s}")
        if self.close_s is not None and self.close_s < 0:
            raise ValidationError(f"rank {self.rank}: close_s must be >= 0")
        if self.items is not None and self.items < 0:
            raise ValidationError(f"rank {self.rank}: items must be >= 0")

    @property
    def runtime_s(self) -> float:
        return self.end_s - self.start_s


@dataclass
class ProcessTimingTable:
    phase: Phase
    rows: list[TimingRow]
    stonewall_s: float | None = None

    def __post_init__(self):
        if self.stonewall_s is not None and self.stonewall_s <= 0:
            raise ValidationError(f"stonewall_s must be > 0, got {self.stonewall_s}")
        ranks = [r.rank for r in self.rows]
        if len(set(ranks)) != len(ranks):
            dupes = sorted({r for r in ranks if ranks.count(r) > 1})
            raise ValidationError(f"duplicate ranks: {dupes}")
        self.rows = sorted(self.rows, key=lambda r: r.rank)

    @property
    def n_ranks(self) -> int:
        return len(self.rows)


@dataclass
class Submission:
    meta: SubmissionMeta
    phases: dict[Phase, PhaseResult] = field(default_factory=dict)
    reported_score_bw: float | None = None
    reported_score_md: float | None = None
    reported_score_overall: float | None = None
    timing: dict[Phase, ProcessTimingTable] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self):
        for phase, result in self.phases.items():
            if result.phase != phase:
                raise ValidationError(f"phase map key {phase} holds result for {result.phase}")

    def phase_value(self, phase: Phase) -> float | None:
        result = self.phases.get(phase)
        return None if result is None else result.value
