"""Deterministic synthetic corpora: submissions with known ground truth.

All randomness flows from one 64-bit seed through counter-based Philox
streams (one derived key per submission), so a corpus is bit-identical
across runs and machines. Generated packages use exactly the on-disk
formats `ingest` reads, which lets end-to-end tests run without hand-built
fixtures.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .ingest import DEFAULT_COLUMN_MAP, META_FILENAME, SUMMARY_FILENAME, normalize_metadata
from .loginsight import Pattern
from .metrics import recompute_scores
from .types import (
    Filesystem,
    Phase,
    PhaseResult,
    ProcessTimingTable,
    Submission,
    SubmissionMeta,
    TimingRow,
)

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_key(seed: int, index: int) -> int:
    """Mix a corpus seed with an item index into an independent stream key."""
    return _splitmix64((seed & _MASK64) ^ _splitmix64(index & _MASK64))


def _rng(key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=key))


# --- straggler placement models -----------------------------------------------


@dataclass
class NoStragglers:
    slow_factor: float = 1.0


@dataclass
class ContiguousStragglers:
    start: int | None = None  # None: random placement
    length: int = 5
    slow_factor: float = 3.0

    def __post_init__(self):
        if self.slow_factor <= 1.0:
            raise ConfigError("slow_factor must be > 1")
        if self.length < 1:
            raise ConfigError("length must be >= 1")


@dataclass
class ClusteredStragglers:
    n_clusters: int = 3
    cluster_size: int = 3
    slow_factor: float = 3.0

    def __post_init__(self):
        if self.slow_factor <= 1.0:
            raise ConfigError("slow_factor must be > 1")
        if self.n_clusters < 2 or self.cluster_size < 2:
            raise ConfigError("clustered model needs >= 2 clusters of size >= 2")


@dataclass
class DispersedStragglers:
    count: int = 5
    slow_factor: float = 3.0

    def __post_init__(self):
        if self.slow_factor <= 1.0:
            raise ConfigError("slow_factor must be > 1")
        if self.count < 1:
            raise ConfigError("count must be >= 1")


StragglerModel = NoStragglers | ContiguousStragglers | ClusteredStragglers | DispersedStragglers

_MODEL_PATTERN = {
    NoStragglers: Pattern.NONE,
    ContiguousStragglers: Pattern.CONTIGUOUS,
    ClusteredStragglers: Pattern.CLUSTERED,
    DispersedStragglers: Pattern.DISPERSED,
}


def model_pattern(model: StragglerModel) -> Pattern:
    return _MODEL_PATTERN[type(model)]


def _spaced_starts(
    rng: np.random.Generator, n_ranks: int, n_blocks: int, block_len: int
) -> list[int]:
    """Random starts for n_blocks runs of block_len with >= 1 rank between runs."""
    slack = n_ranks - n_blocks * block_len - (n_blocks - 1)
    if slack < 0:
        raise ConfigError(
            f"straggler model needs {n_blocks * block_len + n_blocks - 1} ranks, "
            f"only {n_ranks} available"
        )
    offsets = np.sort(rng.integers(0, slack + 1, size=n_blocks))
    return [int(offsets[i]) + i * (block_len + 1) for i in range(n_blocks)]


def _place_stragglers(
    model: StragglerModel, n_ranks: int, rng: np.random.Generator
) -> frozenset[int]:
    if isinstance(model, NoStragglers):
        return frozenset()
    if isinstance(model, ContiguousStragglers):
        if model.length >= n_ranks:
            raise ConfigError(f"{model.length} stragglers >= {n_ranks} ranks")
        start = model.start
        if start is None:
            start = int(rng.integers(0, n_ranks - model.length + 1))
        if start < 0 or start + model.length > n_ranks:
            raise ConfigError(f"contiguous run [{start}, {start + model.length}) out of range")
        return frozenset(range(start, start + model.length))
    if isinstance(model, ClusteredStragglers):
        total = model.n_clusters * model.cluster_size
        if total >= n_ranks:
            raise ConfigError(f"{total} stragglers >= {n_ranks} ranks")
        starts = _spaced_starts(rng, n_ranks, model.n_clusters, model.cluster_size)
        out: set[int] = set()
        for s in starts:
            out.update(range(s, s + model.cluster_size))
        return frozenset(out)
    if isinstance(model, DispersedStragglers):
        if model.count >= n_ranks:
            raise ConfigError(f"{model.count} stragglers >= {n_ranks} ranks")
        starts = _spaced_starts(rng, n_ranks, model.count, 1)
        return frozenset(starts)
    raise ConfigError(f"unknown straggler model {model!r}")


# --- close-time and item-count models -------------------------------------------


@dataclass
class CloseModel:
    median_s: float = 1.0
    sigma: float = 0.8


DEFAULT_CLOSE_MODELS: dict[Filesystem, CloseModel] = {
    Filesystem.LUSTRE: CloseModel(5.0, 1.0),
    Filesystem.GPFS: CloseModel(2.0, 0.8),
    Filesystem.DAOS: CloseModel(0.01, 0.5),
    Filesystem.WEKAFS: CloseModel(1.0, 0.8),
    Filesystem.BEEGFS: CloseModel(2.0, 0.8),
    Filesystem.OTHER: CloseModel(1.0, 0.8),
}


def _r6(x: float) -> float:
    # All written numbers are quantized to 6 decimals so text round trips exactly.
    return round(float(x), 6)


def gen_timing(
    phase: Phase,
    n_ranks: int,
    stonewall_s: float,
    straggler: StragglerModel | None = None,
    close: CloseModel | None = None,
    seed: int = 0,
    items_skew: float | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[ProcessTimingTable, frozenset[int]]:
    """Generate one per-process timing table plus its true straggler set.

    Non-stragglers finish in a tight wear-down band just past the stonewall;
    stragglers run slow_factor times longer (within +-10%). Find-phase
    tables get Zipf-skewed item counts instead of a stonewall.
    """
    if n_ranks < 4:
        raise ConfigError(f"n_ranks must be >= 4, got {n_ranks}")
    if stonewall_s <= 0:
        raise ConfigError(f"stonewall_s must be > 0, got {stonewall_s}")
    if rng is None:
        rng = _rng(derive_key(seed, 0))
    model = straggler if straggler is not None else NoStragglers()
    true_set = _place_stragglers(model, n_ranks, rng)

    starts = rng.uniform(0.0, 1.0, size=n_ranks)
    if phase is Phase.FIND:
        skew = items_skew if items_skew is not None else 1.3
        positions = rng.permutation(n_ranks)
        weights = (positions.astype(float) + 1.0) ** (-skew)
        weights /= float(np.median(weights))
        items = np.maximum(1, np.round(100_000.0 * weights)).astype(int)
        rate = rng.uniform(2000.0, 4000.0)  # items per second, shared scan rate
        runtimes = items / rate
        rows = [
            TimingRow(
                rank=i,
                start_s=_r6(starts[i]),
                end_s=_r6(starts[i] + runtimes[i]),
                items=int(items[i]),
            )
            for i in range(n_ranks)
        ]
        return ProcessTimingTable(phase=phase, rows=rows, stonewall_s=None), frozenset()

    # Band floor 1.001 keeps runtimes above the stonewall even after the
    # 6-decimal quantization of start/end.
    factors = rng.uniform(1.001, 1.05, size=n_ranks)
    slow = rng.uniform(0.9, 1.1, size=n_ranks)
    runtimes = np.empty(n_ranks)
    for i in range(n_ranks):
        if i in true_set:
            runtimes[i] = stonewall_s * model.slow_factor * slow[i]
        else:
            runtimes[i] = stonewall_s * factors[i]
    closes: np.ndarray | None = None
    if close is not None:
        closes = rng.lognormal(mean=np.log(close.median_s), sigma=close.sigma, size=n_ranks)
        closes = np.minimum(closes, runtimes)
    rows = []
    for i in range(n_ranks):
        start = _r6(starts[i])
        end = _r6(starts[i] + runtimes[i])
        rows.append(
            TimingRow(
                rank=i,
                start_s=start,
                end_s=end,
                close_s=_r6(closes[i]) if closes is not None else None,
            )
        )
    table = ProcessTimingTable(phase=phase, rows=rows, stonewall_s=float(stonewall_s))
    return table, true_set


# --- corpus generation ------------------------------------------------------------

# Per-node phase medians, roughly shaped like public submissions.
DEFAULT_PHASE_MEDIAN: dict[Phase, float] = {
    Phase.IOR_EASY_WRITE: 12.0,
    Phase.IOR_EASY_READ: 14.0,
    Phase.IOR_HARD_WRITE: 1.2,
    Phase.IOR_HARD_READ: 2.5,
    Phase.MDTEST_EASY_WRITE: 80.0,
    Phase.MDTEST_EASY_STAT: 200.0,
    Phase.MDTEST_EASY_DELETE: 60.0,
    Phase.MDTEST_HARD_WRITE: 30.0,
    Phase.MDTEST_HARD_STAT: 90.0,
    Phase.MDTEST_HARD_READ: 45.0,
    Phase.MDTEST_HARD_DELETE: 25.0,
    Phase.FIND: 150.0,
}

DEFAULT_FILESYSTEM_MIX: dict[Filesystem, float] = {
    Filesystem.LUSTRE: 27.0,
    Filesystem.GPFS: 12.0,
    Filesystem.DAOS: 10.0,
    Filesystem.WEKAFS: 7.0,
    Filesystem.BEEGFS: 3.0,
    Filesystem.OTHER: 2.0,
}

_FS_SPELLINGS: dict[Filesystem, tuple[str, ...]] = {
    Filesystem.LUSTRE: ("Lustre", "lustre", "Lustre 2.12"),
    Filesystem.GPFS: ("GPFS", "Spectrum Scale", "IBM Spectrum Scale"),
    Filesystem.DAOS: ("DAOS", "daos"),
    Filesystem.WEKAFS: ("WekaFS", "WekaIO"),
    Filesystem.BEEGFS: ("BeeGFS",),
    Filesystem.OTHER: ("CustomFS", "homegrown"),
}

_INTERCONNECTS: tuple[tuple[str, float], ...] = (
    ("IB HDR", 22.0),
    ("IB EDR", 18.0),
    ("Omni-Path", 11.0),
    ("100 Gb/s Ethernet", 5.0),
    ("unknown-net", 5.0),
)

_LIST_LABELS = ("ISC21", "SC21", "ISC22", "SC22")

TIMING_PHASES = (Phase.IOR_EASY_WRITE, Phase.IOR_HARD_WRITE, Phase.FIND)


@dataclass
class SynthConfig:
    seed: int = 0
    n_submissions: int = 61
    node_range: tuple[int, int] = (2, 32)
    procs_per_node: int = 8
    filesystem_mix: dict[Filesystem, float] = field(
        default_factory=lambda: dict(DEFAULT_FILESYSTEM_MIX)
    )
    phase_median: dict[Phase, float] = field(
        default_factory=lambda: dict(DEFAULT_PHASE_MEDIAN)
    )
    system_sigma: float = 1.0  # shared log-normal spread across a submission
    phase_sigma: float = 0.5  # independent per-phase log-normal spread
    hard_sigma_factor: float = 2.2  # extra spread for the *-hard phases
    # Network speed multiplier exponents, (gbps/100)^e per phase family: large
    # sequential I/O tracks the interconnect most directly, metadata barely.
    ior_easy_net_exp: float = 0.8
    ior_hard_net_exp: float = 0.3
    md_net_exp: float = 0.1
    straggler: StragglerModel = field(default_factory=NoStragglers)
    close_models: dict[Filesystem, CloseModel] = field(
        default_factory=lambda: dict(DEFAULT_CLOSE_MODELS)
    )
    pfind_skew: float = 1.3
    stonewall_s: float = 300.0
    cache_affected_fraction: float = 0.1
    generate_timing: bool = True

    def __post_init__(self):
        if self.n_submissions < 1:
            raise ConfigError("n_submissions must be >= 1")
        lo, hi = self.node_range
        if lo < 1 or hi < lo:
            raise ConfigError(f"invalid node_range {self.node_range}")
        if self.procs_per_node < 1:
            raise ConfigError("procs_per_node must be >= 1")
        weights = list(self.filesystem_mix.values())
        if any(w < 0 for w in weights) or sum(weights) <= 0:
            raise ConfigError("filesystem_mix weights must be nonnegative, not all zero")
        if self.system_sigma < 0 or self.phase_sigma < 0:
            raise ConfigError("sigmas must be >= 0")
        if not 0.0 <= self.cache_affected_fraction <= 1.0:
            raise ConfigError("cache_affected_fraction must be in [0, 1]")
        if self.pfind_skew <= 0:
            raise ConfigError("pfind_skew must be > 0")
        if self.stonewall_s <= 0:
            raise ConfigError("stonewall_s must be > 0")


def straggler_model_from_dict(spec: dict) -> StragglerModel:
    kind = spec.get("kind", "none")
    params = {k: v for k, v in spec.items() if k != "kind"}
    try:
        if kind == "none":
            return NoStragglers()
        if kind == "contiguous":
            return ContiguousStragglers(**params)
        if kind == "clustered":
            return ClusteredStragglers(**params)
        if kind == "dispersed":
            return DispersedStragglers(**params)
    except TypeError as exc:
        raise ConfigError(f"bad straggler model parameters: {exc}") from exc
    raise ConfigError(f"unknown straggler model kind {kind!r}")


def synth_config_from_dict(spec: dict) -> SynthConfig:
    """Build a SynthConfig from a JSON-shaped dict (unknown keys rejected)."""
    spec = dict(spec)
    kwargs: dict = {}
    if "straggler" in spec:
        kwargs["straggler"] = straggler_model_from_dict(spec.pop("straggler"))
    if "filesystem_mix" in spec:
        try:
            kwargs["filesystem_mix"] = {
                Filesystem(name): float(w) for name, w in spec.pop("filesystem_mix").items()
            }
        except ValueError as exc:
            raise ConfigError(f"bad filesystem_mix: {exc}") from exc
    if "phase_median" in spec:
        try:
            medians = dict(DEFAULT_PHASE_MEDIAN)
            medians.update(
                {Phase(name): float(v) for name, v in spec.pop("phase_median").items()}
            )
            kwargs["phase_median"] = medians
        except ValueError as exc:
            raise ConfigError(f"bad phase_median: {exc}") from exc
    if "close_models" in spec:
        try:
            models = dict(DEFAULT_CLOSE_MODELS)
            models.update(
                {
                    Filesystem(name): CloseModel(**params)
                    for name, params in spec.pop("close_models").items()
                }
            )
            kwargs["close_models"] = models
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"bad close_models: {exc}") from exc
    if "node_range" in spec:
        lo, hi = spec.pop("node_range")
        kwargs["node_range"] = (int(lo), int(hi))
    simple = (
        "seed",
        "n_submissions",
        "procs_per_node",
        "system_sigma",
        "phase_sigma",
        "hard_sigma_factor",
        "ior_easy_net_exp",
        "ior_hard_net_exp",
        "md_net_exp",
        "pfind_skew",
        "stonewall_s",
        "cache_affected_fraction",
        "generate_timing",
    )
    for key in simple:
        if key in spec:
            kwargs[key] = spec.pop(key)
    if spec:
        raise ConfigError(f"unknown synth config keys: {sorted(spec)}")
    return SynthConfig(**kwargs)


@dataclass
class GeneratedSubmission:
    submission: Submission
    true_stragglers: dict[Phase, frozenset[int]]
    true_pattern: dict[Phase, Pattern]


def gen_corpus(config: SynthConfig) -> list[GeneratedSubmission]:
    """Generate a corpus; reported scores equal recomputed ones by construction."""
    fs_items = sorted(config.filesystem_mix.items(), key=lambda kv: kv[0].value)
    fs_choices = [fs for fs, _ in fs_items]
    fs_weights = np.asarray([w for _, w in fs_items], dtype=float)
    fs_weights /= fs_weights.sum()
    ic_names = [name for name, _ in _INTERCONNECTS]
    ic_weights = np.asarray([w for _, w in _INTERCONNECTS], dtype=float)
    ic_weights /= ic_weights.sum()

    out: list[GeneratedSubmission] = []
    for i in range(config.n_submissions):
        rng = _rng(derive_key(config.seed, i))
        nodes = int(rng.integers(config.node_range[0], config.node_range[1] + 1))
        ppn = config.procs_per_node
        fs = fs_choices[int(rng.choice(len(fs_choices), p=fs_weights))]
        fs_raw = _FS_SPELLINGS[fs][int(rng.integers(0, len(_FS_SPELLINGS[fs])))]
        ic_raw = ic_names[int(rng.choice(len(ic_names), p=ic_weights))]
        meta = normalize_metadata(
            {
                "submission_id": f"synth-{i:04d}",
                "list_label": _LIST_LABELS[int(rng.integers(0, len(_LIST_LABELS)))],
                "institution": f"site-{int(rng.integers(0, max(2, config.n_submissions // 4)))}",
                "filesystem": fs_raw,
                "interconnect": ic_raw,
                "client_nodes": nodes,
                "procs_per_node": ppn,
                "total_procs": nodes * ppn,
            }
        )

        quality = float(np.exp(config.system_sigma * rng.standard_normal()))
        values: dict[Phase, float] = {}
        for phase in Phase:
            sigma = config.phase_sigma
            if "hard" in phase.value:
                sigma *= config.hard_sigma_factor
            noise = float(np.exp(sigma * rng.standard_normal()))
            net = 1.0
            if meta.interconnect_gbps is not None:
                if phase.value.startswith("ior-easy"):
                    exp = config.ior_easy_net_exp
                elif phase.value.startswith("ior-hard"):
                    exp = config.ior_hard_net_exp
                else:
                    exp = config.md_net_exp
                net = (meta.interconnect_gbps / 100.0) ** exp
            values[phase] = _r6(config.phase_median[phase] * nodes * quality * noise * net)

        timing: dict[Phase, ProcessTimingTable] = {}
        true_stragglers: dict[Phase, frozenset[int]] = {}
        true_pattern: dict[Phase, Pattern] = {}
        if config.generate_timing:
            n_ranks = nodes * ppn
            for phase in TIMING_PHASES:
                model: StragglerModel
                if phase is Phase.IOR_HARD_WRITE:
                    model = config.straggler
                else:
                    model = NoStragglers()
                close = config.close_models.get(meta.filesystem_norm) if phase is not Phase.FIND else None
                table, truth = gen_timing(
                    phase,
                    n_ranks,
                    config.stonewall_s,
                    straggler=model,
                    close=close,
                    items_skew=config.pfind_skew,
                    rng=rng,
                )
                timing[phase] = table
                true_stragglers[phase] = truth
                true_pattern[phase] = model_pattern(model)

        phases: dict[Phase, PhaseResult] = {}
        for phase in Phase:
            if phase in timing:
                runtime = max(row.runtime_s for row in timing[phase].rows)
            elif phase.is_write:
                runtime = rng.uniform(config.stonewall_s + 1.0, config.stonewall_s + 200.0)
            elif phase.is_read_or_stat:
                if rng.random() < config.cache_affected_fraction:
                    runtime = rng.uniform(3.0, 9.5)
                else:
                    runtime = rng.uniform(15.0, 400.0)
            else:
                runtime = rng.uniform(10.0, 200.0)
            phases[phase] = PhaseResult(
                phase=phase, value=values[phase], unit=phase.unit, runtime_s=_r6(runtime)
            )

        sub = Submission(meta=meta, phases=phases, timing=timing)
        scores = recompute_scores(sub)
        sub.reported_score_bw = scores.score_bw
        sub.reported_score_md = scores.score_md
        sub.reported_score_overall = scores.score_overall
        out.append(
            GeneratedSubmission(
                submission=sub,
                true_stragglers=true_stragglers,
                true_pattern=true_pattern,
            )
        )
    return out


# --- on-disk corpus ---------------------------------------------------------------


def _summary_text(sub: Submission) -> str:
    lines = []
    for phase in Phase:
        result = sub.phases.get(phase)
        if result is None:
            continue
        lines.append(
            f"[RESULT] {phase.value} {result.value:.6f} {result.unit} "
            f": time {result.runtime_s:.6f} seconds"
        )
    lines.append(
        f"[SCORE ] Bandwidth {sub.reported_score_bw!r} GiB/s "
        f": IOPS {sub.reported_score_md!r} kiops "
        f": TOTAL {sub.reported_score_overall!r}"
    )
    return "\n".join(lines) + "\n"


def _meta_text(meta: SubmissionMeta) -> str:
    fields = [
        ("submission_id", meta.submission_id),
        ("list_label", meta.list_label),
        ("institution", meta.institution),
        ("filesystem", meta.filesystem_raw),
        ("interconnect", meta.interconnect_raw),
        ("client_nodes", meta.client_nodes),
        ("procs_per_node", meta.procs_per_node),
        ("total_procs", meta.total_procs),
    ]
    return "\n".join(f"{key} = {value}" for key, value in fields if value is not None) + "\n"


def _timing_text(table: ProcessTimingTable) -> str:
    has_close = any(row.close_s is not None for row in table.rows)
    has_items = any(row.items is not None for row in table.rows)
    lines = []
    if table.stonewall_s is not None:
        lines.append(f"# stonewall_s = {table.stonewall_s:.6f}")
    header = "rank,start,end" + (",close" if has_close else "") + (",items" if has_items else "")
    lines.append(header)
    for row in table.rows:
        cells = [str(row.rank), f"{row.start_s:.6f}", f"{row.end_s:.6f}"]
        if has_close:
            cells.append("" if row.close_s is None else f"{row.close_s:.6f}")
        if has_items:
            cells.append("" if row.items is None else str(row.items))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _repo_csv_text(subs: list[Submission]) -> str:
    cmap = DEFAULT_COLUMN_MAP
    header = [
        cmap["submission_id"],
        cmap["list_label"],
        cmap["institution"],
        cmap["filesystem"],
        cmap["interconnect"],
        cmap["client_nodes"],
        cmap["procs_per_node"],
        cmap["total_procs"],
        cmap["score_overall"],
        cmap["score_bw"],
        cmap["score_md"],
    ] + [cmap["phases"][p.value] for p in Phase]
    lines = [",".join(header)]
    for sub in subs:
        meta = sub.meta
        cells = [
            meta.submission_id,
            meta.list_label,
            meta.institution or "",
            meta.filesystem_raw,
            meta.interconnect_raw,
            str(meta.client_nodes),
            "" if meta.procs_per_node is None else str(meta.procs_per_node),
            "" if meta.total_procs is None else str(meta.total_procs),
            repr(sub.reported_score_overall),
            repr(sub.reported_score_bw),
            repr(sub.reported_score_md),
        ]
        for phase in Phase:
            result = sub.phases.get(phase)
            cells.append("" if result is None else f"{result.value:.6f}")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_corpus(generated: list[GeneratedSubmission], outdir: str | Path) -> list[Path]:
    """Write package directories, a repo CSV, and a ground-truth sidecar.

    Returns the package directory paths in generation order.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    package_dirs: list[Path] = []
    truth: dict[str, dict] = {}
    for gen in generated:
        sub = gen.submission
        pkg = outdir / sub.meta.submission_id
        pkg.mkdir(parents=True, exist_ok=True)
        (pkg / SUMMARY_FILENAME).write_text(_summary_text(sub), encoding="utf-8", newline="\n")
        (pkg / META_FILENAME).write_text(_meta_text(sub.meta), encoding="utf-8", newline="\n")
        for phase, table in sorted(sub.timing.items(), key=lambda kv: kv[0].value):
            (pkg / f"{phase.value}.csv").write_text(_timing_text(table), encoding="utf-8", newline="\n")
        package_dirs.append(pkg)
        truth[sub.meta.submission_id] = {
            "stragglers": {
                phase.value: sorted(ranks) for phase, ranks in gen.true_stragglers.items()
            },
            "pattern": {phase.value: pat.value for phase, pat in gen.true_pattern.items()},
        }
    (outdir / "repo.csv").write_text(
        _repo_csv_text([g.submission for g in generated]), encoding="utf-8", newline="\n"
    )
    (outdir / "ground_truth.json").write_text(
        json.dumps({"format_version": 1, "submissions": truth}, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
        newline="\n",
    )
    return package_dirs
