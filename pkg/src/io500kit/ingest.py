"""Parsers for submission packages, per-process timing CSVs, and repository
CSV exports, plus metadata normalization and the manifest interchange format.

All parse functions are pure functions of their input text. Nothing here is
silently dropped: skipped rows and tolerated oddities are returned as
warnings or skip records alongside the parsed data.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .errors import (
    EmptyInputError,
    LoadError,
    ParseError,
    SchemaError,
    ValidationError,
)
from .types import (
    LIST_LABELS,
    Filesystem,
    Phase,
    PhaseResult,
    ProcessTimingTable,
    Submission,
    SubmissionMeta,
    TimingRow,
)

MANIFEST_FORMAT_VERSION = 1

SUMMARY_FILENAME = "result_summary.txt"
META_FILENAME = "meta.txt"

_RESULT_RE = re.compile(
    r"^\s*\[RESULT\]\s+(?P<phase>\S+)\s+(?P<value>\S+)\s+(?P<unit>\S+)"
    r"\s*:\s*time\s+(?P<time>\S+)\s+seconds\s*$"
)
_SCORE_RE = re.compile(
    r"^\s*\[SCORE\s*\]\s+Bandwidth\s+(?P<bw>\S+)\s+(?:GiB/s|GB/s)"
    r"\s*:\s*IOPS\s+(?P<md>\S+)\s+kiops"
    r"\s*:\s*TOTAL\s+(?P<total>\S+)\s*$",
    re.IGNORECASE,
)


@dataclass
class ParsedSummary:
    phases: list[PhaseResult]
    reported_score_bw: float | None = None
    reported_score_md: float | None = None
    reported_score_overall: float | None = None
    warnings: list[str] = field(default_factory=list)


def _parse_float(token: str, what: str, line_no: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"malformed {what} {token!r}", line=line_no) from None
    if value != value or value in (float("inf"), float("-inf")):
        raise ParseError(f"non-finite {what} {token!r}", line=line_no)
    return value


def parse_result_summary(text: str) -> ParsedSummary:
    """Parse an IO500 result summary.

    Recognizes `[RESULT] <phase> <value> <unit> : time <t> seconds` and
    `[SCORE] Bandwidth <v> GiB/s : IOPS <v> kiops : TOTAL <v>` lines; phase
    names may use `-` or `_` separators, and `GB/s` is accepted as a legacy
    spelling of `GiB/s` (recorded with a warning). All other lines are
    skipped.
    """
    parsed = ParsedSummary(phases=[])
    seen: dict[Phase, int] = {}
    score_line: int | None = None
    for line_no, line in enumerate(text.splitlines(), start=1):
        m = _RESULT_RE.match(line)
        if m:
            name = m.group("phase").lower().replace("_", "-")
            try:
                phase = Phase(name)
            except ValueError:
                parsed.warnings.append(
                    f"line {line_no}: unrecognized phase name {m.group('phase')!r}, skipped"
                )
                continue
            if phase in seen:
                raise ParseError(
                    f"duplicate phase {phase} (first seen on line {seen[phase]})",
                    line=line_no,
                )
            value = _parse_float(m.group("value"), "value", line_no)
            runtime = _parse_float(m.group("time"), "time", line_no)
            unit = _normalize_unit(m.group("unit"), phase, line_no, parsed.warnings)
            seen[phase] = line_no
            parsed.phases.append(
                PhaseResult(phase=phase, value=value, unit=unit, runtime_s=runtime)
            )
            continue
        m = _SCORE_RE.match(line)
        if m:
            if score_line is not None:
                raise ParseError(
                    f"duplicate score line (first seen on line {score_line})", line=line_no
                )
            score_line = line_no
            parsed.reported_score_bw = _parse_float(m.group("bw"), "bandwidth score", line_no)
            parsed.reported_score_md = _parse_float(m.group("md"), "IOPS score", line_no)
            parsed.reported_score_overall = _parse_float(m.group("total"), "total score", line_no)
    if not parsed.phases and score_line is None:
        raise EmptyInputError("no RESULT or SCORE lines found in summary")
    return parsed


def _normalize_unit(token: str, phase: Phase, line_no: int, warnings: list[str]) -> str:
    if token == "GiB/s":
        unit = "GiB/s"
    elif token == "GB/s":
        warnings.append(f"line {line_no}: unit GB/s recorded as GiB/s for {phase}")
        unit = "GiB/s"
    elif token.lower() == "kiops":
        unit = "kIOPS"
    else:
        raise ParseError(f"unknown unit {token!r} for {phase}", line=line_no)
    if unit != phase.unit:
        raise ParseError(f"unit {token!r} does not match {phase} ({phase.unit})", line=line_no)
    return unit


def parse_process_timing(text: str, phase: Phase) -> tuple[ProcessTimingTable, list[str]]:
    """Parse a per-process timing CSV for one phase.

    Expects a header with at least `rank,start,end`; `close` and `items` are
    optional and extra columns are ignored. Leading `# key = value` comment
    lines may carry `stonewall_s`. Rows violating end >= start (or with
    negative close/items) are rejected individually and reported in the
    returned warnings; duplicate ranks are a hard error.
    """
    warnings: list[str] = []
    stonewall_s: float | None = None
    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and (not lines[idx].strip() or lines[idx].lstrip().startswith("#")):
        stripped = lines[idx].lstrip()
        if stripped.startswith("#"):
            m = re.match(r"#\s*(stonewall(?:_s)?)\s*[:=]\s*(\S+)", stripped)
            if m:
                stonewall_s = _parse_float(m.group(2), "stonewall", idx + 1)
        idx += 1
    if idx >= len(lines):
        raise SchemaError(f"{phase}: timing CSV has no header")
    header = [h.strip().lower() for h in lines[idx].split(",")]
    missing = [col for col in ("rank", "start", "end") if col not in header]
    if missing:
        raise SchemaError(
            f"{phase}: missing required columns {missing}; found {header}"
        )
    col = {name: header.index(name) for name in header}
    has_close = "close" in col
    has_items = "items" in col

    rows: list[TimingRow] = []
    seen_ranks: set[int] = set()
    for line_no, line in enumerate(lines[idx + 1 :], start=idx + 2):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cells = [c.strip() for c in line.split(",")]
        if len(cells) < len(header):
            raise ParseError(
                f"{phase}: expected {len(header)} cells, got {len(cells)}", line=line_no
            )
        try:
            rank = int(cells[col["rank"]])
        except ValueError:
            raise ParseError(f"{phase}: malformed rank {cells[col['rank']]!r}", line=line_no) from None
        start = _parse_float(cells[col["start"]], "start", line_no)
        end = _parse_float(cells[col["end"]], "end", line_no)
        close = None
        if has_close and cells[col["close"]] != "":
            close = _parse_float(cells[col["close"]], "close", line_no)
        items = None
        if has_items and cells[col["items"]] != "":
            try:
                items = int(float(cells[col["items"]]))
            except ValueError:
                raise ParseError(f"{phase}: malformed items {cells[col['items']]!r}", line=line_no) from None
        if rank in seen_ranks:
            raise ValidationError(f"{phase}: duplicate rank {rank} on line {line_no}")
        seen_ranks.add(rank)
        if end < start:
            warnings.append(f"{phase}: rank {rank} rejected (end {end} < start {start})")
            continue
        if rank < 0:
            warnings.append(f"{phase}: rank {rank} rejected (negative rank)")
            continue
        if close is not None and close < 0:
            warnings.append(f"{phase}: rank {rank} rejected (negative close {close})")
            continue
        if items is not None and items < 0:
            warnings.append(f"{phase}: rank {rank} rejected (negative items {items})")
            continue
        rows.append(TimingRow(rank=rank, start_s=start, end_s=end, close_s=close, items=items))
    table = ProcessTimingTable(phase=phase, rows=rows, stonewall_s=stonewall_s)
    return table, warnings


# --- metadata normalization -------------------------------------------------

# Exact (case-insensitive) filesystem aliases; substring rules below catch
# version-suffixed spellings like "Lustre 2.12".
_FS_ALIASES = {
    "lustre": Filesystem.LUSTRE,
    "gpfs": Filesystem.GPFS,
    "spectrum scale": Filesystem.GPFS,
    "spectrumscale": Filesystem.GPFS,
    "ibm spectrum scale": Filesystem.GPFS,
    "gpfs-spectrumscale": Filesystem.GPFS,
    "gpfs/spectrumscale": Filesystem.GPFS,
    "storage scale": Filesystem.GPFS,
    "daos": Filesystem.DAOS,
    "wekafs": Filesystem.WEKAFS,
    "weka": Filesystem.WEKAFS,
    "wekaio": Filesystem.WEKAFS,
    "beegfs": Filesystem.BEEGFS,
    "other": Filesystem.OTHER,
}

_FS_SUBSTRINGS = (
    ("lustre", Filesystem.LUSTRE),
    ("gpfs", Filesystem.GPFS),
    ("spectrum", Filesystem.GPFS),
    ("daos", Filesystem.DAOS),
    ("weka", Filesystem.WEKAFS),
    ("beegfs", Filesystem.BEEGFS),
)

# Link-generation names mapped to nominal Gb/s. HDR100 must precede HDR.
_IC_SPEEDS = (
    ("hdr100", 100.0),
    ("hdr-100", 100.0),
    ("ndr", 400.0),
    ("hdr", 200.0),
    ("edr", 100.0),
    ("fdr", 56.0),
    ("qdr", 40.0),
    ("omni-path", 100.0),
    ("omnipath", 100.0),
    ("opa", 100.0),
)

_IC_EXPLICIT_RE = re.compile(r"(\d+(?:\.\d+)?)\s*(?:gb/s|gbps|gbit/s|gbit)", re.IGNORECASE)


def normalize_filesystem(raw: str) -> Filesystem:
    """Map a self-reported filesystem name onto the canonical set (total)."""
    key = raw.strip().lower()
    if key in _FS_ALIASES:
        return _FS_ALIASES[key]
    for fragment, fs in _FS_SUBSTRINGS:
        if fragment in key:
            return fs
    return Filesystem.OTHER


def normalize_interconnect(raw: str) -> float | None:
    """Map a self-reported interconnect string to nominal Gb/s, or None."""
    key = raw.strip().lower()
    if not key:
        return None
    m = _IC_EXPLICIT_RE.search(key)
    if m:
        speed = float(m.group(1))
        return speed if speed > 0 else None
    for fragment, speed in _IC_SPEEDS:
        if fragment in key:
            return speed
    return None


def normalize_list_label(raw: str) -> str:
    key = raw.strip().upper()
    return key if key in LIST_LABELS else "other"


def interconnect_class(meta: SubmissionMeta) -> str:
    """Grouping label for interconnect speed ("200 Gb/s", ..., "unknown")."""
    if meta.interconnect_gbps is None:
        return "unknown"
    return f"{meta.interconnect_gbps:g} Gb/s"


def _coerce_int(value: Any) -> int | None:
    if value is None:
        return None
    try:
        out = int(float(str(value).strip()))
    except (ValueError, TypeError):
        return None
    return out


def normalize_metadata(raw: Mapping[str, Any]) -> SubmissionMeta:
    """Build a normalized SubmissionMeta from raw metadata strings.

    Total: unknown filesystems map to `other`, unknown interconnects leave
    the speed unset, unparseable counts are dropped. Never raises.
    """
    fs_raw = str(raw.get("filesystem", "") or "")
    ic_raw = str(raw.get("interconnect", "") or "")
    client_nodes = _coerce_int(raw.get("client_nodes"))
    if client_nodes is None or client_nodes < 1:
        client_nodes = 1
    procs_per_node = _coerce_int(raw.get("procs_per_node"))
    if procs_per_node is not None and procs_per_node < 1:
        procs_per_node = None
    total_procs = _coerce_int(raw.get("total_procs"))
    if total_procs is not None and total_procs < client_nodes:
        total_procs = None
    nic_count = _coerce_int(raw.get("nic_count"))
    if nic_count is not None and nic_count < 1:
        nic_count = None
    institution = raw.get("institution")
    institution = str(institution) if institution not in (None, "") else None
    return SubmissionMeta(
        submission_id=str(raw.get("submission_id", "") or "unknown"),
        list_label=normalize_list_label(str(raw.get("list_label", "") or "")),
        institution=institution,
        filesystem_raw=fs_raw,
        filesystem_norm=normalize_filesystem(fs_raw),
        interconnect_raw=ic_raw,
        interconnect_gbps=normalize_interconnect(ic_raw),
        nic_count_reported=nic_count,
        client_nodes=client_nodes,
        procs_per_node=procs_per_node,
        total_procs=total_procs,
    )


# --- repository CSV ----------------------------------------------------------

DEFAULT_COLUMN_MAP: dict[str, Any] = {
    "submission_id": "id",
    "list_label": "list",
    "institution": "institution",
    "filesystem": "filesystem",
    "interconnect": "interconnect",
    "nic_count": "nic_count",
    "client_nodes": "client_nodes",
    "procs_per_node": "procs_per_node",
    "total_procs": "total_procs",
    "score_overall": "score",
    "score_bw": "score_bw",
    "score_md": "score_md",
    "phases": {phase.value: phase.value.replace("-", "_") for phase in Phase},
}


def load_column_map(path: str | Path) -> dict[str, Any]:
    """Read a column map JSON file; missing keys fall back to the default."""
    with open(path, encoding="utf-8") as f:
        user = json.load(f)
    merged = dict(DEFAULT_COLUMN_MAP)
    phases = dict(DEFAULT_COLUMN_MAP["phases"])
    phases.update(user.pop("phases", {}))
    merged.update(user)
    merged["phases"] = phases
    return merged


@dataclass
class RepoParse:
    submissions: list[Submission]
    skipped: list[tuple[int, str]]  # (1-based data row number, reason)

    @property
    def n_rows(self) -> int:
        return len(self.submissions) + len(self.skipped)


def parse_repo_csv(text: str, column_map: Mapping[str, Any] | None = None) -> RepoParse:
    """Parse a repository CSV export into metadata + phase-value Submissions.

    Rows missing the required fields (list label, filesystem, client node
    count) are skipped with a recorded reason. The skip and emit counts
    always sum to the input data-row count.
    """
    cmap = dict(column_map) if column_map is not None else dict(DEFAULT_COLUMN_MAP)
    try:
        reader = csv.reader(io.StringIO(text))
        rows = list(reader)
    except csv.Error as exc:
        raise ParseError(f"unreadable CSV: {exc}") from exc
    if not rows:
        raise ParseError("empty CSV: no header row")
    header = [h.strip() for h in rows[0]]
    index = {name: i for i, name in enumerate(header)}

    def cell(row: list[str], field_name: str) -> str | None:
        column = cmap.get(field_name)
        if column is None or column not in index:
            return None
        i = index[column]
        if i >= len(row):
            return None
        value = row[i].strip()
        return value if value != "" else None

    submissions: list[Submission] = []
    skipped: list[tuple[int, str]] = []
    for data_no, row in enumerate(rows[1:], start=1):
        if not any(c.strip() for c in row):
            skipped.append((data_no, "blank row"))
            continue
        missing = []
        if cell(row, "list_label") is None:
            missing.append("list label")
        if cell(row, "filesystem") is None:
            missing.append("filesystem")
        nodes_raw = cell(row, "client_nodes")
        nodes = _coerce_int(nodes_raw)
        if nodes_raw is None:
            missing.append("client_nodes")
        elif nodes is None or nodes < 1:
            skipped.append((data_no, f"invalid client_nodes {nodes_raw!r}"))
            continue
        if missing:
            skipped.append((data_no, "missing required fields: " + ", ".join(missing)))
            continue

        meta = normalize_metadata(
            {
                "submission_id": cell(row, "submission_id") or f"row-{data_no}",
                "list_label": cell(row, "list_label"),
                "institution": cell(row, "institution"),
                "filesystem": cell(row, "filesystem"),
                "interconnect": cell(row, "interconnect"),
                "nic_count": cell(row, "nic_count"),
                "client_nodes": nodes,
                "procs_per_node": cell(row, "procs_per_node"),
                "total_procs": cell(row, "total_procs"),
            }
        )
        warnings: list[str] = []
        phases: dict[Phase, PhaseResult] = {}
        phase_cols: Mapping[str, str] = cmap.get("phases", {})
        for phase in Phase:
            column = phase_cols.get(phase.value)
            if column is None or column not in index:
                continue
            i = index[column]
            raw_val = row[i].strip() if i < len(row) else ""
            if raw_val == "":
                continue
            try:
                value = float(raw_val)
            except ValueError:
                warnings.append(f"{phase}: unparseable value {raw_val!r}, dropped")
                continue
            if value < 0:
                warnings.append(f"{phase}: negative value {value}, dropped")
                continue
            phases[phase] = PhaseResult(phase=phase, value=value, unit=phase.unit)

        def score(field_name: str) -> float | None:
            raw_val = cell(row, field_name)
            if raw_val is None:
                return None
            try:
                value = float(raw_val)
            except ValueError:
                warnings.append(f"{field_name}: unparseable value {raw_val!r}, dropped")
                return None
            return value if value >= 0 else None

        submissions.append(
            Submission(
                meta=meta,
                phases=phases,
                reported_score_bw=score("score_bw"),
                reported_score_md=score("score_md"),
                reported_score_overall=score("score_overall"),
                warnings=warnings,
            )
        )
    if not submissions:
        raise EmptyInputError(
            f"no usable rows in repository CSV ({len(skipped)} skipped)"
        )
    return RepoParse(submissions=submissions, skipped=skipped)


# --- package loading ----------------------------------------------------------


def _parse_meta_file(text: str) -> dict[str, str]:
    raw: dict[str, str] = {}
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" in stripped:
            key, _, value = stripped.partition("=")
        elif ":" in stripped:
            key, _, value = stripped.partition(":")
        else:
            continue
        raw[key.strip().lower()] = value.strip()
    return raw


def _match_timing_phase(filename: str) -> Phase | None:
    stem = Path(filename).stem.lower().replace("_", "-")
    for phase in Phase:
        if stem == phase.value or stem.startswith(phase.value + "-") or stem.startswith(
            phase.value + "."
        ):
            return phase
    return None


def load_submission(package_dir: str | Path) -> Submission:
    """Assemble a Submission from a package directory.

    Requires `result_summary.txt`; `meta.txt` and per-phase `<phase>*.csv`
    timing files are optional. A corrupt timing CSV degrades to a warning;
    a missing or unparseable summary is fatal.
    """
    package_dir = Path(package_dir)
    summary_path = package_dir / SUMMARY_FILENAME
    if not summary_path.is_file():
        raise LoadError(f"{package_dir}: missing {SUMMARY_FILENAME}")
    summary = parse_result_summary(summary_path.read_text(encoding="utf-8"))
    warnings = list(summary.warnings)

    meta_path = package_dir / META_FILENAME
    raw_meta: dict[str, Any] = {}
    if meta_path.is_file():
        raw_meta = dict(_parse_meta_file(meta_path.read_text(encoding="utf-8")))
    else:
        warnings.append(f"{META_FILENAME} missing; metadata defaults used")
    raw_meta.setdefault("submission_id", package_dir.name)
    meta = normalize_metadata(raw_meta)

    timing: dict[Phase, ProcessTimingTable] = {}
    for csv_path in sorted(package_dir.glob("*.csv")):
        phase = _match_timing_phase(csv_path.name)
        if phase is None:
            warnings.append(f"{csv_path.name}: no phase match, ignored")
            continue
        if phase in timing:
            warnings.append(f"{csv_path.name}: duplicate timing file for {phase}, ignored")
            continue
        try:
            table, table_warnings = parse_process_timing(
                csv_path.read_text(encoding="utf-8"), phase
            )
        except (ParseError, SchemaError, ValidationError) as exc:
            warnings.append(f"{csv_path.name}: timing discarded ({exc})")
            continue
        warnings.extend(table_warnings)
        timing[phase] = table

    return Submission(
        meta=meta,
        phases={p.phase: p for p in summary.phases},
        reported_score_bw=summary.reported_score_bw,
        reported_score_md=summary.reported_score_md,
        reported_score_overall=summary.reported_score_overall,
        timing=timing,
        warnings=warnings,
    )


# --- manifest interchange ------------------------------------------------------


def to_manifest(sub: Submission) -> dict[str, Any]:
    """Serialize a Submission into the manifest document tree."""
    meta = sub.meta
    doc: dict[str, Any] = {
        "format_version": MANIFEST_FORMAT_VERSION,
        "meta": {
            "submission_id": meta.submission_id,
            "list_label": meta.list_label,
            "institution": meta.institution,
            "filesystem_raw": meta.filesystem_raw,
            "filesystem_norm": meta.filesystem_norm.value,
            "interconnect_raw": meta.interconnect_raw,
            "interconnect_gbps": meta.interconnect_gbps,
            "nic_count_reported": meta.nic_count_reported,
            "client_nodes": meta.client_nodes,
            "procs_per_node": meta.procs_per_node,
            "total_procs": meta.total_procs,
        },
        "phases": [
            {
                "phase": result.phase.value,
                "value": result.value,
                "unit": result.unit,
                "runtime_s": result.runtime_s,
                "cache_flag": result.cache_flag,
            }
            for result in (sub.phases[p] for p in Phase if p in sub.phases)
        ],
        "reported_score_bw": sub.reported_score_bw,
        "reported_score_md": sub.reported_score_md,
        "reported_score_overall": sub.reported_score_overall,
        "timing": {
            phase.value: {
                "stonewall_s": table.stonewall_s,
                "rows": [
                    {
                        "rank": row.rank,
                        "start_s": row.start_s,
                        "end_s": row.end_s,
                        "close_s": row.close_s,
                        "items": row.items,
                    }
                    for row in table.rows
                ],
            }
            for phase, table in sorted(sub.timing.items(), key=lambda kv: kv[0].value)
        },
        "warnings": list(sub.warnings),
    }
    return doc


def from_manifest(doc: Mapping[str, Any]) -> Submission:
    """Reconstruct a Submission from a manifest document tree."""
    version = doc.get("format_version")
    if version is None:
        raise ValidationError("manifest missing format_version")
    if version > MANIFEST_FORMAT_VERSION:
        raise ValidationError(f"unsupported manifest format_version {version}")
    m = doc["meta"]
    meta = SubmissionMeta(
        submission_id=m["submission_id"],
        list_label=m["list_label"],
        institution=m.get("institution"),
        filesystem_raw=m.get("filesystem_raw", ""),
        filesystem_norm=Filesystem(m.get("filesystem_norm", "other")),
        interconnect_raw=m.get("interconnect_raw", ""),
        interconnect_gbps=m.get("interconnect_gbps"),
        nic_count_reported=m.get("nic_count_reported"),
        client_nodes=m["client_nodes"],
        procs_per_node=m.get("procs_per_node"),
        total_procs=m.get("total_procs"),
    )
    phases: dict[Phase, PhaseResult] = {}
    for entry in doc.get("phases", []):
        phase = Phase(entry["phase"])
        phases[phase] = PhaseResult(
            phase=phase,
            value=entry["value"],
            unit=entry["unit"],
            runtime_s=entry.get("runtime_s"),
            cache_flag=bool(entry.get("cache_flag", False)),
        )
    timing: dict[Phase, ProcessTimingTable] = {}
    for phase_name, spec in doc.get("timing", {}).items():
        phase = Phase(phase_name)
        timing[phase] = ProcessTimingTable(
            phase=phase,
            stonewall_s=spec.get("stonewall_s"),
            rows=[
                TimingRow(
                    rank=r["rank"],
                    start_s=r["start_s"],
                    end_s=r["end_s"],
                    close_s=r.get("close_s"),
                    items=r.get("items"),
                )
                for r in spec.get("rows", [])
            ],
        )
    return Submission(
        meta=meta,
        phases=phases,
        reported_score_bw=doc.get("reported_score_bw"),
        reported_score_md=doc.get("reported_score_md"),
        reported_score_overall=doc.get("reported_score_overall"),
        timing=timing,
        warnings=list(doc.get("warnings", [])),
    )


def dumps_manifest(sub: Submission) -> str:
    return json.dumps(to_manifest(sub), indent=2, sort_keys=True) + "\n"


def write_manifest(sub: Submission, path: str | Path) -> None:
    Path(path).write_text(dumps_manifest(sub), encoding="utf-8", newline="\n")


def read_manifest(path: str | Path) -> Submission:
    with open(path, encoding="utf-8") as f:
        return from_manifest(json.load(f))


def read_manifest_dir(directory: str | Path) -> list[Submission]:
    """Load every `*.json` manifest in a directory, sorted by filename."""
    directory = Path(directory)
    paths = sorted(directory.glob("*.json"))
    if not paths:
        raise EmptyInputError(f"no manifests found in {directory}")
    return [read_manifest(p) for p in paths]
