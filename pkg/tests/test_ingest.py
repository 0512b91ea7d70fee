import json

import numpy as np
import pytest

from io500kit import ingest
from io500kit.errors import (
    EmptyInputError,
    LoadError,
    ParseError,
    SchemaError,
    ValidationError,
)
from io500kit.types import Filesystem, Phase


# --- result summary -----------------------------------------------------------


def test_parse_summary_basic(summary_basic):
    parsed = ingest.parse_result_summary(summary_basic)
    assert len(parsed.phases) == 12
    by_phase = {p.phase: p for p in parsed.phases}
    ew = by_phase[Phase.IOR_EASY_WRITE]
    assert ew.value == 113.0
    assert ew.unit == "GiB/s"
    assert ew.runtime_s == 316.631
    assert parsed.reported_score_bw == 15.177613
    assert parsed.reported_score_md == 31.074327
    assert parsed.reported_score_overall == 21.719972
    assert parsed.warnings == []


def test_parse_summary_underscore_names():
    text = "[RESULT] ior_easy_write 113.000 GiB/s : time 316.6 seconds\n"
    parsed = ingest.parse_result_summary(text)
    assert parsed.phases[0].phase is Phase.IOR_EASY_WRITE


def test_parse_summary_gbs_unit_warning():
    text = "[RESULT] ior-easy-write 113.000 GB/s : time 316.6 seconds\n"
    parsed = ingest.parse_result_summary(text)
    assert parsed.phases[0].unit == "GiB/s"
    assert any("GB/s" in w for w in parsed.warnings)


def test_parse_summary_skips_unknown_lines(summary_basic):
    noisy = "[preamble] whatever\n" + summary_basic + "result of run: fine\n"
    parsed = ingest.parse_result_summary(noisy)
    assert len(parsed.phases) == 12


def test_parse_summary_duplicate_phase_error():
    text = (
        "[RESULT] ior-easy-write 113.0 GiB/s : time 316.6 seconds\n"
        "[RESULT] ior_easy_write 99.0 GiB/s : time 300.0 seconds\n"
    )
    with pytest.raises(ParseError, match="duplicate phase ior-easy-write"):
        ingest.parse_result_summary(text)


def test_parse_summary_malformed_value_has_line_number():
    text = (
        "[RESULT] ior-easy-write 113.0 GiB/s : time 316.6 seconds\n"
        "[RESULT] ior-hard-write 1.2.3 GiB/s : time 300.0 seconds\n"
    )
    with pytest.raises(ParseError, match="line 2"):
        ingest.parse_result_summary(text)


def test_parse_summary_zero_matches_is_error():
    with pytest.raises(EmptyInputError):
        ingest.parse_result_summary("no benchmark lines here\nstill nothing\n")


def test_parse_summary_score_only_is_allowed():
    parsed = ingest.parse_result_summary(
        "[SCORE ] Bandwidth 100.0 GiB/s : IOPS 400.0 kiops : TOTAL 200.0\n"
    )
    assert parsed.phases == []
    assert parsed.reported_score_overall == 200.0


def test_parse_summary_unit_mismatch_is_error():
    with pytest.raises(ParseError, match="kIOPS"):
        ingest.parse_result_summary(
            "[RESULT] ior-easy-write 113.0 kIOPS : time 316.6 seconds\n"
        )


def test_parse_summary_unrecognized_phase_warned_and_skipped():
    text = (
        "[RESULT] ior-extra-hard-write 5.0 GiB/s : time 300.0 seconds\n"
        "[RESULT] ior-easy-write 113.0 GiB/s : time 316.6 seconds\n"
    )
    parsed = ingest.parse_result_summary(text)
    assert [p.phase for p in parsed.phases] == [Phase.IOR_EASY_WRITE]
    assert any("unrecognized phase" in w for w in parsed.warnings)


def test_parse_summary_never_duplicates_phases(summary_basic):
    parsed = ingest.parse_result_summary(summary_basic)
    phases = [p.phase for p in parsed.phases]
    assert len(phases) == len(set(phases))


# --- process timing -------------------------------------------------------------


def test_parse_timing_basic():
    text = "rank,start,end,close,items\n0,0.0,300.1,2.5,1000\n1,0.5,301.0,1.5,900\n"
    table, warnings = ingest.parse_process_timing(text, Phase.IOR_EASY_WRITE)
    assert warnings == []
    assert table.n_ranks == 2
    row = table.rows[0]
    assert (row.rank, row.start_s, row.end_s, row.close_s, row.items) == (0, 0.0, 300.1, 2.5, 1000)


def test_parse_timing_sorted_by_rank_and_extra_columns_ignored():
    text = "start,rank,end,hostname\n10.0,2,310.0,n2\n0.0,0,300.0,n0\n5.0,1,305.0,n1\n"
    table, _ = ingest.parse_process_timing(text, Phase.IOR_HARD_WRITE)
    assert [r.rank for r in table.rows] == [0, 1, 2]


def test_parse_timing_stonewall_comment():
    text = "# stonewall_s = 300.0\nrank,start,end\n0,0.0,310.0\n"
    table, _ = ingest.parse_process_timing(text, Phase.IOR_EASY_WRITE)
    assert table.stonewall_s == 300.0


def test_parse_timing_rejects_bad_rows_individually():
    text = "rank,start,end\n0,0.0,300.0\n1,500.0,400.0\n2,0.0,299.0\n"
    table, warnings = ingest.parse_process_timing(text, Phase.IOR_EASY_WRITE)
    assert [r.rank for r in table.rows] == [0, 2]
    assert len(warnings) == 1 and "end" in warnings[0]


def test_parse_timing_duplicate_rank_error():
    text = "rank,start,end\n0,0.0,300.0\n1,0.0,300.0\n1,0.0,301.0\n"
    with pytest.raises(ValidationError, match="duplicate rank 1"):
        ingest.parse_process_timing(text, Phase.IOR_EASY_WRITE)


def test_parse_timing_missing_column_schema_error():
    text = "rank,start\n0,0.0\n"
    with pytest.raises(SchemaError, match=r"missing required columns \['end'\]"):
        ingest.parse_process_timing(text, Phase.IOR_EASY_WRITE)


def test_parse_timing_blank_optional_cells():
    text = "rank,start,end,close\n0,0.0,300.0,\n1,0.0,300.0,2.0\n"
    table, _ = ingest.parse_process_timing(text, Phase.IOR_EASY_WRITE)
    assert table.rows[0].close_s is None
    assert table.rows[1].close_s == 2.0


def test_parse_timing_malformed_number_is_error():
    text = "rank,start,end\n0,abc,300.0\n"
    with pytest.raises(ParseError, match="line 2"):
        ingest.parse_process_timing(text, Phase.IOR_EASY_WRITE)


# --- metadata normalization -------------------------------------------------------


@pytest.mark.parametrize(
    "raw,expected",
    [
        ("Spectrum Scale", Filesystem.GPFS),
        ("GPFS", Filesystem.GPFS),
        ("IBM Spectrum Scale", Filesystem.GPFS),
        ("lustre", Filesystem.LUSTRE),
        ("Lustre 2.12 ExaScaler", Filesystem.LUSTRE),
        ("DAOS", Filesystem.DAOS),
        ("WekaIO", Filesystem.WEKAFS),
        ("BeeGFS", Filesystem.BEEGFS),
        ("MysteryFS-9000", Filesystem.OTHER),
    ],
)
def test_normalize_filesystem(raw, expected):
    assert ingest.normalize_filesystem(raw) is expected


@pytest.mark.parametrize(
    "raw,expected",
    [
        ("IB HDR", 200.0),
        ("InfiniBand EDR", 100.0),
        ("Omni-Path", 100.0),
        ("HDR100", 100.0),
        ("25 Gb/s Ethernet", 25.0),
        ("100Gbps RoCE", 100.0),
        ("mystery-net-9000", None),
        ("", None),
    ],
)
def test_normalize_interconnect(raw, expected):
    assert ingest.normalize_interconnect(raw) == expected


def test_normalize_metadata_total_and_fallbacks():
    meta = ingest.normalize_metadata(
        {"filesystem": "mystery", "interconnect": "funky", "client_nodes": "??"}
    )
    assert meta.filesystem_norm is Filesystem.OTHER
    assert meta.interconnect_gbps is None
    assert meta.client_nodes == 1
    assert meta.list_label == "other"


def test_normalize_filesystem_idempotent():
    for fs in Filesystem:
        assert ingest.normalize_filesystem(fs.value) is fs


def test_normalize_metadata_idempotent():
    raw = {
        "submission_id": "s1",
        "list_label": "ISC22",
        "filesystem": "Spectrum Scale",
        "interconnect": "IB HDR",
        "client_nodes": 10,
        "procs_per_node": 16,
        "total_procs": 160,
    }
    once = ingest.normalize_metadata(raw)
    again = ingest.normalize_metadata(
        {
            "submission_id": once.submission_id,
            "list_label": once.list_label,
            "filesystem": once.filesystem_norm.value,
            "interconnect": once.interconnect_raw,
            "client_nodes": once.client_nodes,
            "procs_per_node": once.procs_per_node,
            "total_procs": once.total_procs,
        }
    )
    assert again.filesystem_norm is once.filesystem_norm
    assert again.interconnect_gbps == once.interconnect_gbps
    assert again.list_label == once.list_label


def test_interconnect_class_labels():
    meta = ingest.normalize_metadata({"interconnect": "IB HDR", "client_nodes": 1})
    assert ingest.interconnect_class(meta) == "200 Gb/s"
    meta = ingest.normalize_metadata({"interconnect": "whatever", "client_nodes": 1})
    assert ingest.interconnect_class(meta) == "unknown"


# --- repository CSV ----------------------------------------------------------------


REPO_HEADER = "id,list,filesystem,interconnect,client_nodes,score,score_bw,score_md,ior_easy_write"


def test_parse_repo_csv_basic():
    text = REPO_HEADER + "\nsub-1,ISC22,Lustre,IB HDR,10,36850,504,2693000,809\n"
    result = ingest.parse_repo_csv(text)
    assert len(result.submissions) == 1
    sub = result.submissions[0]
    assert sub.meta.client_nodes == 10
    assert sub.reported_score_overall == 36850.0
    assert sub.phases[Phase.IOR_EASY_WRITE].value == 809.0
    # per-node overall available downstream
    from io500kit.metrics import per_node

    assert per_node(sub.reported_score_overall, sub.meta, composite=True).value == 3685.0


def test_parse_repo_csv_skips_and_counts():
    text = (
        REPO_HEADER + "\n"
        "sub-1,ISC22,Lustre,IB HDR,10,100,,,\n"
        "sub-2,ISC22,,IB HDR,10,100,,,\n"  # blank filesystem
        "sub-3,,Lustre,IB HDR,10,100,,,\n"  # blank list
        "sub-4,ISC22,Lustre,IB HDR,,100,,,\n"  # blank nodes
    )
    result = ingest.parse_repo_csv(text)
    assert len(result.submissions) == 1
    assert len(result.skipped) == 3
    assert result.n_rows == 4
    reasons = " | ".join(reason for _, reason in result.skipped)
    assert "filesystem" in reasons and "list label" in reasons and "client_nodes" in reasons


def test_parse_repo_csv_row_count_invariant_random():
    rng = np.random.default_rng(5)
    for _ in range(25):
        n = int(rng.integers(1, 30))
        rows = [REPO_HEADER]
        for i in range(n):
            fs = "Lustre" if rng.random() < 0.7 else ""
            label = "SC21" if rng.random() < 0.8 else ""
            nodes = str(int(rng.integers(1, 40))) if rng.random() < 0.9 else ""
            rows.append(f"s{i},{label},{fs},IB EDR,{nodes},1,1,1,1")
        text = "\n".join(rows) + "\n"
        try:
            result = ingest.parse_repo_csv(text)
        except EmptyInputError:
            continue
        assert result.n_rows == n


def test_parse_repo_csv_empty_dataset_error():
    with pytest.raises(EmptyInputError):
        ingest.parse_repo_csv(REPO_HEADER + "\n")
    with pytest.raises(ParseError):
        ingest.parse_repo_csv("")


def test_parse_repo_csv_custom_column_map(tmp_path):
    cmap_file = tmp_path / "map.json"
    cmap_file.write_text(
        json.dumps(
            {
                "submission_id": "SubmissionID",
                "list_label": "List",
                "filesystem": "FS",
                "client_nodes": "Nodes",
                "phases": {"ior-easy-write": "IOR_EW"},
            }
        )
    )
    cmap = ingest.load_column_map(cmap_file)
    text = "SubmissionID,List,FS,Nodes,IOR_EW\nx,SC22,daos,4,55.5\n"
    result = ingest.parse_repo_csv(text, cmap)
    sub = result.submissions[0]
    assert sub.meta.filesystem_norm is Filesystem.DAOS
    assert sub.phases[Phase.IOR_EASY_WRITE].value == 55.5


# --- package loading ------------------------------------------------------------------


def _write_package(tmp_path, summary, meta=None, csvs=None):
    pkg = tmp_path / "pkg"
    pkg.mkdir(exist_ok=True)
    (pkg / ingest.SUMMARY_FILENAME).write_text(summary)
    if meta is not None:
        (pkg / ingest.META_FILENAME).write_text(meta)
    for name, text in (csvs or {}).items():
        (pkg / name).write_text(text)
    return pkg


META_BASIC = """\
submission_id = site-a-run1
list_label = SC22
institution = Example HPC Center
filesystem = Spectrum Scale
interconnect = IB HDR
client_nodes = 10
procs_per_node = 16
total_procs = 160
"""


def test_load_submission_summary_only(tmp_path, summary_basic):
    pkg = _write_package(tmp_path, summary_basic, meta=META_BASIC)
    sub = ingest.load_submission(pkg)
    assert sub.timing == {}
    assert sub.meta.filesystem_norm is Filesystem.GPFS
    assert sub.meta.submission_id == "site-a-run1"
    assert len(sub.phases) == 12


def test_load_submission_discovers_timing(tmp_path, summary_basic):
    timing = "# stonewall_s=300\nrank,start,end\n0,0,310\n1,0,312\n"
    pkg = _write_package(
        tmp_path,
        summary_basic,
        meta=META_BASIC,
        csvs={"ior-easy-write.csv": timing, "ior_hard_write-extra.csv": timing},
    )
    sub = ingest.load_submission(pkg)
    assert set(sub.timing) == {Phase.IOR_EASY_WRITE, Phase.IOR_HARD_WRITE}


def test_load_submission_corrupt_timing_degrades(tmp_path, summary_basic):
    pkg = _write_package(
        tmp_path,
        summary_basic,
        meta=META_BASIC,
        csvs={"ior-easy-write.csv": "rank,start\n0,0\n"},
    )
    sub = ingest.load_submission(pkg)
    assert sub.timing == {}
    assert any("timing discarded" in w for w in sub.warnings)


def test_load_submission_missing_summary(tmp_path):
    pkg = tmp_path / "empty"
    pkg.mkdir()
    with pytest.raises(LoadError):
        ingest.load_submission(pkg)


def test_load_submission_missing_meta_warns(tmp_path, summary_basic):
    pkg = _write_package(tmp_path, summary_basic)
    sub = ingest.load_submission(pkg)
    assert sub.meta.submission_id == "pkg"
    assert any("meta.txt missing" in w for w in sub.warnings)


# --- manifest round trip ----------------------------------------------------------------


def test_manifest_round_trip(tmp_path, summary_basic):
    timing = "# stonewall_s=300\nrank,start,end,close,items\n0,0.25,310.5,2.5,1000\n1,0.5,312.25,,\n"
    pkg = _write_package(
        tmp_path, summary_basic, meta=META_BASIC, csvs={"ior-easy-write.csv": timing}
    )
    sub = ingest.load_submission(pkg)
    path = tmp_path / "m.json"
    ingest.write_manifest(sub, path)
    again = ingest.read_manifest(path)
    assert again == sub
    # serialization is stable, too
    assert ingest.dumps_manifest(again) == ingest.dumps_manifest(sub)


def test_concurrent_loads_match_sequential(tmp_path, summary_basic):
    # loads are pure functions of the package tree; order and workers must not matter
    from concurrent.futures import ThreadPoolExecutor

    from io500kit.synth import SynthConfig, gen_corpus, write_corpus

    pkg_dirs = write_corpus(gen_corpus(SynthConfig(seed=3, n_submissions=8)), tmp_path)
    sequential = [ingest.load_submission(p) for p in pkg_dirs]
    with ThreadPoolExecutor(max_workers=4) as pool:
        concurrent = list(pool.map(ingest.load_submission, pkg_dirs))
    assert concurrent == sequential


def test_manifest_requires_format_version(tmp_path, summary_basic):
    pkg = _write_package(tmp_path, summary_basic, meta=META_BASIC)
    sub = ingest.load_submission(pkg)
    doc = ingest.to_manifest(sub)
    assert doc["format_version"] == ingest.MANIFEST_FORMAT_VERSION
    del doc["format_version"]
    with pytest.raises(ValidationError):
        ingest.from_manifest(doc)
