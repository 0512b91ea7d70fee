import json
from pathlib import Path

import pytest

from io500kit import cli, ingest, metrics, report, stats
from io500kit.ingest import SUMMARY_FILENAME


def run(*argv):
    return cli.main([str(a) for a in argv])


def tree_bytes(root: Path) -> dict[str, bytes]:
    return {
        str(p.relative_to(root)): p.read_bytes()
        for p in sorted(root.rglob("*"))
        if p.is_file()
    }


@pytest.fixture
def corpus(tmp_path):
    out = tmp_path / "corpus"
    assert run("synth", "--seed", 11, "--n", 10, "--out", out) == 0
    return out


@pytest.fixture
def manifests(corpus, tmp_path):
    out = tmp_path / "manifests"
    assert run("ingest", corpus, "--out", out) == 0
    return out


# --- pipeline ---------------------------------------------------------------------


def test_synth_deterministic_trees(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run("synth", "--seed", 3, "--n", 6, "--out", a) == 0
    assert run("synth", "--seed", 3, "--n", 6, "--out", b) == 0
    assert tree_bytes(a) == tree_bytes(b)


def test_ingest_writes_manifests_and_validation(manifests):
    files = sorted(p.name for p in manifests.glob("*.json"))
    assert len(files) == 10
    validation = (manifests / "validation.txt").read_text()
    assert "submissions: 10" in validation
    assert "hard errors: 0" in validation
    assert "recomputation findings: 0" in validation


def test_ingest_repo_csv_matches_package_count(corpus, tmp_path):
    out = tmp_path / "repo-manifests"
    assert run("ingest", corpus / "repo.csv", "--format", "repo-csv", "--out", out) == 0
    assert len(list(out.glob("*.json"))) == 10


def test_ingest_empty_csv_exits_2(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("id,list,filesystem,client_nodes\n")
    assert run("ingest", empty, "--format", "repo-csv", "--out", tmp_path / "m") == 2


def test_ingest_corrupt_package_among_valid_exits_1(corpus, tmp_path):
    bad = corpus / "broken-package"
    bad.mkdir()
    (bad / SUMMARY_FILENAME).write_text(
        "[RESULT] ior-easy-write oops GiB/s : time 1.0 seconds\n"
    )
    out = tmp_path / "m2"
    assert run("ingest", corpus, "--out", out) == 1
    assert len(list(out.glob("*.json"))) == 10  # valid ones still written
    assert "ERROR" in (out / "validation.txt").read_text()


def test_stats_corr_groups_logs(manifests, tmp_path):
    out = tmp_path / "out"
    assert run("stats", manifests, "--normalize", "per-node", "--out", out) == 0
    assert (out / "stats" / "summary_per-node.csv").is_file()
    assert (out / "stats" / "composition.csv").is_file()
    assert (out / "stats" / "score_strip_per-node.svg").is_file()

    assert run("corr", manifests, "--method", "spearman", "--out", out) == 0
    assert (out / "corr" / "spearman_per-node.svg").is_file()

    assert run("groups", manifests, "--metric", "ior-easy-write", "--out", out) == 0
    group_txt = (out / "groups" / "ior-easy-write_per-node.txt").read_text()
    assert "H = " in group_txt and "eta_sq = " in group_txt
    assert "approximate" in group_txt  # independence caveat

    for analysis in ("runtime", "close", "stonewall", "stragglers", "pfind"):
        assert run("logs", manifests, "--analysis", analysis, "--out", out) == 0
    assert (out / "logs" / "stragglers.csv").is_file()
    assert (out / "logs" / "pfind.csv").is_file()


def test_full_pipeline_deterministic(tmp_path):
    trees = []
    for tag in ("x", "y"):
        root = tmp_path / tag
        corpus = root / "corpus"
        manifests = root / "manifests"
        out = root / "out"
        assert run("synth", "--seed", 21, "--n", 8, "--out", corpus) == 0
        assert run("ingest", corpus, "--out", manifests) == 0
        assert run("stats", manifests, "--out", out) == 0
        assert run("corr", manifests, "--out", out) == 0
        assert run("logs", manifests, "--analysis", "stragglers", "--out", out) == 0
        trees.append(tree_bytes(root))
    assert trees[0] == trees[1]


# --- thin-wrapper equivalence ----------------------------------------------------------


def test_corr_cli_is_thin_wrapper(manifests, tmp_path):
    out = tmp_path / "out"
    assert run("corr", manifests, "--method", "spearman", "--normalize", "per-node", "--out", out) == 0
    subs = ingest.read_manifest_dir(manifests)
    names, table = metrics.metric_table(subs, "per-node")
    corr = stats.correlation_matrix(names, table, method="spearman", alpha=0.05)
    spec = report.RenderSpec(
        kind="corr_heatmap", title="spearman correlations (per-node, alpha=0.05)"
    )
    svg, sidecar = report.render_corr_heatmap(corr, spec)
    assert (out / "corr" / "spearman_per-node.svg").read_text() == svg
    assert (out / "corr" / "spearman_per-node.csv").read_text() == sidecar


def test_stats_cli_is_thin_wrapper(manifests, tmp_path):
    out = tmp_path / "out"
    assert run("stats", manifests, "--normalize", "raw", "--out", out) == 0
    subs = ingest.read_manifest_dir(manifests)
    names, table = metrics.metric_table(subs, "raw")
    rows = []
    import numpy as np

    for j, name in enumerate(names):
        col = table[:, j]
        col = col[np.isfinite(col)]
        if col.size:
            rows.append((name, metrics.summary_stats(col.tolist())))
    csv_text, txt = report.render_summary_table(rows)
    assert (out / "stats" / "summary_raw.csv").read_text() == csv_text
    assert (out / "stats" / "summary_raw.txt").read_text() == txt


def test_corr_alpha_monotone(manifests, tmp_path):
    def rejected(alpha, tag):
        out = tmp_path / tag
        assert run("corr", manifests, "--alpha", alpha, "--out", out) == 0
        rows = (out / "corr" / "spearman_per-node.csv").read_text().splitlines()[1:]
        return {
            (r.split(",")[0], r.split(",")[1]) for r in rows if r.endswith(",true")
        }

    strict = rejected(0.01, "strict")
    loose = rejected(0.05, "loose")
    assert strict <= loose


# --- groups edge cases ---------------------------------------------------------------------


def test_groups_single_class_errors(tmp_path):
    corpus = tmp_path / "c"
    config = tmp_path / "synth.json"
    # all-unknown interconnects: only one group
    config.write_text(json.dumps({"seed": 5, "n_submissions": 6, "node_range": [2, 4]}))
    assert run("synth", "--config", config, "--out", corpus) == 0
    for pkg in corpus.iterdir():
        meta = pkg / "meta.txt"
        if meta.is_file():
            text = meta.read_text().replace("IB HDR", "net-x").replace("IB EDR", "net-x")
            text = text.replace("Omni-Path", "net-x").replace("100 Gb/s Ethernet", "net-x")
            text = text.replace("unknown-net", "net-x")
            meta.write_text(text)
    manifests = tmp_path / "m"
    assert run("ingest", corpus, "--out", manifests) == 0
    assert run("groups", manifests, "--out", tmp_path / "o") == 1


def test_groups_small_group_warning(manifests, tmp_path):
    out = tmp_path / "out"
    assert run("groups", manifests, "--out", out) == 0
    txt = (out / "groups" / "score_overall_per-node.txt").read_text()
    assert "warning:" in txt and "n=" in txt  # 10 subs over >=2 classes


# --- logs edge cases -----------------------------------------------------------------------


def test_logs_without_timing_is_ok(tmp_path, summary_basic):
    pkg = tmp_path / "pkg"
    pkg.mkdir()
    (pkg / SUMMARY_FILENAME).write_text(summary_basic)
    out = tmp_path / "out"
    assert run("logs", pkg, "--analysis", "stragglers", "--out", out) == 0
    assert run("logs", pkg, "--analysis", "pfind", "--out", out) == 0
    assert not (out / "logs" / "stragglers.csv").exists()


def test_logs_stonewall_flag_supplies_missing_value(tmp_path, summary_basic):
    pkg = tmp_path / "pkg"
    pkg.mkdir()
    (pkg / SUMMARY_FILENAME).write_text(summary_basic)
    (pkg / "ior-easy-write.csv").write_text(
        "rank,start,end\n0,0,310\n1,0,315\n2,0,312\n3,0,311\n"
    )
    out = tmp_path / "out"
    assert run("logs", pkg, "--analysis", "stonewall", "--out", out) == 0
    assert not (out / "logs" / "stonewall_summary.csv").exists()  # skipped, noted
    assert run("logs", pkg, "--analysis", "stonewall", "--stonewall", 300, "--out", out) == 0
    assert (out / "logs" / "stonewall_summary.csv").is_file()


def test_synth_config_straggler_pipeline(tmp_path):
    config = tmp_path / "synth.json"
    config.write_text(
        json.dumps(
            {
                "seed": 2,
                "n_submissions": 4,
                "node_range": [13, 16],
                "straggler": {"kind": "contiguous", "length": 5, "slow_factor": 3.0},
            }
        )
    )
    corpus = tmp_path / "corpus"
    manifests = tmp_path / "manifests"
    out = tmp_path / "out"
    assert run("synth", "--config", config, "--out", corpus) == 0
    assert run("ingest", corpus, "--out", manifests) == 0
    assert run("logs", manifests, "--analysis", "stragglers", "--out", out) == 0
    rows = (out / "logs" / "stragglers.csv").read_text().splitlines()[1:]
    hard = [r for r in rows if "ior-hard-write" in r]
    assert hard and all("CONTIGUOUS" in r for r in hard)


def test_unknown_metric_rejected(manifests, tmp_path):
    with pytest.raises(SystemExit):
        run("groups", manifests, "--metric", "bogus", "--out", tmp_path)


def test_pfind_detail_tables(manifests, tmp_path):
    out = tmp_path / "out"
    assert run("logs", manifests, "--analysis", "pfind", "--out", out) == 0
    details = sorted((out / "logs").glob("pfind_synth-*.csv"))
    assert len(details) == 10
    assert "gini," in details[0].read_text()


def test_pfind_fifty_x_skew_in_table(tmp_path):
    fixture = Path(__file__).parent / "fixtures" / "packages" / "p04_timing_full"
    out = tmp_path / "out"
    assert run("logs", fixture, "--analysis", "pfind", "--out", out) == 0
    summary = (out / "logs" / "pfind.csv").read_text()
    row = [r for r in summary.splitlines() if r.startswith("lustre-timing")][0]
    assert row.split(",")[4] == "50"  # MaxOverMedian column


def test_outdir_env_var(monkeypatch):
    monkeypatch.setenv("IO500KIT_OUT", "/some/where")
    parser = cli.build_parser()
    args = parser.parse_args(["stats", "x"])
    assert args.out == "/some/where"


def test_ingest_column_map_flag(tmp_path):
    csv_file = tmp_path / "export.csv"
    csv_file.write_text("SubID,List,FS,Nodes\nalpha,SC22,daos,4\n")
    cmap = tmp_path / "map.json"
    cmap.write_text(
        json.dumps(
            {
                "submission_id": "SubID",
                "list_label": "List",
                "filesystem": "FS",
                "client_nodes": "Nodes",
            }
        )
    )
    out = tmp_path / "m"
    assert run(
        "ingest", csv_file, "--format", "repo-csv", "--column-map", cmap, "--out", out
    ) == 0
    assert (out / "alpha.json").is_file()


def test_ingest_config_overrides_cache_threshold(corpus, tmp_path):
    config = tmp_path / "cfg.json"
    config.write_text(json.dumps({"cache_threshold_s": 0.0}))
    out = tmp_path / "m"
    assert run("ingest", corpus, "--config", config, "--out", out) == 0
    for manifest in out.glob("*.json"):
        doc = json.loads(manifest.read_text())
        assert all(not p["cache_flag"] for p in doc["phases"])
