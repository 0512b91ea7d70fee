"""Directional dataset-level checks shared by the acceptance suite.

These are best-effort comparisons against published dataset-level behavior:
exact reproduction is impossible without the original corpus membership, so
each check tests a direction/threshold and reports the computed value.
"""

from __future__ import annotations

import numpy as np

from io500kit import ingest, metrics, stats
from io500kit.types import Phase

CheckResult = tuple[bool, str, str]  # (ok, label, detail)


def run_directional_checks(subs) -> list[CheckResult]:
    names, raw = metrics.metric_table(subs, "raw")
    _, per_node = metrics.metric_table(subs, "per-node")
    results: list[CheckResult] = []

    # (a) every phase metric: CV > 1 and mean > median
    ok_a = True
    worst = ""
    for phase in Phase:
        col = raw[:, names.index(phase.value)]
        col = col[np.isfinite(col)]
        if col.size < 2:
            continue
        s = metrics.summary_stats(col.tolist())
        good = s.cv is not None and s.cv > 1.0 and s.mean > s.median
        if not good:
            worst = f"{phase.value}: cv={s.cv}"
        ok_a &= good
    results.append((ok_a, "7a: every phase metric has CV>1 and mean>median", worst or "all phases"))

    # (b) hard-write variability exceeds easy-write variability
    def cv_of(metric: str) -> float:
        col = raw[:, names.index(metric)]
        return metrics.summary_stats(col[np.isfinite(col)].tolist()).cv

    cv_hard, cv_easy = cv_of("ior-hard-write"), cv_of("ior-easy-write")
    results.append(
        (
            cv_hard > cv_easy,
            "7b: CV(ior-hard-write) > CV(ior-easy-write)",
            f"{cv_hard:.2f} vs {cv_easy:.2f}",
        )
    )

    # (c) per-node Spearman between the two composite sub-scores
    bw = per_node[:, names.index("score_bw")]
    md = per_node[:, names.index("score_md")]
    both = np.isfinite(bw) & np.isfinite(md)
    r, _ = stats.spearman(bw[both], md[both])
    results.append((r >= 0.75, "7c: per-node Spearman(Score_BW, Score_MD) >= 0.75", f"r_s={r:.3f}"))

    # (d) interconnect effect stronger on IOR-easy-write than on the overall score
    def eta_for(metric: str) -> float:
        j = names.index(metric)
        grouped: dict[str, list[float]] = {}
        for i, sub in enumerate(subs):
            if np.isfinite(per_node[i, j]):
                grouped.setdefault(ingest.interconnect_class(sub.meta), []).append(
                    float(per_node[i, j])
                )
        return stats.kruskal_wallis(list(grouped.values())).eta_sq

    eta_ior = eta_for("ior-easy-write")
    eta_overall = eta_for("score_overall")
    results.append(
        (
            eta_ior > eta_overall,
            "7d: eta_sq(ior-easy-write per-node) > eta_sq(overall per-node)",
            f"{eta_ior:.3f} vs {eta_overall:.3f}",
        )
    )
    return results
