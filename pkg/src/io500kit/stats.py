"""Rank-based and classical statistical kernels.

Correlations use average ranks for ties and the t approximation for
p-values; group comparisons use the tie-corrected Kruskal-Wallis H with a
chi-square approximation. Multiple testing over a correlation matrix is
controlled with the Benjamini-Hochberg step-up procedure applied jointly to
the upper-triangle p-values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.special import chdtrc, stdtr

from .errors import DegenerateInputError, SampleSizeError

# Submissions from the same site are not independent observations, so the
# chi-square/t p-values are approximate. Surfaced verbatim in renderings.
INDEPENDENCE_CAVEAT = (
    "p-values are approximate: submissions from the same site violate the "
    "independence assumption"
)


def rank_with_ties(values: Sequence[float]) -> np.ndarray:
    """Fractional ranks 1..n, ties getting the average of their positions."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("rank_with_ties needs a nonempty 1-d sequence")
    if not np.all(np.isfinite(arr)):
        raise ValueError("rank_with_ties requires finite values")
    n = arr.size
    order = np.argsort(arr, kind="stable")
    ranks = np.empty(n, dtype=float)
    sorted_vals = arr[order]
    i = 0
    while i < n:
        j = i
        while j + 1 < n and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i : j + 1]] = (i + j + 2) / 2.0  # positions i..j hold ranks i+1..j+1
        i = j + 1
    return ranks


def _validate_pair(x: Sequence[float], y: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    ax = np.asarray(x, dtype=float)
    ay = np.asarray(y, dtype=float)
    if ax.ndim != 1 or ay.ndim != 1 or ax.size != ay.size:
        raise ValueError("x and y must be equal-length 1-d sequences")
    if not (np.all(np.isfinite(ax)) and np.all(np.isfinite(ay))):
        raise ValueError("correlation inputs must be finite")
    if ax.size < 3:
        raise SampleSizeError(f"need n >= 3 observations, got {ax.size}")
    return ax, ay


def _t_pvalue(r: float, n: int) -> float:
    df = n - 2
    denom = 1.0 - r * r
    if denom <= 0.0:
        return 0.0
    t = abs(r) * np.sqrt(df / denom)
    return float(2.0 * stdtr(df, -t))


def pearson(x: Sequence[float], y: Sequence[float]) -> tuple[float, float]:
    """Product-moment correlation with a two-sided t-test p-value (df n-2)."""
    ax, ay = _validate_pair(x, y)
    xc = ax - ax.mean()
    yc = ay - ay.mean()
    sx = float(np.sqrt(np.sum(xc * xc)))
    sy = float(np.sqrt(np.sum(yc * yc)))
    if sx == 0.0 or sy == 0.0:
        raise DegenerateInputError("zero variance input")
    # Identical or mirrored centered vectors are exactly +-1; bypassing the
    # sqrt keeps perfect (anti)correlations free of rounding noise.
    if np.array_equal(xc, yc):
        r = 1.0
    elif np.array_equal(xc, -yc):
        r = -1.0
    else:
        r = float(np.sum(xc * yc) / (sx * sy))
        r = max(-1.0, min(1.0, r))
    return r, _t_pvalue(r, ax.size)


def spearman(x: Sequence[float], y: Sequence[float]) -> tuple[float, float]:
    """Rank correlation: Pearson on average-tied ranks, same t-test p-value."""
    ax, ay = _validate_pair(x, y)
    return pearson(rank_with_ties(ax), rank_with_ties(ay))


def bh_fdr(p_values: Sequence[float], alpha: float = 0.05) -> tuple[np.ndarray, np.ndarray]:
    """Benjamini-Hochberg step-up adjustment.

    Returns (adjusted p-values, reject mask) in the input order; adjusted
    p_(i) = min over j >= i of m * p_(j) / j, capped at 1.
    """
    p = np.asarray(p_values, dtype=float)
    if p.ndim != 1:
        raise ValueError("p_values must be 1-d")
    if p.size == 0:
        return np.empty(0), np.empty(0, dtype=bool)
    if np.any(~np.isfinite(p)) or np.any(p < 0) or np.any(p > 1):
        raise ValueError("p-values must lie in [0, 1]")
    m = p.size
    order = np.argsort(p, kind="stable")
    adjusted_sorted = p[order] * m / np.arange(1, m + 1)
    adjusted_sorted = np.minimum.accumulate(adjusted_sorted[::-1])[::-1]
    adjusted_sorted = np.minimum(adjusted_sorted, 1.0)
    adjusted = np.empty(m, dtype=float)
    adjusted[order] = adjusted_sorted
    return adjusted, adjusted <= alpha


@dataclass
class GroupTestResult:
    h: float
    p: float
    eta_sq: float
    group_sizes: list[int]
    n: int
    approximate: bool = False  # total n below the chi-square guideline


def kruskal_wallis(groups: Sequence[Sequence[float]]) -> GroupTestResult:
    """Tie-corrected Kruskal-Wallis H with chi-square p and eta-squared.

    All-identical data degenerates to H = 0, p = 1 rather than erroring.
    """
    if len(groups) < 2:
        raise SampleSizeError("kruskal_wallis needs at least two groups")
    arrays = [np.asarray(g, dtype=float) for g in groups]
    for idx, arr in enumerate(arrays):
        if arr.size == 0:
            raise SampleSizeError(f"group {idx} is empty")
        if not np.all(np.isfinite(arr)):
            raise ValueError(f"group {idx} contains non-finite values")
    pooled = np.concatenate(arrays)
    n = pooled.size
    ranks = rank_with_ties(pooled)
    h0 = 0.0
    offset = 0
    for arr in arrays:
        r_sum = float(np.sum(ranks[offset : offset + arr.size]))
        h0 += r_sum * r_sum / arr.size
        offset += arr.size
    h0 = 12.0 / (n * (n + 1)) * h0 - 3.0 * (n + 1)

    # Tie correction: divide by 1 - sum(t^3 - t) / (n^3 - n).
    _, counts = np.unique(pooled, return_counts=True)
    tie_term = float(np.sum(counts.astype(float) ** 3 - counts))
    correction = 1.0 - tie_term / (n**3 - n)
    if correction <= 0.0:
        h = 0.0
        p = 1.0
    else:
        h = h0 / correction
        h = max(h, 0.0)
        p = float(chdtrc(len(arrays) - 1, h))
    return GroupTestResult(
        h=h,
        p=p,
        eta_sq=h / (n - 1),
        group_sizes=[int(a.size) for a in arrays],
        n=int(n),
        approximate=n < 5,
    )


@dataclass
class CorrelationReport:
    variables: list[str]
    method: str
    coeff: np.ndarray
    p_raw: np.ndarray
    p_adjusted: np.ndarray
    significant: np.ndarray
    alpha: float
    n_per_pair: np.ndarray
    warnings: list[str] = field(default_factory=list)

    def index(self, name: str) -> int:
        return self.variables.index(name)

    def coefficient(self, a: str, b: str) -> float:
        return float(self.coeff[self.index(a), self.index(b)])


def correlation_matrix(
    names: Sequence[str],
    table: np.ndarray,
    method: str = "spearman",
    alpha: float = 0.05,
) -> CorrelationReport:
    """Pairwise-complete correlation matrix with joint FDR over the upper triangle.

    Each pair uses the rows where both columns are present (NaN marks
    missing). Columns with fewer than 3 complete pairs against every other
    column are dropped with a warning; individually degenerate pairs become
    NaN cells excluded from the FDR family.
    """
    if method not in ("spearman", "pearson"):
        raise ValueError(f"unknown method {method!r}")
    data = np.asarray(table, dtype=float)
    if data.ndim != 2 or data.shape[1] != len(names):
        raise ValueError("table must be (n_rows, len(names))")
    if len(names) < 2:
        raise SampleSizeError("correlation matrix needs at least two columns")

    warnings: list[str] = []
    present = np.isfinite(data)
    complete = present.astype(int).T @ present.astype(int)  # pairwise complete counts
    keep: list[int] = []
    for j, name in enumerate(names):
        others = [complete[j, k] for k in range(len(names)) if k != j]
        if max(others) < 3:
            warnings.append(f"column {name!r} dropped: fewer than 3 complete pairs")
        else:
            keep.append(j)
    if len(keep) < 2:
        raise SampleSizeError("fewer than two usable columns after dropping")
    kept_names = [names[j] for j in keep]
    data = data[:, keep]
    present = present[:, keep]

    k = len(kept_names)
    corr_fn = spearman if method == "spearman" else pearson
    coeff = np.eye(k)
    p_raw = np.zeros((k, k))
    n_per_pair = np.zeros((k, k), dtype=int)
    for j in range(k):
        n_per_pair[j, j] = int(np.sum(present[:, j]))
    for i in range(k):
        for j in range(i + 1, k):
            both = present[:, i] & present[:, j]
            n_ij = int(np.sum(both))
            n_per_pair[i, j] = n_per_pair[j, i] = n_ij
            if n_ij < 3:
                coeff[i, j] = coeff[j, i] = np.nan
                p_raw[i, j] = p_raw[j, i] = np.nan
                warnings.append(
                    f"pair ({kept_names[i]!r}, {kept_names[j]!r}): "
                    f"only {n_ij} complete pairs, cell left empty"
                )
                continue
            try:
                r, p = corr_fn(data[both, i], data[both, j])
            except DegenerateInputError:
                coeff[i, j] = coeff[j, i] = np.nan
                p_raw[i, j] = p_raw[j, i] = np.nan
                warnings.append(
                    f"pair ({kept_names[i]!r}, {kept_names[j]!r}): zero variance, cell left empty"
                )
                continue
            coeff[i, j] = coeff[j, i] = r
            p_raw[i, j] = p_raw[j, i] = p

    iu, ju = np.triu_indices(k, 1)
    family = p_raw[iu, ju]
    usable = np.isfinite(family)
    p_adjusted = np.zeros((k, k))
    significant = np.zeros((k, k), dtype=bool)
    p_adjusted[np.isnan(p_raw)] = np.nan
    if np.any(usable):
        adjusted, reject = bh_fdr(family[usable], alpha=alpha)
        adj_vec = np.full(family.shape, np.nan)
        rej_vec = np.zeros(family.shape, dtype=bool)
        adj_vec[usable] = adjusted
        rej_vec[usable] = reject
        p_adjusted[iu, ju] = adj_vec
        p_adjusted[ju, iu] = adj_vec
        significant[iu, ju] = rej_vec
        significant[ju, iu] = rej_vec
    return CorrelationReport(
        variables=list(kept_names),
        method=method,
        coeff=coeff,
        p_raw=p_raw,
        p_adjusted=p_adjusted,
        significant=significant,
        alpha=alpha,
        n_per_pair=n_per_pair,
        warnings=warnings,
    )
