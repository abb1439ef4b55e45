"""Summaries, efficiency ranking, and statistical tests over rolling results.

An asset's informational efficiency is proxied by the Euclidean distance of
its mean plane position to the fully-random corner (H, C) = (1, 0): smaller
distance, higher efficiency, better (smaller) rank.  One-way ANOVA compares
window-level quantifiers across assets or against a designated baseline;
Spearman's rho relates the efficiency ordering to external size metrics.

All reductions run through ``math.fsum`` so results do not depend on
summation order, and p-values come from the local incomplete-beta routines
(see ``special``), keeping the runtime dependency surface at numpy alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import islice, permutations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .rolling import RollingResult
from .special import f_sf, student_t_sf_two_sided

__all__ = [
    "AssetSummary",
    "RankingEntry",
    "AnovaResult",
    "PairwiseComparison",
    "SpearmanResult",
    "summarize",
    "efficiency_distance",
    "rank_assets",
    "one_way_anova",
    "pairwise_anova_vs_baseline",
    "spearman_rho",
    "spearman_permutation_p",
    "average_ranks",
]


@dataclass(frozen=True)
class AssetSummary:
    """Mean and sample spread of an asset's windowed plane coordinates."""

    asset: str
    mean_entropy: float
    mean_complexity: float
    std_entropy: float
    std_complexity: float
    window_count: int

    def __post_init__(self):
        for name in ("mean_entropy", "mean_complexity"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if self.std_entropy < 0 or self.std_complexity < 0:
            raise ValueError("standard deviations must be nonnegative")
        if self.window_count < 1:
            raise ValueError("window_count must be >= 1")


@dataclass(frozen=True)
class RankingEntry:
    """One row of the efficiency ranking.

    ``rank`` is a float because tied distances share the average of the rank
    range they span (two assets tied for places 4-5 both get 4.5); ``tied``
    marks entries involved in such a tie.
    """

    asset: str
    distance: float
    rank: float
    tied: bool = False

    def __post_init__(self):
        if self.distance < 0:
            raise ValueError("distance must be nonnegative")
        if self.rank < 1:
            raise ValueError("rank must be >= 1")


@dataclass(frozen=True)
class AnovaResult:
    """Classical one-way fixed-effects decomposition.

    ``degenerate`` marks the all-values-identical case where both between-
    and within-group variation vanish; by convention it reports F = 0, p = 1.
    """

    ss_between: float
    ss_within: float
    ss_total: float
    df_between: int
    df_within: int
    ms_between: float
    ms_within: float
    f_stat: float
    p_value: float
    degenerate: bool = False

    def __post_init__(self):
        if min(self.ss_between, self.ss_within, self.ss_total) < 0:
            raise ValueError("sums of squares must be nonnegative")
        if self.df_between < 1 or self.df_within < 1:
            raise ValueError("degrees of freedom must be >= 1")
        if self.f_stat < 0:
            raise ValueError("F statistic must be nonnegative")
        if not 0.0 <= self.p_value <= 1.0:
            raise ValueError(f"p-value {self.p_value} outside [0, 1]")

    @property
    def df_total(self) -> int:
        return self.df_between + self.df_within


@dataclass(frozen=True)
class SpearmanResult:
    """Rank correlation with its two-sided t-approximation p-value."""

    rho: float
    p_value: float
    n: int

    def __post_init__(self):
        if not -1.0 <= self.rho <= 1.0:
            raise ValueError(f"rho {self.rho} outside [-1, 1]")
        if not 0.0 <= self.p_value <= 1.0:
            raise ValueError(f"p-value {self.p_value} outside [0, 1]")
        if self.n < 3:
            raise ValueError("n must be >= 3")


def _mean(values: Sequence[float]) -> float:
    return math.fsum(values) / len(values)


def _sample_std(values: Sequence[float], mean: float) -> float:
    n = len(values)
    if n == 1:
        return 0.0
    return math.sqrt(math.fsum((v - mean) ** 2 for v in values) / (n - 1))


def summarize(result: RollingResult) -> AssetSummary:
    """Componentwise mean and sample (n-1) standard deviation of the points."""
    if not result.points:
        raise ValueError("rolling result contains no windows")
    hs = [p.entropy for p in result.points]
    cs = [p.complexity for p in result.points]
    mh, mc = _mean(hs), _mean(cs)
    return AssetSummary(
        asset=result.asset,
        mean_entropy=mh,
        mean_complexity=mc,
        std_entropy=_sample_std(hs, mh),
        std_complexity=_sample_std(cs, mc),
        window_count=len(result.points),
    )


def efficiency_distance(summary: AssetSummary) -> float:
    """Euclidean distance of the mean plane position to (H, C) = (1, 0)."""
    return math.hypot(1.0 - summary.mean_entropy, summary.mean_complexity)


def rank_assets(summaries: Sequence[AssetSummary]) -> list[RankingEntry]:
    """Efficiency ranking: ascending distance to (1, 0), rank 1 = closest.

    The sort is stable, so assets with exactly equal distances keep their
    input order; each such group shares the average of its rank positions
    and is flagged ``tied``.
    """
    if not summaries:
        raise ValueError("need at least one summary to rank")
    labels = [s.asset for s in summaries]
    if len(set(labels)) != len(labels):
        raise ValueError("asset labels must be distinct")
    decorated = sorted(
        ((efficiency_distance(s), s.asset) for s in summaries), key=lambda t: t[0]
    )
    entries: list[RankingEntry] = []
    i = 0
    while i < len(decorated):
        j = i
        while j + 1 < len(decorated) and decorated[j + 1][0] == decorated[i][0]:
            j += 1
        avg_rank = 0.5 * (i + j) + 1.0
        for distance, asset in decorated[i:j + 1]:
            entries.append(RankingEntry(asset, distance, avg_rank, tied=j > i))
        i = j + 1
    return entries


def _as_groups(groups) -> list[tuple[str, np.ndarray]]:
    if isinstance(groups, Mapping):
        items: Iterable = groups.items()
    else:
        items = groups
    out = []
    for label, values in items:
        arr = np.asarray(values, dtype=np.float64)
        if arr.ndim != 1 or arr.size < 2:
            raise ValueError(f"group {label!r} needs at least 2 one-dimensional observations")
        if not np.isfinite(arr).all():
            raise ValueError(f"group {label!r} contains non-finite values")
        out.append((str(label), arr))
    if len(out) < 2:
        raise ValueError("ANOVA needs at least two groups")
    return out


def one_way_anova(groups) -> AnovaResult:
    """One-way fixed-effects ANOVA over labeled observation groups.

    ``groups`` is a mapping of label to observations (or an iterable of such
    pairs).  The p-value is the F upper tail at (df_between, df_within).
    """
    parsed = [(label, arr.tolist()) for label, arr in _as_groups(groups)]
    all_values = [v for _, vals in parsed for v in vals]
    n_total = len(all_values)
    k = len(parsed)
    grand = _mean(all_values)
    group_means = [_mean(vals) for _, vals in parsed]
    ss_between = math.fsum(
        len(vals) * (m - grand) ** 2 for (_, vals), m in zip(parsed, group_means)
    )
    ss_within = math.fsum(
        math.fsum((v - m) ** 2 for v in vals)
        for (_, vals), m in zip(parsed, group_means)
    )
    ss_total = math.fsum((v - grand) ** 2 for v in all_values)
    df_between = k - 1
    df_within = n_total - k
    ms_between = ss_between / df_between
    ms_within = ss_within / df_within
    if ms_within == 0.0:
        if ms_between == 0.0:
            # All observations identical: no variation to apportion.
            return AnovaResult(ss_between, ss_within, ss_total, df_between,
                               df_within, ms_between, ms_within,
                               f_stat=0.0, p_value=1.0, degenerate=True)
        return AnovaResult(ss_between, ss_within, ss_total, df_between,
                           df_within, ms_between, ms_within,
                           f_stat=math.inf, p_value=0.0)
    f_stat = ms_between / ms_within
    return AnovaResult(ss_between, ss_within, ss_total, df_between, df_within,
                       ms_between, ms_within, f_stat,
                       p_value=f_sf(f_stat, df_between, df_within))


@dataclass(frozen=True)
class PairwiseComparison:
    """Two-group ANOVA of one asset against the baseline, per quantifier."""

    asset: str
    baseline: str
    entropy_anova: AnovaResult
    complexity_anova: AnovaResult
    entropy_mean_diff: float
    complexity_mean_diff: float

    def significant(self, metric: str, alpha: float) -> bool:
        anova = {"entropy": self.entropy_anova, "complexity": self.complexity_anova}[metric]
        return anova.p_value < alpha


def pairwise_anova_vs_baseline(results: Mapping[str, RollingResult],
                               baseline: str) -> list[PairwiseComparison]:
    """Each non-baseline asset vs the baseline, for entropy and complexity.

    Mean differences are asset minus baseline.  Output is ordered by asset
    label so it is independent of mapping iteration order.
    """
    if baseline not in results:
        raise ValueError(f"baseline asset {baseline!r} not among results")
    base = results[baseline]
    base_h = base.entropies.tolist()
    base_c = base.complexities.tolist()
    comparisons = []
    for asset in sorted(a for a in results if a != baseline):
        res = results[asset]
        hs = res.entropies.tolist()
        cs = res.complexities.tolist()
        comparisons.append(PairwiseComparison(
            asset=asset,
            baseline=baseline,
            entropy_anova=one_way_anova([(asset, hs), (baseline, base_h)]),
            complexity_anova=one_way_anova([(asset, cs), (baseline, base_c)]),
            entropy_mean_diff=_mean(hs) - _mean(base_h),
            complexity_mean_diff=_mean(cs) - _mean(base_c),
        ))
    return comparisons


def average_ranks(values) -> np.ndarray:
    """1-based ranks with tied values sharing their average rank."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError("ranking expects a one-dimensional sequence")
    if not np.isfinite(arr).all():
        raise ValueError("ranking expects finite values")
    order = np.argsort(arr, kind="stable")
    ranks = np.empty(arr.size)
    i = 0
    while i < arr.size:
        j = i
        while j + 1 < arr.size and arr[order[j + 1]] == arr[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def _rank_moments(x, y) -> tuple[np.ndarray, np.ndarray, float, float, float, int]:
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    if xa.shape != ya.shape or xa.ndim != 1:
        raise ValueError("x and y must be equal-length one-dimensional sequences")
    n = xa.size
    if n < 3:
        raise ValueError(f"need at least 3 pairs, got {n}")
    dx = average_ranks(xa)
    dy = average_ranks(ya)
    dx = dx - _mean(dx.tolist())
    dy = dy - _mean(dy.tolist())
    sxx = math.fsum((v * v for v in dx.tolist()))
    syy = math.fsum((v * v for v in dy.tolist()))
    if sxx == 0.0 or syy == 0.0:
        raise ValueError("a variable with all values tied has zero rank variance")
    sxy = math.fsum((a * b for a, b in zip(dx.tolist(), dy.tolist())))
    return dx, dy, sxx, syy, sxy, n


def spearman_rho(x, y) -> SpearmanResult:
    """Spearman rank correlation with average-rank ties.

    rho is the Pearson correlation of the two rank vectors; the two-sided
    p-value uses the t approximation ``t = rho * sqrt((n-2)/(1-rho^2))``
    with ``n - 2`` degrees of freedom (and p = 0 when |rho| = 1).
    """
    _, _, sxx, syy, sxy, n = _rank_moments(x, y)
    rho = sxy / math.sqrt(sxx * syy)
    rho = max(-1.0, min(1.0, rho))
    if abs(rho) == 1.0:
        p = 0.0
    else:
        t = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
        p = student_t_sf_two_sided(t, n - 2)
    return SpearmanResult(rho=rho, p_value=p, n=n)


def spearman_permutation_p(x, y, chunk: int = 50_000) -> float:
    """Exact two-sided permutation p-value for Spearman's rho.

    Enumerates all n! pairings of ``y`` against ``x`` (guarded to n <= 10),
    counting those whose |rho| reaches the observed one.  Rank denominators
    are permutation-invariant, so the comparison reduces to rank covariances.
    """
    dx, dy, _, _, sxy, n = _rank_moments(x, y)
    if n > 10:
        raise ValueError(f"exact enumeration is limited to n <= 10, got {n}")
    threshold = abs(sxy) - 1e-9 * max(abs(sxy), 1.0)
    perms = permutations(range(n))
    hits = 0
    total = math.factorial(n)
    while True:
        block = list(islice(perms, chunk))
        if not block:
            break
        covs = dy[np.asarray(block)] @ dx
        hits += int((np.abs(covs) >= threshold).sum())
    return hits / total
