import math
from itertools import permutations

import numpy as np
import pytest
import scipy.stats

from cecplane import (
    AnovaResult,
    AssetSummary,
    CecpPoint,
    RollingResult,
    efficiency_distance,
    one_way_anova,
    pairwise_anova_vs_baseline,
    rank_assets,
    spearman_rho,
    summarize,
)
from cecplane.stats import average_ranks, spearman_permutation_p


def mk_result(asset, hs, cs):
    pts = tuple(CecpPoint(h, c) for h, c in zip(hs, cs))
    starts = np.arange(len(pts), dtype=np.int64) * 60
    return RollingResult(asset, starts, pts, samples_per_window=357)


def mk_summary(asset, mean_h, mean_c):
    return AssetSummary(asset, mean_h, mean_c, 0.01, 0.01, 10)


class TestSummarize:
    def test_two_window_hand_example(self):
        result = mk_result("toy", [0.8, 0.9], [0.1, 0.2])
        s = summarize(result)
        assert s.asset == "toy"
        assert s.mean_entropy == pytest.approx(0.85, abs=1e-15)
        assert s.mean_complexity == pytest.approx(0.15, abs=1e-15)
        # sample std with n-1: sqrt(2 * 0.05^2 / 1)
        assert s.std_entropy == pytest.approx(math.sqrt(0.005), abs=1e-15)
        assert s.std_complexity == pytest.approx(math.sqrt(0.005), abs=1e-15)
        assert s.window_count == 2

    def test_single_window_has_zero_std(self):
        s = summarize(mk_result("one", [0.7], [0.2]))
        assert s.std_entropy == 0.0 and s.std_complexity == 0.0

    def test_matches_numpy_moments(self, rng):
        hs = rng.uniform(0.5, 1.0, size=40)
        cs = rng.uniform(0.0, 0.3, size=40)
        s = summarize(mk_result("x", hs, cs))
        assert s.mean_entropy == pytest.approx(hs.mean(), rel=1e-12)
        assert s.std_complexity == pytest.approx(cs.std(ddof=1), rel=1e-12)

    def test_empty_result_rejected(self):
        with pytest.raises(ValueError):
            summarize(mk_result("none", [], []))

    def test_summary_validation(self):
        with pytest.raises(ValueError):
            AssetSummary("a", 1.2, 0.1, 0.0, 0.0, 5)
        with pytest.raises(ValueError):
            AssetSummary("a", 0.5, 0.1, -0.1, 0.0, 5)
        with pytest.raises(ValueError):
            AssetSummary("a", 0.5, 0.1, 0.0, 0.0, 0)


class TestEfficiency:
    def test_fully_random_corner_is_zero(self):
        assert efficiency_distance(mk_summary("r", 1.0, 0.0)) == 0.0

    def test_pythagorean_example(self):
        assert efficiency_distance(mk_summary("p", 0.9, 0.1)) == pytest.approx(
            math.sqrt(0.02), abs=1e-15)

    def test_origin(self):
        assert efficiency_distance(mk_summary("o", 0.0, 0.0)) == 1.0


class TestRankAssets:
    def test_orders_by_distance_ascending(self):
        summaries = [mk_summary("far", 0.8, 0.0),
                     mk_summary("near", 0.95, 0.0),
                     mk_summary("mid", 0.9, 0.0)]
        ranking = rank_assets(summaries)
        assert [e.asset for e in ranking] == ["near", "mid", "far"]
        assert [e.rank for e in ranking] == [1.0, 2.0, 3.0]
        assert not any(e.tied for e in ranking)

    def test_input_order_does_not_matter_without_ties(self):
        summaries = [mk_summary(a, h, 0.0) for a, h in
                     [("a", 0.91), ("b", 0.94), ("c", 0.89)]]
        front = rank_assets(summaries)
        back = rank_assets(summaries[::-1])
        assert front == back

    def test_exact_tie_shares_average_rank(self):
        summaries = [mk_summary("first", 0.95, 0.0),
                     mk_summary("twin1", 0.9, 0.0),
                     mk_summary("twin2", 0.9, 0.0),
                     mk_summary("last", 0.8, 0.0)]
        ranking = rank_assets(summaries)
        assert [e.asset for e in ranking] == ["first", "twin1", "twin2", "last"]
        assert [e.rank for e in ranking] == [1.0, 2.5, 2.5, 4.0]
        assert [e.tied for e in ranking] == [False, True, True, False]

    def test_all_equal_distances(self):
        ranking = rank_assets([mk_summary(a, 0.9, 0.0) for a in "xyz"])
        assert all(e.rank == 2.0 and e.tied for e in ranking)

    def test_stable_within_tie_group(self):
        summaries = [mk_summary("b", 0.9, 0.0), mk_summary("a", 0.9, 0.0)]
        assert [e.asset for e in rank_assets(summaries)] == ["b", "a"]

    def test_duplicate_labels_rejected(self):
        with pytest.raises(ValueError):
            rank_assets([mk_summary("dup", 0.9, 0.0), mk_summary("dup", 0.8, 0.0)])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            rank_assets([])


class TestOneWayAnova:
    def test_worked_example(self):
        r = one_way_anova({"a": [1.0, 2.0, 3.0], "b": [2.0, 3.0, 4.0]})
        assert r.ss_between == 1.5
        assert r.ss_within == 4.0
        assert r.ss_total == 5.5
        assert (r.df_between, r.df_within, r.df_total) == (1, 4, 5)
        assert r.ms_between == 1.5 and r.ms_within == 1.0
        assert r.f_stat == 1.5
        assert r.p_value == pytest.approx(0.2878641347266906, abs=1e-12)
        assert not r.degenerate

    def test_pairs_and_mapping_agree(self):
        groups = {"a": [1.0, 2.0, 3.0], "b": [2.0, 3.0, 4.0]}
        assert one_way_anova(groups) == one_way_anova(list(groups.items()))

    @pytest.mark.parametrize("seed", range(6))
    def test_matches_scipy(self, seed):
        rng = np.random.default_rng(seed)
        k = rng.integers(2, 6)
        groups = {f"g{i}": rng.normal(rng.uniform(-1, 1), 1.0, size=rng.integers(5, 40))
                  for i in range(k)}
        r = one_way_anova(groups)
        f, p = scipy.stats.f_oneway(*groups.values())
        assert r.f_stat == pytest.approx(f, rel=1e-10)
        assert r.p_value == pytest.approx(p, rel=1e-9, abs=1e-12)

    def test_sum_of_squares_identity(self, rng):
        for _ in range(20):
            groups = {f"g{i}": rng.normal(i, 2.0, size=int(rng.integers(3, 25)))
                      for i in range(int(rng.integers(2, 7)))}
            r = one_way_anova(groups)
            assert r.ss_between + r.ss_within == pytest.approx(r.ss_total, rel=1e-9)

    def test_affine_invariance_of_f(self, rng):
        groups = {c: rng.normal(0, 1, 20) for c in "abc"}
        base = one_way_anova(groups)
        moved = one_way_anova({c: 3.7 * v - 11.0 for c, v in groups.items()})
        assert moved.f_stat == pytest.approx(base.f_stat, rel=1e-9)
        assert moved.p_value == pytest.approx(base.p_value, rel=1e-9)

    def test_equal_means_give_zero_f(self):
        r = one_way_anova({"a": [0.1, 0.2, 0.3], "b": [0.3, 0.2, 0.1]})
        assert r.f_stat == 0.0
        assert r.p_value == 1.0
        assert not r.degenerate

    def test_all_identical_is_degenerate(self):
        r = one_way_anova({"a": [5.0, 5.0], "b": [5.0, 5.0, 5.0]})
        assert r.degenerate
        assert r.f_stat == 0.0 and r.p_value == 1.0

    def test_separated_constants_give_infinite_f(self):
        r = one_way_anova({"a": [1.0, 1.0], "b": [2.0, 2.0]})
        assert math.isinf(r.f_stat)
        assert r.p_value == 0.0
        assert not r.degenerate

    def test_errors(self):
        with pytest.raises(ValueError):
            one_way_anova({"only": [1.0, 2.0]})
        with pytest.raises(ValueError):
            one_way_anova({"a": [1.0], "b": [1.0, 2.0]})
        with pytest.raises(ValueError):
            one_way_anova({"a": [1.0, math.nan], "b": [1.0, 2.0]})

    def test_result_validation(self):
        with pytest.raises(ValueError):
            AnovaResult(-1.0, 1.0, 0.0, 1, 4, 1.0, 1.0, 1.0, 0.5)
        with pytest.raises(ValueError):
            AnovaResult(1.0, 1.0, 2.0, 0, 4, 1.0, 1.0, 1.0, 0.5)
        with pytest.raises(ValueError):
            AnovaResult(1.0, 1.0, 2.0, 1, 4, 1.0, 1.0, 1.0, 1.5)


class TestPairwise:
    def test_identical_asset_is_insignificant(self, rng):
        hs = rng.uniform(0.8, 1.0, 30)
        cs = rng.uniform(0.0, 0.2, 30)
        results = {"base": mk_result("base", hs, cs),
                   "copy": mk_result("copy", hs, cs)}
        (cmp,) = pairwise_anova_vs_baseline(results, "base")
        assert cmp.asset == "copy" and cmp.baseline == "base"
        assert cmp.entropy_anova.f_stat == 0.0
        assert cmp.entropy_mean_diff == 0.0
        assert not cmp.significant("entropy", 0.05)
        assert not cmp.significant("complexity", 0.05)

    def test_shifted_asset_is_significant(self, rng):
        noise = rng.normal(0, 0.01, 40)
        results = {
            "base": mk_result("base", 0.9 + noise, 0.1 + noise / 2),
            "slow": mk_result("slow", 0.8 + noise, 0.2 + noise / 2),
        }
        (cmp,) = pairwise_anova_vs_baseline(results, "base")
        assert cmp.significant("entropy", 0.01)
        assert cmp.significant("complexity", 0.01)
        assert cmp.entropy_mean_diff == pytest.approx(-0.1, abs=1e-12)
        assert cmp.complexity_mean_diff == pytest.approx(0.1, abs=1e-12)

    def test_ordering_and_exclusion(self, rng):
        results = {name: mk_result(name, rng.uniform(0.8, 1.0, 12),
                                   rng.uniform(0.0, 0.2, 12))
                   for name in ["zeta", "base", "alpha", "mid"]}
        cmps = pairwise_anova_vs_baseline(results, "base")
        assert [c.asset for c in cmps] == ["alpha", "mid", "zeta"]

    def test_unknown_baseline(self):
        with pytest.raises(ValueError):
            pairwise_anova_vs_baseline({"a": mk_result("a", [0.9, 0.8], [0.1, 0.2])},
                                       "missing")


class TestAverageRanks:
    def test_matches_scipy_rankdata(self, rng):
        for _ in range(10):
            values = rng.integers(0, 8, size=25).astype(float)
            assert np.array_equal(average_ranks(values),
                                  scipy.stats.rankdata(values, method="average"))

    def test_simple_tie(self):
        assert average_ranks([10.0, 20.0, 20.0, 30.0]).tolist() == [1.0, 2.5, 2.5, 4.0]

    def test_errors(self):
        with pytest.raises(ValueError):
            average_ranks([[1.0, 2.0]])
        with pytest.raises(ValueError):
            average_ranks([1.0, math.inf])


class TestSpearman:
    def test_perfect_monotone(self):
        r = spearman_rho([1.0, 2.0, 3.0, 4.0], [10.0, 20.0, 40.0, 80.0])
        assert r.rho == 1.0 and r.p_value == 0.0 and r.n == 4
        r = spearman_rho([1.0, 2.0, 3.0, 4.0], [8.0, 4.0, 2.0, 1.0])
        assert r.rho == -1.0 and r.p_value == 0.0

    def test_matches_scipy_with_ties(self, rng):
        for _ in range(15):
            n = int(rng.integers(5, 40))
            x = rng.integers(0, 6, size=n).astype(float)
            y = rng.integers(0, 6, size=n).astype(float) + x * rng.uniform(-1, 1)
            try:
                ours = spearman_rho(x, y)
            except ValueError:
                assert np.unique(x).size == 1 or np.unique(y).size == 1
                continue
            want = scipy.stats.spearmanr(x, y)
            assert ours.rho == pytest.approx(want.statistic, abs=1e-12)
            assert ours.p_value == pytest.approx(want.pvalue, rel=1e-9, abs=1e-12)

    def test_negation_flips_sign(self, rng):
        x = rng.normal(size=12)
        y = rng.normal(size=12)
        fwd = spearman_rho(x, y)
        rev = spearman_rho(x, -y)
        assert rev.rho == pytest.approx(-fwd.rho, abs=1e-15)
        assert rev.p_value == pytest.approx(fwd.p_value, abs=1e-15)

    def test_monotone_transform_invariance(self, rng):
        x = rng.normal(size=15)
        y = rng.normal(size=15)
        base = spearman_rho(x, y)
        warped = spearman_rho(np.exp(x), y ** 3)
        assert warped.rho == base.rho
        assert warped.p_value == base.p_value

    def test_errors(self):
        with pytest.raises(ValueError):
            spearman_rho([1.0, 2.0], [1.0, 2.0])
        with pytest.raises(ValueError):
            spearman_rho([1.0, 2.0, 3.0], [1.0, 2.0])
        with pytest.raises(ValueError):
            spearman_rho([2.0, 2.0, 2.0], [1.0, 2.0, 3.0])


class TestSpearmanPermutation:
    def test_matches_brute_force_scipy(self):
        x = [1.0, 2.0, 2.0, 3.0, 4.0, 4.0]
        y = [2.0, 1.0, 3.0, 3.0, 5.0, 4.0]
        observed = abs(scipy.stats.spearmanr(x, y).statistic)
        hits = 0
        for perm in permutations(range(6)):
            rho = scipy.stats.spearmanr(x, [y[i] for i in perm]).statistic
            if abs(rho) >= observed - 1e-9:
                hits += 1
        assert spearman_permutation_p(x, y) == hits / math.factorial(6)

    def test_distinct_monotone_pairing(self):
        # only the identity and the full reversal reach |rho| = 1
        x = list(range(1, 9))
        y = [float(v * v) for v in x]
        assert spearman_permutation_p(x, y) == 2 / math.factorial(8)

    def test_size_guard(self):
        x = list(map(float, range(11)))
        with pytest.raises(ValueError):
            spearman_permutation_p(x, x)
