import numpy as np
import pytest
from scipy import stats as scipy_stats

from questlens.evaluation import (
    bootstrap_ci,
    holm_adjust,
    kruskal_wallis,
    mann_whitney,
    rank_biserial,
)


class TestKruskalWallis:
    def test_identical_groups(self):
        h, p = kruskal_wallis([[1, 2, 3], [1, 2, 3]])
        assert h == pytest.approx(0.0, abs=1e-12)
        assert p == pytest.approx(1.0)

    def test_textbook_value(self):
        h, p = kruskal_wallis([[1, 2, 3], [10, 11, 12]])
        assert h == pytest.approx(3.857, abs=0.01)

    def test_three_constant_groups(self):
        h, p = kruskal_wallis([[5, 5], [5, 5], [5, 5]])
        assert h == 0.0
        assert p == 1.0

    def test_matches_scipy(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            groups = [
                rng.normal(loc=rng.uniform(0, 2), size=rng.integers(3, 10)).tolist()
                for _ in range(int(rng.integers(2, 5)))
            ]
            h, p = kruskal_wallis(groups)
            expected = scipy_stats.kruskal(*groups)
            assert h == pytest.approx(expected.statistic, rel=1e-10)
            assert p == pytest.approx(expected.pvalue, rel=1e-10)

    def test_matches_scipy_with_ties(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            groups = [
                rng.integers(0, 4, size=rng.integers(3, 10)).astype(float).tolist()
                for _ in range(3)
            ]
            try:
                expected = scipy_stats.kruskal(*groups)
            except ValueError:  # all numbers identical
                h, p = kruskal_wallis(groups)
                assert (h, p) == (0.0, 1.0)
                continue
            h, p = kruskal_wallis(groups)
            assert h == pytest.approx(expected.statistic, rel=1e-10)

    def test_rejects_empty_group(self):
        with pytest.raises(ValueError):
            kruskal_wallis([[1.0], []])


class TestHolm:
    def test_two_pvalues(self):
        assert holm_adjust([0.01, 0.04]) == pytest.approx([0.02, 0.04])

    def test_single_unchanged(self):
        assert holm_adjust([0.3]) == [pytest.approx(0.3)]

    def test_cap_and_monotone(self):
        assert holm_adjust([0.5, 0.9]) == pytest.approx([1.0, 1.0])

    def test_original_order_preserved(self):
        adjusted = holm_adjust([0.04, 0.01])
        assert adjusted == pytest.approx([0.04, 0.02])

    def test_monotone_and_dominates_input(self):
        rng = np.random.default_rng(4)
        for _ in range(30):
            pvals = rng.uniform(0, 1, int(rng.integers(1, 8))).tolist()
            adjusted = holm_adjust(pvals)
            assert all(a >= p - 1e-12 for a, p in zip(adjusted, pvals))
            order = np.argsort(pvals)
            in_order = [adjusted[i] for i in order]
            assert in_order == sorted(in_order)
            assert all(0 <= a <= 1 for a in adjusted)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            holm_adjust([1.5])


class TestMannWhitney:
    def test_published_effect_sizes(self):
        # point checks of the r_U identity at the study's sample sizes
        assert rank_biserial(431.0, 49, 19) == pytest.approx(0.074, abs=0.001)
        assert rank_biserial(516.0, 49, 19) == pytest.approx(-0.108, abs=0.001)
        assert rank_biserial(536.5, 49, 19) == pytest.approx(-0.153, abs=0.001)
        assert rank_biserial(486.5, 49, 19) == pytest.approx(-0.045, abs=0.001)
        assert rank_biserial(483.0, 49, 19) == pytest.approx(-0.038, abs=0.001)

    def test_identical_samples_r_zero(self):
        sample = [1.0, 2.0, 3.0, 4.0]
        u, p, r = mann_whitney(sample, sample)
        assert r == pytest.approx(0.0)
        assert p == pytest.approx(1.0)

    def test_antisymmetry(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            a = rng.normal(size=rng.integers(2, 12)).tolist()
            b = rng.normal(size=rng.integers(2, 12)).tolist()
            _, _, r_ab = mann_whitney(a, b)
            _, _, r_ba = mann_whitney(b, a)
            assert r_ab == pytest.approx(-r_ba, abs=1e-12)
            assert -1.0 <= r_ab <= 1.0

    def test_exact_p_matches_scipy(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            a = rng.permutation(100)[: rng.integers(2, 8)].astype(float).tolist()
            b = rng.permutation(200)[100:][: rng.integers(2, 8)].astype(float).tolist()
            b = [v + 0.5 for v in b]  # keep values distinct from a
            u, p, _ = mann_whitney(a, b)
            expected = scipy_stats.mannwhitneyu(a, b, alternative="two-sided", method="exact")
            assert u == pytest.approx(expected.statistic)
            assert p == pytest.approx(expected.pvalue, rel=1e-9)

    def test_tie_corrected_normal_approximation(self):
        rng = np.random.default_rng(8)
        a = rng.integers(0, 3, size=25).astype(float).tolist()
        b = rng.integers(1, 4, size=25).astype(float).tolist()
        u, p, _ = mann_whitney(a, b)
        expected = scipy_stats.mannwhitneyu(
            a, b, alternative="two-sided", method="asymptotic", use_continuity=False
        )
        assert u == pytest.approx(expected.statistic)
        assert p == pytest.approx(expected.pvalue, rel=1e-9)

    def test_extreme_separation(self):
        u, p, r = mann_whitney([1.0, 2.0], [10.0, 11.0, 12.0])
        assert u == 0.0
        assert r == 1.0  # first sample uniformly smaller
        assert 0 < p <= 1

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            mann_whitney([], [1.0])


class TestBootstrapCI:
    def test_constant_data_zero_width(self):
        ci = bootstrap_ci([2.0] * 10, statistic=lambda xs: sum(xs) / len(xs), resamples=200)
        assert ci.lo == ci.hi == 2.0

    def test_contains_point_estimate_typically(self):
        rng = np.random.default_rng(9)
        data = rng.normal(size=40).tolist()
        mean = sum(data) / len(data)
        ci = bootstrap_ci(data, statistic=lambda xs: sum(xs) / len(xs), resamples=500)
        assert ci.lo <= mean <= ci.hi

    def test_deterministic_given_seed(self):
        data = [1.0, 4.0, 2.0, 8.0]
        stat = lambda xs: max(xs)
        a = bootstrap_ci(data, stat, resamples=100, seed=42)
        b = bootstrap_ci(data, stat, resamples=100, seed=42)
        assert (a.lo, a.hi) == (b.lo, b.hi)
