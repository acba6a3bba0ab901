import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special, stats

from trendvar import (
    AssetRecord,
    DataFormatError,
    filter_universe,
    ks_two_sample,
    pearson_corr_test,
    symmetry_test,
    validate_asset,
)
from trendvar.validation import kolmogorov_sf, ks_statistic


class TestKolmogorovSf:
    def test_matches_scipy(self):
        for lam in (0.3, 0.5, 0.8, 1.0, 1.36, 2.0):
            assert kolmogorov_sf(lam) == pytest.approx(special.kolmogorov(lam), abs=1e-9)

    def test_small_argument_saturates(self):
        assert kolmogorov_sf(0.01) == 1.0

    def test_monotone_decreasing(self):
        # away from the saturated region the tail is strictly decreasing
        grid = np.linspace(0.5, 3.0, 50)
        vals = [kolmogorov_sf(l) for l in grid]
        assert (np.diff(vals) < 0).all()


class TestKsTwoSample:
    def test_identical_samples(self):
        res = ks_two_sample([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
        assert res.statistic == 0.0
        assert res.p_value == 1.0

    def test_disjoint_supports(self):
        res = ks_two_sample([0.0, 0.0, 0.0], [1.0, 1.0, 1.0])
        assert res.statistic == 1.0

    def test_half_overlap(self):
        res = ks_two_sample([1.0, 2.0], [1.5, 2.5])
        assert res.statistic == 0.5

    def test_statistic_matches_scipy(self):
        g = np.random.default_rng(0)
        a, b = g.normal(size=200), g.normal(0.3, 1.1, size=150)
        got = ks_two_sample(a, b)
        ref = stats.ks_2samp(a, b)
        assert got.statistic == pytest.approx(ref.statistic, abs=1e-12)

    def test_p_value_monotone_in_statistic(self):
        g = np.random.default_rng(1)
        base = g.normal(size=300)
        pvals = [ks_two_sample(base, g.normal(shift, 1, 300)).p_value
                 for shift in (0.0, 0.2, 0.5, 1.0)]
        assert pvals[0] > pvals[1] > pvals[2] > pvals[3]

    def test_empty_sample_rejected(self):
        with pytest.raises(ValueError):
            ks_two_sample([], [1.0])


@given(shift=st.floats(-5, 5), scale=st.floats(0.1, 10))
@settings(max_examples=25, deadline=None)
def test_ks_statistic_invariant_under_increasing_transform(shift, scale):
    g = np.random.default_rng(7)
    a, b = g.normal(size=80), g.normal(0.5, 1, size=60)
    before = ks_statistic(a, b)

    def f(x):
        return np.exp(scale * x + shift)  # strictly increasing

    after = ks_statistic(f(a), f(b))
    assert after == pytest.approx(before, abs=1e-12)


class TestSymmetryTest:
    def test_alternating_series_symmetric(self):
        prices = np.exp(np.cumsum(np.tile([0.01, -0.01], 20)))
        res = symmetry_test(np.concatenate([[1.0], prices]))
        assert res.statistic == 0.0

    def test_one_sided_series(self):
        with pytest.raises(DataFormatError, match="one-sided"):
            symmetry_test([1.0, 2.0, 3.0, 4.0])

    def test_zero_increments_enter_both_sides(self):
        prices = [1.0, 1.0, np.e, 1.0]
        res = symmetry_test(prices)
        assert res.n_a == 2 and res.n_b == 2


class TestPearson:
    def test_perfect_linear(self):
        x = np.arange(10.0)
        r, p = pearson_corr_test(x, 2 * x + 1)
        assert r == pytest.approx(1.0)
        assert p == pytest.approx(0.0, abs=1e-12)

    def test_perfect_anticorrelation(self):
        x = np.arange(10.0)
        r, _ = pearson_corr_test(x, -x)
        assert r == pytest.approx(-1.0)

    def test_matches_scipy(self):
        g = np.random.default_rng(3)
        x, y = g.normal(size=100), g.normal(size=100)
        r, p = pearson_corr_test(x, y)
        ref = stats.pearsonr(x, y)
        assert r == pytest.approx(ref.statistic, abs=1e-12)
        assert p == pytest.approx(ref.pvalue, rel=1e-9)

    def test_constant_input(self):
        with pytest.raises(ValueError, match="zero variance"):
            pearson_corr_test([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])


class TestValidateAsset:
    def test_symmetric_data_passes(self):
        g = np.random.default_rng(9)
        prices = np.exp(np.cumsum(g.normal(0, 0.02, 750)))
        report = validate_asset(prices)
        assert report.passed_at_5pct == (report.symmetry.p_value >= 0.05,
                                         report.sign_magnitude_corr[1] >= 0.05)


def _record(symbol, prices=None, volume=1e6, group=None, cap=None):
    if prices is None:
        prices = np.exp(np.cumsum(np.random.default_rng(abs(hash(symbol)) % 2**32)
                                  .normal(0, 0.02, 100)))
    return AssetRecord(symbol=symbol, prices=np.asarray(prices), volume=volume,
                       listing_group=group, market_cap=cap)


class TestFilterUniverse:
    def test_volume_threshold_inclusive(self):
        recs = [_record("LOW", volume=99_999), _record("OK", volume=100_000)]
        decisions = {d.symbol: d for d in filter_universe(recs)}
        assert decisions["LOW"].reason == "low_volume"
        assert decisions["OK"].kept

    def test_constant_prices_stale(self):
        recs = [_record("FLAT", prices=[5.0] * 50), _record("OK")]
        decisions = {d.symbol: d for d in filter_universe(recs)}
        assert decisions["FLAT"].reason == "stale_prices"

    def test_duplicate_listing_keeps_largest_cap(self):
        recs = [_record("SMALL", group="g1", cap=1e9),
                _record("BIG", group="g1", cap=2e9),
                _record("SOLO")]
        decisions = {d.symbol: d for d in filter_universe(recs)}
        assert decisions["BIG"].kept
        assert decisions["SMALL"].reason == "duplicate_listing"
        assert decisions["SOLO"].kept

    def test_duplicate_tie_breaks_lexicographically(self):
        recs = [_record("BBB", group="g", cap=1e9), _record("AAA", group="g", cap=1e9)]
        decisions = {d.symbol: d for d in filter_universe(recs)}
        assert decisions["AAA"].kept
        assert not decisions["BBB"].kept

    def test_order_independent(self):
        recs = [_record("A", group="g", cap=3e9), _record("B", group="g", cap=1e9),
                _record("C", volume=10)]
        fwd = {d.symbol: (d.kept, d.reason) for d in filter_universe(recs)}
        rev = {d.symbol: (d.kept, d.reason) for d in filter_universe(recs[::-1])}
        assert fwd == rev

    def test_idempotent(self):
        recs = [_record("A", group="g", cap=3e9), _record("B", group="g", cap=1e9),
                _record("C", volume=10), _record("D")]
        first = filter_universe(recs)
        survivors = [r for r, d in zip(recs, first) if d.kept]
        second = filter_universe(survivors)
        assert all(d.kept for d in second)

    def test_low_volume_takes_priority_over_stale(self):
        recs = [_record("X", prices=[1.0] * 50, volume=10)]
        assert filter_universe(recs)[0].reason == "low_volume"

    def test_empty_universe(self):
        with pytest.raises(ValueError):
            filter_universe([])
