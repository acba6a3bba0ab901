import numpy as np
import pytest

from trendvar import (
    DataFormatError,
    RngStream,
    SignChainParams,
    TickSeries,
    build_conditional_empirical,
    estimate_mu_tau,
    simulate_renewal,
)
from trendvar.conditional import BUCKET_KEYS, bucket_index

from conftest import iid_joint


def ticks_from_logreturns(logrets, dt=1.0):
    times = np.arange(len(logrets) + 1, dtype=np.float64) * dt
    prices = np.exp(np.concatenate([[0.0], np.cumsum(logrets)]))
    return TickSeries(times=times, prices=prices)


class TestBucketIndex:
    def test_layout(self):
        assert [bucket_index(*k) for k in BUCKET_KEYS] == [0, 1, 2, 3]


class TestBuildConditionalEmpirical:
    def test_rising_series_single_bucket(self):
        ticks = ticks_from_logreturns([0.1, 0.2, 0.3, 0.1])
        model = build_conditional_empirical(ticks)
        assert model.buckets[(1, 1)][0].size == 3
        for key in BUCKET_KEYS[1:]:
            assert model.buckets[key][0].size == 0

    def test_alternating_series_two_buckets(self):
        ticks = ticks_from_logreturns([0.1, -0.1, 0.1, -0.1, 0.1])
        model = build_conditional_empirical(ticks)
        assert model.buckets[(1, -1)][0].size == 2
        assert model.buckets[(-1, 1)][0].size == 2
        assert model.buckets[(1, 1)][0].size == 0
        assert model.buckets[(-1, -1)][0].size == 0

    def test_insufficient_ticks(self):
        ticks = ticks_from_logreturns([0.1])
        with pytest.raises(DataFormatError, match="insufficient ticks"):
            build_conditional_empirical(ticks)

    def test_magnitudes_and_taus_are_paired(self):
        # bucket entries carry the tau of the *current* increment
        ticks = TickSeries(times=[0.0, 1.0, 4.0], prices=[1.0, 2.0, 3.0])
        model = build_conditional_empirical(ticks)
        mags, taus = model.buckets[(1, 1)]
        assert taus.tolist() == [3.0]
        assert mags[0] == pytest.approx(np.log(3.0 / 2.0))

    def test_linear_scale(self):
        ticks = TickSeries(times=[0.0, 1.0, 2.0], prices=[10.0, 12.0, 11.0])
        model = build_conditional_empirical(ticks, scale="linear")
        mags, _ = model.buckets[(-1, 1)]
        assert mags.tolist() == [1.0]

    def test_empty_bucket_falls_back_to_pooled_with_warning(self):
        ticks = ticks_from_logreturns([0.1, 0.2, 0.3])
        model = build_conditional_empirical(ticks)
        with pytest.warns(UserWarning, match="falling back to pooled"):
            mag_cat, tau_cat, offsets = model.as_arrays()
        assert offsets[-1] == mag_cat.size
        # every backing bucket is nonempty after the fallback
        assert (np.diff(offsets) > 0).all()

    def test_bucket_proportions_match_transitions(self):
        # simulate at known p and check bucket sizes against chain frequencies
        p = 0.7
        joint = iid_joint([0.01, 0.02], [0.5, 1.5])
        ticks = simulate_renewal(SignChainParams(p), joint, 20_000.0, 1.0, 0,
                                 RngStream(44))
        model = build_conditional_empirical(ticks)
        persist = model.buckets[(1, 1)][0].size + model.buckets[(-1, -1)][0].size
        total = sum(model.buckets[k][0].size for k in BUCKET_KEYS)
        se = np.sqrt(p * (1 - p) / total)
        assert abs(persist / total - p) < 3 * se


class TestEstimateMuTau:
    def test_explicit_span(self):
        ticks = TickSeries(times=np.linspace(0, 49.5, 100),
                           prices=np.exp(np.cumsum(np.tile([0.1, -0.1], 50))))
        est = estimate_mu_tau(ticks, span=50.0)
        assert est.rate == pytest.approx(2.0)

    def test_empty_series_with_span(self):
        est = estimate_mu_tau(TickSeries(times=[], prices=[]), span=10.0)
        assert est.rate == 0.0

    def test_observed_span_uses_n_minus_one(self):
        ticks = TickSeries(times=[0.0, 1.0, 2.0, 3.0], prices=[1.0, 2.0, 1.0, 2.0])
        est = estimate_mu_tau(ticks)
        assert est.events == 3
        assert est.span == 3.0
        assert est.rate == pytest.approx(1.0)

    def test_exponential_taus_recover_rate(self):
        g = np.random.default_rng(5)
        n = 100_000
        taus = g.exponential(0.5, n)
        times = np.concatenate([[0.0], np.cumsum(taus)])
        prices = np.exp(np.cumsum(np.concatenate([[0.0],
                        np.where(g.random(n) < 0.5, 0.01, -0.01)])))
        ticks = TickSeries(times=times, prices=prices)
        est = estimate_mu_tau(ticks)
        se = 2.0 / np.sqrt(n)  # delta-method SE of 1/mean for exponential taus
        assert abs(est.rate - 2.0) < 3 * se

    def test_zero_span_rejected(self):
        with pytest.raises(ValueError):
            estimate_mu_tau(TickSeries(times=[1.0], prices=[2.0]))
