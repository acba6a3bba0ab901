"""Monte Carlo forecasting of the event-time model and PIT calibration.

The forecast-quality score for a persistence value p is the KS distance
of the probability integral transforms (realized outcomes pushed through
the forecast ECDFs) from the uniform distribution; sweep_p traces that
score, and the model-implied variance rate, over a grid of p.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .conditional import ConditionalEmpirical, build_conditional_empirical, estimate_mu_tau
from .errors import DataFormatError
from .params import SignChainParams
from .rng import RngStream
from .series import TickSeries
from .simulate import renewal_terminals
from .theory import renewal_limiting_variance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ForecastDistribution:
    """Monte Carlo sample of terminal prices for one forecast origin."""

    samples: np.ndarray = field(repr=False)
    horizon: float = 0.0
    origin: tuple[float, float, int] = (0.0, 0.0, 1)  # (time, price, last sign)

    def __post_init__(self):
        arr = np.ascontiguousarray(np.asarray(self.samples, dtype=np.float64))
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("samples must be a nonempty 1-d array")
        if not np.isfinite(arr).all():
            raise ValueError("samples must be finite")
        object.__setattr__(self, "samples", arr)


@dataclass(frozen=True)
class CalibrationCurve:
    """Rows of (p, ks_distance, variance_rate, n_forecasts)."""

    p: np.ndarray
    ks_distance: np.ndarray
    variance_rate: np.ndarray
    n_forecasts: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=np.float64)
        if p.size == 0:
            raise ValueError("curve must be nonempty")
        if p.size > 1 and not (np.diff(p) > 0).all():
            raise ValueError("p values must be strictly increasing")
        for name in ("ks_distance", "variance_rate"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            if arr.shape != p.shape or not np.isfinite(arr).all():
                raise ValueError(f"{name} must be finite and match p in shape")
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n_forecasts",
                           np.asarray(self.n_forecasts, dtype=np.int64))


def forecast_distribution(model: ConditionalEmpirical, params: SignChainParams,
                          origin: tuple[float, float, int], horizon: float,
                          n_sims: int, rng: RngStream) -> ForecastDistribution:
    """Simulate n_sims terminal prices from the fitted model at one origin."""
    if n_sims < 1:
        raise ValueError("n_sims must be >= 1")
    t0, price0, last_sign = origin
    if last_sign not in (-1, 1):
        raise ValueError("origin last sign must be +/-1")
    if horizon == 0:
        samples = np.full(n_sims, float(price0))
    else:
        sums, _ = renewal_terminals(params, model, horizon, n_sims, rng,
                                    start_sign=last_sign)
        if model.scale == "log":
            samples = np.exp(math.log(price0) + sums)
        else:
            samples = price0 + sums
    return ForecastDistribution(samples=samples, horizon=float(horizon),
                                origin=(float(t0), float(price0), int(last_sign)))


def _midrank(sorted_samples: np.ndarray, value: float) -> float:
    n = sorted_samples.size
    below = np.searchsorted(sorted_samples, value, side="left")
    upto = np.searchsorted(sorted_samples, value, side="right")
    return (below + 0.5 * (upto - below)) / n


def pit(forecast: ForecastDistribution, realized: float,
        randomized: bool = False, rng: RngStream | None = None) -> float:
    """Probability integral transform of the realized value.

    Mid-rank at ties by default (deterministic). With randomized=True the
    PIT is drawn uniformly over [F(y-), F(y)], which is exactly uniform
    under a correct discrete forecast but needs an RngStream.
    """
    samples = np.sort(forecast.samples)
    if not randomized:
        return float(_midrank(samples, realized))
    if rng is None:
        raise ValueError("randomized PIT requires an RngStream")
    n = samples.size
    lo = np.searchsorted(samples, realized, side="left") / n
    hi = np.searchsorted(samples, realized, side="right") / n
    return float(lo + (hi - lo) * rng.generator().random())


def ks_uniform(pits) -> float:
    """One-sample KS distance of PIT values from Uniform(0, 1)."""
    u = np.sort(np.asarray(pits, dtype=np.float64))
    if u.size == 0:
        raise ValueError("empty PIT sample")
    if (u < 0).any() or (u > 1).any():
        raise ValueError("PIT values must lie in [0, 1]")
    n = u.size
    i = np.arange(1, n + 1)
    return float(max((i / n - u).max(), (u - (i - 1) / n).max()))


@dataclass(frozen=True)
class _Origins:
    """Forecast origins resolved against a test series."""

    t0: np.ndarray
    start_price: np.ndarray
    last_sign: np.ndarray
    realized: np.ndarray  # terminal-minus-origin change on the model scale
    n_skipped: int


def _resolve_origins(test: TickSeries, horizon: float, stride: float,
                     scale: str) -> _Origins:
    span = test.span
    if span < horizon:
        raise DataFormatError("no forecast origins fit in the test span")
    n_origins = int(math.floor((span - horizon) / stride)) + 1
    start = test.times[0]
    vals = np.log(test.prices) if scale == "log" else test.prices
    signs = np.sign(np.diff(vals)).astype(np.int64)
    t0s, p0s, s0s, realized = [], [], [], []
    skipped = 0
    for k in range(n_origins):
        t0 = start + k * stride
        i0 = int(np.searchsorted(test.times, t0, side="right")) - 1
        if i0 < 1:  # no prior increment: last sign undefined
            skipped += 1
            continue
        i1 = int(np.searchsorted(test.times, t0 + horizon, side="right")) - 1
        t0s.append(t0)
        p0s.append(test.prices[i0])
        s0s.append(signs[i0 - 1])
        realized.append(vals[i1] - vals[i0])
    if skipped:
        logger.info("skipped %d forecast origins with undefined state", skipped)
    if not t0s:
        raise DataFormatError("no usable forecast origins in the test span")
    return _Origins(np.asarray(t0s), np.asarray(p0s),
                    np.asarray(s0s, dtype=np.int64), np.asarray(realized), skipped)


def sweep_p(train: TickSeries, test: TickSeries, p_grid, horizon: float,
            stride: float, n_sims: int, rng: RngStream, scale: str = "log",
            n_sample_groups: int = 1) -> CalibrationCurve:
    """Fit on train, then score forecast calibration on test for each p.

    Forecast origins are spaced by stride across the test span; each takes
    its (price, last sign) state from the last event at or before the
    origin time. Because the model is time-homogeneous, a forecast sample
    set depends only on (p, last sign), so origins share sample sets;
    n_sample_groups > 1 rotates origins over that many independently
    simulated sets per (p, sign) to wash out shared-ECDF noise.
    """
    p_grid = np.asarray(p_grid, dtype=np.float64)
    if p_grid.size == 0 or ((p_grid <= 0) | (p_grid >= 1)).any():
        raise ValueError("p_grid must be nonempty with entries in (0, 1)")
    if p_grid.size > 1 and not (np.diff(p_grid) > 0).all():
        raise ValueError("p_grid must be strictly increasing")
    if stride <= 0 or horizon <= 0:
        raise ValueError("horizon and stride must be positive")
    model = build_conditional_empirical(train, scale=scale)
    mu = estimate_mu_tau(train).rate
    m1, m2 = model.pooled_moments()
    origins = _resolve_origins(test, horizon, stride, scale)
    groups = (np.arange(origins.t0.size) % n_sample_groups)

    ks = np.empty(p_grid.size)
    var_rate = np.empty(p_grid.size)
    for ip, p in enumerate(p_grid):
        params = SignChainParams(float(p))
        var_rate[ip] = renewal_limiting_variance(params, m1, m2, mu).value
        # one sorted sample set per (sign, group)
        sets: dict[tuple[int, int], np.ndarray] = {}
        for s in (1, -1):
            for g in range(n_sample_groups):
                code = (ip * 2 + (0 if s == 1 else 1)) * n_sample_groups + g
                sums, _ = renewal_terminals(params, model, horizon, n_sims,
                                            rng.child(code), start_sign=s)
                sets[(s, g)] = np.sort(sums)
        pits = np.empty(origins.t0.size)
        for k in range(origins.t0.size):
            samples = sets[(int(origins.last_sign[k]), int(groups[k]))]
            pits[k] = _midrank(samples, origins.realized[k])
        ks[ip] = ks_uniform(pits)
    return CalibrationCurve(p=p_grid, ks_distance=ks, variance_rate=var_rate,
                            n_forecasts=np.full(p_grid.size, origins.t0.size,
                                                dtype=np.int64))


def argmin_p(curve: CalibrationCurve) -> float:
    """p with the smallest KS distance; ties resolve toward 0.5, then smaller p."""
    best = curve.ks_distance.min()
    candidates = curve.p[curve.ks_distance == best]
    order = sorted(candidates, key=lambda q: (abs(q - 0.5), q))
    return float(order[0])
