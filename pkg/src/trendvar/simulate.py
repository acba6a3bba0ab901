"""Simulators: plain walk, persistent walk, sign-times-magnitude walk,
and the event-time renewal process.

Single-path simulators return full paths and are plain numpy. The
*_terminals functions are the Monte Carlo workhorses: they simulate many
replicates but keep only terminal values, dispatching the inner loops to
the compiled kernels (or the numpy fallback) via trendvar._kernels.

Draw-order contract: every function draws uniforms from its RngStream in
a fixed, documented order, so results are reproducible bit-for-bit for a
given stream and replicate count.
"""

from __future__ import annotations

import math

import numpy as np

from . import _kernels
from .conditional import ConditionalEmpirical, bucket_index
from .errors import DegeneracyError
from .params import Empirical, MagnitudeModel, PointMass, SignChainParams, require_sampleable
from .rng import RngStream
from .series import PricePath, TickSeries

DEFAULT_EVENT_CAP = 10_000_000

# chunking targets ~16 MB of uniforms per kernel invocation
_CHUNK_DOUBLES = 1 << 21


def _initial_sign(gen: np.random.Generator, start_sign: int | None) -> int:
    if start_sign in (-1, 1):
        return int(start_sign)
    if start_sign not in (None, 0):
        raise ValueError("start_sign must be -1, +1, or None")
    return 1 if gen.random() < 0.5 else -1


def simulate_rw(n_steps: int, rng: RngStream) -> PricePath:
    """Symmetric +/-1 random walk from 0."""
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    gen = rng.generator()
    signs = np.where(gen.random(n_steps) < 0.5, 1.0, -1.0)
    values = np.concatenate([[0.0], np.cumsum(signs)])
    return PricePath(values=values, start_value=0.0)


def _crw_signs(params: SignChainParams, n_steps: int,
               gen: np.random.Generator, start_sign: int | None) -> np.ndarray:
    s0 = float(_initial_sign(gen, start_sign))
    if n_steps == 1:
        return np.array([s0])
    mult = np.where(gen.random(n_steps - 1) < params.p, 1.0, -1.0)
    return np.concatenate([[s0], s0 * np.cumprod(mult)])


def simulate_crw(params: SignChainParams, n_steps: int, rng: RngStream,
                 start_sign: int | None = None) -> PricePath:
    """Unit-step walk that repeats the previous direction with probability p."""
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    signs = _crw_signs(params, n_steps, rng.generator(), start_sign)
    values = np.concatenate([[0.0], np.cumsum(signs)])
    return PricePath(values=values, start_value=0.0)


def simulate_semiparametric(params: SignChainParams, mag: MagnitudeModel,
                            n_steps: int, rng: RngStream,
                            start_sign: int | None = None) -> PricePath:
    """Walk with persistent signs and i.i.d. magnitudes drawn from mag.

    A PointMass magnitude consumes no extra draws, so PointMass(1)
    reproduces simulate_crw exactly for the same stream.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    require_sampleable(mag)
    gen = rng.generator()
    signs = _crw_signs(params, n_steps, gen, start_sign)
    if isinstance(mag, PointMass):
        steps = signs * mag.x
    else:
        pool = mag.samples
        idx = np.minimum((gen.random(n_steps) * pool.size).astype(np.int64),
                         pool.size - 1)
        steps = signs * pool[idx]
    values = np.concatenate([[0.0], np.cumsum(steps)])
    return PricePath(values=values, start_value=0.0)


def simulate_renewal(params: SignChainParams, joint: ConditionalEmpirical,
                     horizon: float, start_price: float, start_sign: int,
                     rng: RngStream, event_cap: int = DEFAULT_EVENT_CAP) -> TickSeries:
    """Simulate the event-time process over [0, horizon].

    The returned series starts with the origin (time 0, start_price);
    subsequent entries are the simulated price-change events, so the
    event count is len(series) - 1. Price updates are additive on the
    scale the joint model was fitted on (log by default).
    """
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    gen = rng.generator()
    mag_cat, tau_cat, offsets = joint.as_arrays()
    s = _initial_sign(gen, start_sign)
    log_scale = joint.scale == "log"
    x = math.log(start_price) if log_scale else start_price
    t = 0.0
    times = [0.0]
    values = [x]
    chunk = 1024
    while True:
        u_sign = gen.random(chunk)
        u_pick = gen.random(chunk)
        for j in range(chunk):
            s_next = s if u_sign[j] < params.p else -s
            b = bucket_index(s_next, s)
            lo, hi = offsets[b], offsets[b + 1]
            k = lo + min(int(u_pick[j] * (hi - lo)), hi - lo - 1)
            tau = tau_cat[k]
            if t + tau > horizon:
                prices = np.exp(values) if log_scale else np.asarray(values)
                return TickSeries(times=np.asarray(times), prices=prices)
            t += tau
            x += s_next * mag_cat[k]
            s = s_next
            times.append(t)
            values.append(x)
            if len(times) - 1 > event_cap:
                raise RuntimeError("runaway event rate")


def crw_terminals(params: SignChainParams, n_steps: int, n_reps: int,
                  rng: RngStream) -> np.ndarray:
    """Terminal values of n_reps unit-step persistent walks (symmetric start)."""
    if n_steps < 1 or n_reps < 1:
        raise ValueError("n_steps and n_reps must be >= 1")
    gen = rng.generator()
    out = np.empty(n_reps)
    chunk = max(1, _CHUNK_DOUBLES // max(n_steps, 1))
    for lo in range(0, n_reps, chunk):
        hi = min(lo + chunk, n_reps)
        u0 = gen.random(hi - lo)
        us = gen.random((hi - lo, n_steps - 1))
        _kernels.crw_terminal(params.p, u0, us, out[lo:hi])
    return out


def semiparametric_terminals(params: SignChainParams, mag: MagnitudeModel,
                             n_steps: int, n_reps: int, rng: RngStream) -> np.ndarray:
    """Terminal values of n_reps sign-times-magnitude walks."""
    if n_steps < 1 or n_reps < 1:
        raise ValueError("n_steps and n_reps must be >= 1")
    require_sampleable(mag)
    if isinstance(mag, PointMass):
        return mag.x * crw_terminals(params, n_steps, n_reps, rng)
    assert isinstance(mag, Empirical)
    pool = mag.samples
    gen = rng.generator()
    out = np.empty(n_reps)
    chunk = max(1, _CHUNK_DOUBLES // max(n_steps, 1))
    for lo in range(0, n_reps, chunk):
        hi = min(lo + chunk, n_reps)
        u0 = gen.random(hi - lo)
        us = gen.random((hi - lo, n_steps - 1))
        um = gen.random((hi - lo, n_steps))
        _kernels.semiparam_terminal(params.p, u0, us, um, pool, out[lo:hi])
    return out


def renewal_terminals(params: SignChainParams, joint: ConditionalEmpirical,
                      horizon: float, n_reps: int, rng: RngStream,
                      start_sign: int = 0,
                      event_cap: int = DEFAULT_EVENT_CAP) -> tuple[np.ndarray, np.ndarray]:
    """Terminal signed sums and event counts of n_reps renewal replicates.

    Returns (sums, n_events); sums are on the joint model's fitting scale
    (add to log start price or price directly). start_sign 0 draws the
    initial sign symmetrically, one uniform per replicate.
    """
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    if n_reps < 1:
        raise ValueError("n_reps must be >= 1")
    gen = rng.generator()
    mag_cat, tau_cat, offsets = joint.as_arrays()
    expected = horizon / joint.mean_tau()
    width = int(min(max(expected + 4.0 * math.sqrt(expected + 1.0) + 16.0, 8), 4096))
    chunk = int(min(max(_CHUNK_DOUBLES // width, 1), 65536))

    sums = np.empty(n_reps)
    counts = np.empty(n_reps, dtype=np.int64)
    for lo in range(0, n_reps, chunk):
        hi = min(lo + chunk, n_reps)
        R = hi - lo
        if start_sign == 0:
            s_prev = np.where(gen.random(R) < 0.5, 1, -1).astype(np.int8)
        elif start_sign in (-1, 1):
            s_prev = np.full(R, start_sign, dtype=np.int8)
        else:
            raise ValueError("start_sign must be -1, +1, or 0")
        t_el = np.zeros(R)
        cum = np.zeros(R)
        done = np.zeros(R, dtype=np.uint8)
        n_ev = np.zeros(R, dtype=np.int64)
        _kernels.renewal_block(params.p, horizon, mag_cat, tau_cat, offsets,
                               gen.random((R, width)), gen.random((R, width)),
                               t_el, cum, s_prev, done, n_ev)
        while not done.all():
            if int(n_ev.max()) > event_cap:
                raise RuntimeError("runaway event rate")
            idx = np.flatnonzero(done == 0)
            sub = (t_el[idx], cum[idx], s_prev[idx], done[idx], n_ev[idx])
            _kernels.renewal_block(params.p, horizon, mag_cat, tau_cat, offsets,
                                   gen.random((idx.size, width)),
                                   gen.random((idx.size, width)), *sub)
            t_el[idx], cum[idx], s_prev[idx], done[idx], n_ev[idx] = sub
        sums[lo:hi] = cum
        counts[lo:hi] = n_ev
    return sums, counts
