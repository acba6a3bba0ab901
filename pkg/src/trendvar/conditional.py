"""Joint empirical model of (magnitude, inter-event time) by sign context.

Consecutive tick increments are bucketed by (sign of current increment,
sign of previous increment); each bucket keeps the observed
(|increment|, inter-event time) pairs and is resampled jointly during
simulation.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DataFormatError
from .series import TickSeries

BUCKET_KEYS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def bucket_index(s_now: int, s_prev: int) -> int:
    """Flat bucket index used by the simulation kernels."""
    return 2 * (s_now < 0) + (s_prev < 0)


@dataclass(frozen=True)
class ConditionalEmpirical:
    """Four (magnitude, tau) buckets keyed by (current sign, previous sign)."""

    buckets: dict = field(repr=False)
    scale: str = "log"

    def __post_init__(self):
        if self.scale not in ("log", "linear"):
            raise ValueError("scale must be 'log' or 'linear'")
        clean = {}
        for key in BUCKET_KEYS:
            mags, taus = self.buckets.get(key, ((), ()))
            mags = np.ascontiguousarray(np.asarray(mags, dtype=np.float64))
            taus = np.ascontiguousarray(np.asarray(taus, dtype=np.float64))
            if mags.shape != taus.shape or mags.ndim != 1:
                raise ValueError("bucket magnitudes and taus must be 1-d, equal length")
            if (mags <= 0).any() or (taus <= 0).any():
                raise ValueError("bucket magnitudes and taus must be positive")
            clean[key] = (mags, taus)
        if all(m.size == 0 for m, _ in clean.values()):
            raise ValueError("all buckets empty")
        object.__setattr__(self, "buckets", clean)

    def pooled(self) -> tuple[np.ndarray, np.ndarray]:
        mags = np.concatenate([self.buckets[k][0] for k in BUCKET_KEYS])
        taus = np.concatenate([self.buckets[k][1] for k in BUCKET_KEYS])
        return mags, taus

    def pooled_moments(self) -> tuple[float, float]:
        mags, _ = self.pooled()
        return float(mags.mean()), float((mags ** 2).mean())

    def mean_tau(self) -> float:
        _, taus = self.pooled()
        return float(taus.mean())

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Concatenated bucket arrays (mag_cat, tau_cat, offsets) for the kernels.

        Empty buckets are backed by the pooled sample, with a warning: a
        short training window can miss rare sign transitions entirely.
        """
        pooled_m, pooled_t = self.pooled()
        mags, taus, offsets = [], [], [0]
        for key in BUCKET_KEYS:
            m, t = self.buckets[key]
            if m.size == 0:
                warnings.warn(
                    f"bucket {key} empty; falling back to pooled distribution",
                    stacklevel=2,
                )
                m, t = pooled_m, pooled_t
            mags.append(m)
            taus.append(t)
            offsets.append(offsets[-1] + m.size)
        return (
            np.concatenate(mags),
            np.concatenate(taus),
            np.asarray(offsets, dtype=np.int64),
        )


def build_conditional_empirical(ticks: TickSeries, scale: str = "log") -> ConditionalEmpirical:
    """Fit the four-bucket joint empirical model to a tick series."""
    if len(ticks) < 3:
        raise DataFormatError("insufficient ticks: need at least 3 events")
    if scale == "log":
        diffs = np.diff(np.log(ticks.prices))
    elif scale == "linear":
        diffs = np.diff(ticks.prices)
    else:
        raise ValueError("scale must be 'log' or 'linear'")
    taus = np.diff(ticks.times)
    signs = np.sign(diffs).astype(np.int64)  # nonzero by TickSeries invariant
    buckets = {k: ([], []) for k in BUCKET_KEYS}
    # pair i uses increment i (current) and increment i-1 (previous)
    for key in BUCKET_KEYS:
        s_now, s_prev = key
        mask = (signs[1:] == s_now) & (signs[:-1] == s_prev)
        buckets[key] = (np.abs(diffs[1:][mask]), taus[1:][mask])
    return ConditionalEmpirical(buckets=buckets, scale=scale)


@dataclass(frozen=True)
class MuTauEstimate:
    """Observed event rate: events per unit time."""

    events: int
    span: float

    def __post_init__(self):
        if self.span <= 0:
            raise ValueError("span must be positive")
        if self.events < 0:
            raise ValueError("event count must be nonnegative")

    @property
    def rate(self) -> float:
        return self.events / self.span


def estimate_mu_tau(ticks: TickSeries, span: float | None = None) -> MuTauEstimate:
    """Estimate the long-run event rate from a tick series.

    With no explicit span, the observed span between first and last event
    is used and the first event anchors the clock (so N-1 events over the
    span). With an explicit observation span, every event counts.
    """
    if span is None:
        if len(ticks) < 2:
            raise ValueError("need at least 2 events to infer a span")
        return MuTauEstimate(events=len(ticks) - 1, span=ticks.span)
    return MuTauEstimate(events=len(ticks), span=float(span))
