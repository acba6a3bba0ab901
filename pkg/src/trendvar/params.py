"""Model parameters: the sign-persistence probability and magnitude models."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DegeneracyError


@dataclass(frozen=True)
class SignChainParams:
    """Persistence probability p of the two-state sign chain.

    p is the probability that the next move repeats the previous move's
    direction. p > 1/2 is trend-following, p < 1/2 mean-reverting. The
    boundary values are rejected: the closed-form variance expressions
    divide by 1 - p and the chain is not ergodic at p = 1.
    """

    p: float

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"p must lie strictly in (0, 1), got {self.p}")

    @property
    def sign_autocorrelation(self) -> float:
        """Lag-1 autocorrelation of the sign chain, 2p - 1."""
        return 2.0 * self.p - 1.0


@dataclass(frozen=True)
class PointMass:
    """Every step has the same nonnegative magnitude x."""

    x: float

    def __post_init__(self):
        if self.x < 0:
            raise ValueError("point mass must be nonnegative")

    def moments(self) -> tuple[float, float]:
        return self.x, self.x * self.x

    @property
    def sampleable(self) -> bool:
        return True


@dataclass(frozen=True)
class Moments:
    """Only the first two moments of the magnitude distribution are known.

    Sufficient for all closed-form variance expressions, but cannot be
    sampled from.
    """

    m1: float
    m2: float

    def __post_init__(self):
        if self.m1 < 0 or self.m2 < 0:
            raise ValueError("moments must be nonnegative")
        if not np.isfinite(self.m2):
            raise ValueError("second moment must be finite")
        if self.m2 < self.m1 * self.m1 - 1e-12:
            raise ValueError("inadmissible moments: m2 < m1^2")

    def moments(self) -> tuple[float, float]:
        return self.m1, self.m2

    @property
    def sampleable(self) -> bool:
        return False


@dataclass(frozen=True)
class Empirical:
    """Magnitudes resampled uniformly from an observed sample."""

    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.ascontiguousarray(np.asarray(self.samples, dtype=np.float64))
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("empirical sample must be a nonempty 1-d array")
        if (arr < 0).any():
            raise ValueError("magnitudes must be nonnegative")
        object.__setattr__(self, "samples", arr)

    def moments(self) -> tuple[float, float]:
        return float(self.samples.mean()), float((self.samples ** 2).mean())

    @property
    def sampleable(self) -> bool:
        return True


MagnitudeModel = Union[PointMass, Moments, Empirical]


def require_sampleable(mag: MagnitudeModel) -> None:
    if not mag.sampleable:
        raise DegeneracyError("magnitude model not sampleable")
