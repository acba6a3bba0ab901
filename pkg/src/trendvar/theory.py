"""Closed-form variance laws for sign-persistent walks, plus exact oracles.

All expressions depend on the magnitude distribution only through its
first two moments (m1, m2); reduce a MagnitudeModel with .moments()
before calling in here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneracyError
from .params import SignChainParams

# Above this n the geometric sum in exact_variance is evaluated in closed
# form; below it the direct loop is kept as a cheap cross-check path.
_CLOSED_FORM_THRESHOLD = 10_000

_MAX_ENUM_STEPS = 16


@dataclass(frozen=True)
class VarianceRate:
    """Variance per unit step (discrete chain) or per unit time (renewal)."""

    value: float

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("variance rate must be nonnegative")


@dataclass(frozen=True)
class TransitionMatrix2:
    """Symmetric 2x2 row-stochastic matrix of the sign chain."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=np.float64)
        if m.shape != (2, 2):
            raise ValueError("expected a 2x2 matrix")
        if not np.allclose(m.sum(axis=1), 1.0, atol=1e-12):
            raise ValueError("rows must sum to 1")
        if ((m < -1e-12) | (m > 1 + 1e-12)).any():
            raise ValueError("entries must lie in [0, 1]")
        object.__setattr__(self, "entries", m)


def _check_moments(m1: float, m2: float) -> None:
    if m1 < 0 or m2 < 0:
        raise ValueError("moments must be nonnegative")
    if m2 < m1 * m1 - 1e-12:
        raise ValueError("inadmissible moments: m2 < m1^2")


def limiting_variance_rate(params: SignChainParams, m1: float, m2: float) -> VarianceRate:
    """Long-run variance per step: m2 + m1^2 * (2p-1)/(1-p)."""
    _check_moments(m1, m2)
    delta = params.sign_autocorrelation
    value = m2 + m1 * m1 * delta / (1.0 - params.p)
    # admissible moments keep this nonnegative; clamp round-off at the boundary
    return VarianceRate(max(value, 0.0))


def variance_ratio(params: SignChainParams, m1: float, m2: float) -> float:
    """Variance relative to the p = 1/2 random walk: 1 + (m1^2/m2)(2p-1)/(1-p)."""
    _check_moments(m1, m2)
    if m2 == 0:
        raise DegeneracyError("degenerate magnitudes: m2 = 0")
    delta = params.sign_autocorrelation
    return 1.0 + (m1 * m1 / m2) * delta / (1.0 - params.p)


def exact_variance(params: SignChainParams, m1: float, m2: float, n: int) -> float:
    """Exact variance of the n-step walk (no asymptotics).

    n*m2 + m1^2 * sum_{i=1..n} (d - d^i)/(1-p) with d = 2p-1; the i-sum
    is a geometric series, evaluated in closed form for large n.
    """
    _check_moments(m1, m2)
    if n < 1:
        raise ValueError("n must be >= 1")
    d = params.sign_autocorrelation
    q = 1.0 - params.p
    if n > _CLOSED_FORM_THRESHOLD:
        geo = d * (1.0 - d ** n) / (1.0 - d)
        corr = (n * d - geo) / q
    else:
        powers = d ** np.arange(1, n + 1)
        corr = float(((d - powers) / q).sum())
    return n * m2 + m1 * m1 * corr


def renewal_limiting_variance(
    params: SignChainParams, m1: float, m2: float, mu_tau: float
) -> VarianceRate:
    """Long-run variance per unit time of the renewal version: mu_tau times the per-step rate."""
    if mu_tau < 0:
        raise ValueError("event rate must be nonnegative")
    return VarianceRate(mu_tau * limiting_variance_rate(params, m1, m2).value)


def transition_matrix_n(params: SignChainParams, n: int) -> TransitionMatrix2:
    """n-step transition matrix: (1/2) [[1+d^n, 1-d^n], [1-d^n, 1+d^n]]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    dn = params.sign_autocorrelation ** n
    return TransitionMatrix2(0.5 * np.array([[1 + dn, 1 - dn], [1 - dn, 1 + dn]]))


def sign_autocovariance(params: SignChainParams, lag: int) -> float:
    """E[S_i S_{i+lag}] = (2p-1)^lag."""
    if lag < 0:
        raise ValueError("lag must be nonnegative")
    if lag == 0:
        return 1.0
    return params.sign_autocorrelation ** lag


def enumerate_variance_oracle(params: SignChainParams, x: float, n: int) -> float:
    """Brute-force variance of the n-step point-mass walk.

    Sums over all 2^n sign sequences weighted by their chain probability
    (initial sign symmetric). Independent of every closed form above;
    exists to check them.
    """
    if x < 0:
        raise ValueError("magnitude must be nonnegative")
    if not 1 <= n <= _MAX_ENUM_STEPS:
        raise ValueError(f"enumeration too large: n must be in [1, {_MAX_ENUM_STEPS}]")
    p = params.p
    states = np.arange(1 << n, dtype=np.int64)
    bits = (states[:, None] >> np.arange(n)) & 1
    signs = 2 * bits - 1
    if n > 1:
        same = signs[:, 1:] == signs[:, :-1]
        probs = 0.5 * np.where(same, p, 1.0 - p).prod(axis=1)
    else:
        probs = np.full(states.shape, 0.5)
    vals = x * signs.sum(axis=1)
    mean = float((probs * vals).sum())
    second = float((probs * vals * vals).sum())
    return second - mean * mean
