"""Estimating persistence and magnitude moments from observed prices."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DataFormatError, DegeneracyError
from .params import SignChainParams
from .theory import variance_ratio

# assets whose dropped-zero fraction exceeds this are flagged as stale
STALE_ZERO_FRACTION = 0.05


@dataclass(frozen=True)
class IncrementSeries:
    """Signed increments split into signs and strictly positive magnitudes.

    Zero increments carry no sign information; they are dropped and
    counted in dropped_zero_count.
    """

    signs: np.ndarray = field(repr=False)
    magnitudes: np.ndarray = field(repr=False)
    scale: str = "log"
    dropped_zero_count: int = 0

    def __post_init__(self):
        s = np.ascontiguousarray(np.asarray(self.signs, dtype=np.int8))
        m = np.ascontiguousarray(np.asarray(self.magnitudes, dtype=np.float64))
        if s.shape != m.shape or s.ndim != 1:
            raise ValueError("signs and magnitudes must be 1-d, equal length")
        if not np.isin(s, (-1, 1)).all():
            raise ValueError("signs must be +/-1")
        if (m <= 0).any():
            raise ValueError("retained magnitudes must be positive")
        if self.scale not in ("log", "linear"):
            raise ValueError("scale must be 'log' or 'linear'")
        object.__setattr__(self, "signs", s)
        object.__setattr__(self, "magnitudes", m)

    def __len__(self) -> int:
        return self.signs.size

    @property
    def zero_fraction(self) -> float:
        total = len(self) + self.dropped_zero_count
        return self.dropped_zero_count / total if total else 0.0


@dataclass(frozen=True)
class VarianceReport:
    """Per-asset persistence and variance-ratio estimates."""

    p_hat: float
    m1_hat: float
    m2_hat: float
    sigma_bar_sq: float
    n_increments: int
    n_transitions: int
    dropped_zero_count: int = 0
    stale_flag: bool = False


def extract_increments(prices, scale: str = "log") -> IncrementSeries:
    """Split price increments into signs and magnitudes, dropping zeros."""
    prices = np.asarray(prices, dtype=np.float64)
    if prices.ndim != 1 or prices.size < 2:
        raise DataFormatError("need at least 2 prices")
    if scale == "log":
        if (prices <= 0).any():
            raise DataFormatError("nonpositive price encountered on log scale")
        diffs = np.diff(np.log(prices))
    elif scale == "linear":
        diffs = np.diff(prices)
    else:
        raise ValueError("scale must be 'log' or 'linear'")
    nonzero = diffs != 0
    kept = diffs[nonzero]
    return IncrementSeries(
        signs=np.sign(kept).astype(np.int8),
        magnitudes=np.abs(kept),
        scale=scale,
        dropped_zero_count=int((~nonzero).sum()),
    )


def estimate_p(signs) -> float:
    """Proportion of consecutive signs that agree."""
    signs = np.asarray(signs)
    if signs.size < 2:
        raise DegeneracyError("insufficient transitions: need at least 2 signs")
    return float((signs[1:] == signs[:-1]).mean())


def estimate_moments(magnitudes) -> tuple[float, float]:
    """Sample first and second moments of the magnitudes."""
    magnitudes = np.asarray(magnitudes, dtype=np.float64)
    if magnitudes.size == 0:
        raise ValueError("empty magnitude sample")
    return float(magnitudes.mean()), float((magnitudes ** 2).mean())


def analyze_asset(prices, scale: str = "log",
                  smoothing_pseudocount: float = 0.0) -> VarianceReport:
    """Full per-asset pipeline: increments -> (p_hat, moments) -> variance ratio.

    smoothing_pseudocount adds an add-beta correction to the persistence
    proportion for short series; the default 0 keeps the raw estimator.
    """
    inc = extract_increments(prices, scale=scale)
    if len(inc) < 2:
        raise DegeneracyError("insufficient transitions: need at least 2 nonzero increments")
    n_transitions = len(inc) - 1
    agree = int((inc.signs[1:] == inc.signs[:-1]).sum())
    if smoothing_pseudocount > 0:
        p_hat = (agree + smoothing_pseudocount) / (n_transitions + 2 * smoothing_pseudocount)
    else:
        p_hat = agree / n_transitions
    if p_hat <= 0.0 or p_hat >= 1.0:
        raise DegeneracyError(f"degenerate persistence: p_hat = {p_hat}")
    m1, m2 = estimate_moments(inc.magnitudes)
    if m2 == 0:
        raise DegeneracyError("degenerate magnitudes: m2 = 0")
    ratio = variance_ratio(SignChainParams(p_hat), m1, m2)
    return VarianceReport(
        p_hat=p_hat,
        m1_hat=m1,
        m2_hat=m2,
        sigma_bar_sq=ratio,
        n_increments=len(inc),
        n_transitions=n_transitions,
        dropped_zero_count=inc.dropped_zero_count,
        stale_flag=inc.zero_fraction > STALE_ZERO_FRACTION,
    )
