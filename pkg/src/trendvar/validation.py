"""Model-validation tests and universe filtering.

Two per-asset model checks: the magnitude distribution of up moves
should match that of down moves (two-sample Kolmogorov-Smirnov), and
magnitudes should be uncorrelated with signs (Pearson). Plus the
filtering rules applied to a raw asset universe before analysis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import stats as _sps

from .errors import DataFormatError


@dataclass(frozen=True)
class KsResult:
    statistic: float
    p_value: float
    n_a: int
    n_b: int


@dataclass(frozen=True)
class ValidationReport:
    symmetry: KsResult
    sign_magnitude_corr: tuple[float, float]
    passed_at_5pct: tuple[bool, bool]


@dataclass(frozen=True)
class AssetRecord:
    """One raw universe entry. market_cap breaks duplicate-listing ties;
    when absent, volume is used instead."""

    symbol: str
    prices: np.ndarray = field(repr=False)
    volume: Optional[float] = None
    listing_group: Optional[str] = None
    market_cap: Optional[float] = None


@dataclass(frozen=True)
class FilterDecision:
    symbol: str
    kept: bool
    reason: str  # ok | low_volume | stale_prices | duplicate_listing

    def __post_init__(self):
        if self.reason not in ("ok", "low_volume", "stale_prices", "duplicate_listing"):
            raise ValueError(f"unknown reason {self.reason!r}")
        if self.kept != (self.reason == "ok"):
            raise ValueError("kept must hold exactly when reason is 'ok'")


def kolmogorov_sf(lam: float) -> float:
    """Asymptotic Kolmogorov survival function 2*sum (-1)^(k-1) exp(-2 k^2 lam^2).

    Series truncated once terms drop below 1e-10. Inaccurate below
    effective sample sizes of roughly 25.
    """
    if lam <= 0.04:
        return 1.0
    total, sign, k = 0.0, 1.0, 1
    while True:
        term = np.exp(-2.0 * k * k * lam * lam)
        total += sign * term
        if term < 1e-10:
            break
        sign = -sign
        k += 1
    return float(min(max(2.0 * total, 0.0), 1.0))


def ks_statistic(a: np.ndarray, b: np.ndarray) -> float:
    """Exact sup distance between the two empirical distribution functions."""
    a = np.sort(a)
    b = np.sort(b)
    grid = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, grid, side="right") / a.size
    cdf_b = np.searchsorted(b, grid, side="right") / b.size
    return float(np.abs(cdf_a - cdf_b).max())


def ks_two_sample(a, b) -> KsResult:
    """Two-sample KS test with the asymptotic Kolmogorov p-value.

    The argument uses the effective size n_a*n_b/(n_a+n_b) with the
    standard small-sample adjustment of the scaling (en + 0.12 + 0.11/en),
    which keeps the 5% rejection rate close to nominal at moderate sizes.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.size == 0 or b.size == 0:
        raise ValueError("both samples must be nonempty")
    d = ks_statistic(a, b)
    en = np.sqrt(a.size * b.size / (a.size + b.size))
    p = kolmogorov_sf((en + 0.12 + 0.11 / en) * d)
    return KsResult(statistic=d, p_value=p, n_a=int(a.size), n_b=int(b.size))


def symmetry_test(prices) -> KsResult:
    """Up-move magnitudes vs down-move magnitudes of the log increments.

    Zero increments belong to both sides (non-negative vs non-positive),
    so they enter both samples.
    """
    prices = np.asarray(prices, dtype=np.float64)
    if prices.size < 2 or (prices <= 0).any():
        raise DataFormatError("need at least 2 positive prices")
    diffs = np.diff(np.log(prices))
    up = diffs[diffs >= 0]
    down = -diffs[diffs <= 0]
    if up.size == 0 or down.size == 0:
        raise DataFormatError("one-sided series: cannot test symmetry")
    return ks_two_sample(up, down)


def pearson_corr_test(x, y) -> tuple[float, float]:
    """Sample Pearson correlation with the two-sided t-test p-value."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.size != y.size or x.size < 3:
        raise ValueError("need equal-length samples of size >= 3")
    sx, sy = x.std(), y.std()
    if sx == 0 or sy == 0:
        raise ValueError("zero variance: correlation undefined for constant input")
    r = float(np.corrcoef(x, y)[0, 1])
    r = min(max(r, -1.0), 1.0)
    n = x.size
    if abs(r) == 1.0:
        return r, 0.0
    t = r * np.sqrt((n - 2) / (1.0 - r * r))
    p = 2.0 * float(_sps.t.sf(abs(t), n - 2))
    return r, p


def validate_asset(prices) -> ValidationReport:
    """Run both model checks on one asset's price series."""
    sym = symmetry_test(prices)
    prices = np.asarray(prices, dtype=np.float64)
    diffs = np.diff(np.log(prices))
    nz = diffs[diffs != 0]
    r, p = pearson_corr_test(np.abs(nz), np.sign(nz))
    return ValidationReport(
        symmetry=sym,
        sign_magnitude_corr=(r, p),
        passed_at_5pct=(sym.p_value >= 0.05, p >= 0.05),
    )


def _zero_fraction(prices: np.ndarray) -> float:
    diffs = np.diff(np.asarray(prices, dtype=np.float64))
    return float((diffs == 0).mean()) if diffs.size else 1.0


def filter_universe(assets: Sequence[AssetRecord], volume_min: float = 100_000,
                    stale_fraction_max: float = 0.05) -> list[FilterDecision]:
    """Apply the universe filters: volume floor, staleness, duplicate listings.

    Within a listing group only the largest member survives (market cap,
    falling back to volume; ties broken lexicographically by symbol).
    Checks apply in order low_volume, stale_prices, duplicate_listing, so
    each dropped asset gets exactly one reason.
    """
    if not assets:
        raise ValueError("empty universe")
    decisions: dict[str, FilterDecision] = {}
    survivors: list[AssetRecord] = []
    for rec in assets:
        if rec.volume is not None and rec.volume < volume_min:
            decisions[rec.symbol] = FilterDecision(rec.symbol, False, "low_volume")
        elif _zero_fraction(rec.prices) > stale_fraction_max:
            decisions[rec.symbol] = FilterDecision(rec.symbol, False, "stale_prices")
        else:
            survivors.append(rec)
    groups: dict[str, list[AssetRecord]] = {}
    for rec in survivors:
        key = rec.listing_group if rec.listing_group else f"__solo__{rec.symbol}"
        groups.setdefault(key, []).append(rec)
    for members in groups.values():
        def size_key(r: AssetRecord):
            cap = r.market_cap if r.market_cap is not None else (r.volume or 0.0)
            return (-cap, r.symbol)
        members = sorted(members, key=size_key)
        decisions[members[0].symbol] = FilterDecision(members[0].symbol, True, "ok")
        for rec in members[1:]:
            decisions[rec.symbol] = FilterDecision(rec.symbol, False, "duplicate_listing")
    return [decisions[rec.symbol] for rec in assets]
