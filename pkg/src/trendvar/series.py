"""Price paths (discrete time) and tick series (event time)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DataFormatError


@dataclass(frozen=True)
class PricePath:
    """A discrete-time path of prices, values[0] == start_value."""

    values: np.ndarray = field(repr=False)
    start_value: float = 0.0

    def __post_init__(self):
        arr = np.ascontiguousarray(np.asarray(self.values, dtype=np.float64))
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("path must contain at least the starting value")
        if arr[0] != self.start_value:
            raise ValueError("values[0] must equal start_value")
        object.__setattr__(self, "values", arr)

    @property
    def n_steps(self) -> int:
        return self.values.size - 1

    def increments(self) -> np.ndarray:
        return np.diff(self.values)


@dataclass(frozen=True)
class TickSeries:
    """An event-time series of price changes.

    Every event is an actual change: consecutive prices differ, and the
    timestamps are strictly increasing.
    """

    times: np.ndarray = field(repr=False)
    prices: np.ndarray = field(repr=False)

    def __post_init__(self):
        t = np.ascontiguousarray(np.asarray(self.times, dtype=np.float64))
        p = np.ascontiguousarray(np.asarray(self.prices, dtype=np.float64))
        if t.ndim != 1 or p.ndim != 1 or t.size != p.size:
            raise ValueError("times and prices must be 1-d arrays of equal length")
        if t.size:
            if (t < 0).any():
                raise DataFormatError("event times must be nonnegative")
            if t.size > 1 and not (np.diff(t) > 0).all():
                raise DataFormatError("event times must be strictly increasing")
            if (p <= 0).any():
                raise DataFormatError("prices must be positive")
            if t.size > 1 and (np.diff(p) == 0).any():
                raise DataFormatError("consecutive prices must differ (events are price changes)")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "prices", p)

    def __len__(self) -> int:
        return self.times.size

    @property
    def span(self) -> float:
        if len(self) < 2:
            return 0.0
        return float(self.times[-1] - self.times[0])
