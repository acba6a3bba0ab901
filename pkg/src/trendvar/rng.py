"""Reproducible random-number streams.

Streams are backed by the counter-based Philox generator, keyed by
(master_seed, stream_index). Equal keys reproduce draws bit-for-bit;
distinct stream indices give statistically independent streams, so
replicated Monte Carlo work can be assigned disjoint streams up front
and the results do not depend on execution order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _splitmix64(x: int) -> int:
    x = (x + _GOLDEN) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class RngStream:
    """A named, reproducible stream of randomness.

    Attributes
    ----------
    master_seed : 64-bit master seed shared by a whole run.
    stream_index : index selecting one stream under that seed.
    """

    master_seed: int
    stream_index: int = 0

    def __post_init__(self):
        if not 0 <= self.master_seed <= _MASK64:
            raise ValueError("master_seed must fit in 64 bits")
        if self.stream_index < 0:
            raise ValueError("stream_index must be nonnegative")

    def generator(self) -> np.random.Generator:
        """Fresh numpy Generator positioned at the start of this stream."""
        key = (self.master_seed << 64) | (self.stream_index & _MASK64)
        return np.random.Generator(np.random.Philox(key=key))

    def child(self, k: int) -> "RngStream":
        """Derive a sub-stream; children with distinct k are independent."""
        mixed = _splitmix64((self.stream_index * _GOLDEN + k + 1) & _MASK64)
        return RngStream(self.master_seed, mixed)
