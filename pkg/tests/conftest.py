import numpy as np
import pytest

from trendvar import ConditionalEmpirical, RngStream
from trendvar.conditional import BUCKET_KEYS


@pytest.fixture
def rng():
    return RngStream(12345)


def degenerate_joint(mag: float = 1.0, tau: float = 1.0,
                     scale: str = "log") -> ConditionalEmpirical:
    """Joint model with a single (mag, tau) atom in every bucket."""
    return ConditionalEmpirical(
        buckets={k: ([mag], [tau]) for k in BUCKET_KEYS}, scale=scale)


def iid_joint(mags, taus, scale: str = "log") -> ConditionalEmpirical:
    """All four buckets share the same sample: signs carry no information
    about (magnitude, tau), so inter-event times are independent of the
    sign chain."""
    mags = np.asarray(mags, dtype=np.float64)
    taus = np.asarray(taus, dtype=np.float64)
    return ConditionalEmpirical(
        buckets={k: (mags, taus) for k in BUCKET_KEYS}, scale=scale)


def variance_se(sample: np.ndarray) -> float:
    """Standard error of the sample variance (delta method, 4th moment)."""
    v = sample.var()
    m4 = ((sample - sample.mean()) ** 4).mean()
    return float(np.sqrt(max(m4 - v * v, 0.0) / sample.size))
