"""Run configuration with JSON-file defaults.

The environment variable TRENDVAR_CONFIG may point at a JSON file whose
keys match RunConfig fields; CLI flags override those values.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields

CONFIG_ENV_VAR = "TRENDVAR_CONFIG"


@dataclass
class RunConfig:
    master_seed: int = 0
    n_sims: int = 100_000
    p_grid_start: float = 0.05
    p_grid_stop: float = 0.95
    p_grid_step: float = 0.01
    horizon_s: float = 300.0
    stride_s: float = 300.0
    volume_min: float = 100_000.0
    stale_fraction_max: float = 0.05
    scale: str = "log"

    def __post_init__(self):
        if self.n_sims < 1:
            raise ValueError("n_sims must be positive")
        if self.horizon_s <= 0 or self.stride_s <= 0:
            raise ValueError("horizon and stride must be positive")
        if not (0 < self.p_grid_start <= self.p_grid_stop < 1):
            raise ValueError("p grid must lie inside (0, 1)")
        if self.p_grid_step <= 0:
            raise ValueError("p grid step must be positive")
        if self.scale not in ("log", "linear"):
            raise ValueError("scale must be 'log' or 'linear'")


def load_default_config() -> RunConfig:
    """RunConfig from TRENDVAR_CONFIG if set, else built-in defaults."""
    path = os.environ.get(CONFIG_ENV_VAR)
    if not path:
        return RunConfig()
    with open(path) as fh:
        data = json.load(fh)
    known = {f.name for f in fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config keys in {path}: {sorted(unknown)}")
    return RunConfig(**data)
