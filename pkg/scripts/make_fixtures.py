"""Regenerate the synthetic CSV fixtures under fixtures/.

The fixtures exercise both pipelines end to end without any external
data: a daily-close universe (with one stale, one thin, and one
dual-listed asset) plus a train/test tick pair generated from the
event-time model itself. Deterministic: rerunning reproduces the same
files byte for byte.
"""

from __future__ import annotations

import os
from datetime import date, timedelta

import numpy as np

from trendvar import (
    RngStream,
    SignChainParams,
    TickSeries,
    build_conditional_empirical,
    simulate_renewal,
)
from trendvar.io import write_csv_atomic, write_tick_file

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")


def business_days(start: date, count: int):
    out = []
    day = start
    while len(out) < count:
        if day.weekday() < 5:
            out.append(day)
        day += timedelta(days=1)
    return out


def make_daily_universe(path: str, n_assets: int = 20, n_days: int = 756):
    """Long-format daily universe with persistence varying across assets."""
    g = np.random.default_rng(20240601)
    days = business_days(date(2021, 1, 4), n_days)
    rows = []
    specs = []
    for i in range(n_assets):
        p = 0.47  # mildly mean-reverting universe
        specs.append((f"SYN{i:02d}", p, 1_000_000 + 50_000 * i))
    specs.append(("STALE", None, 2_000_000))
    specs.append(("THIN", 0.47, 50_000))
    specs.append(("DUALA", 0.47, 3_000_000))
    specs.append(("DUALB", 0.47, 2_500_000))
    for symbol, p, volume in specs:
        if p is None:
            closes = np.full(n_days, 25.0)
        else:
            signs = np.empty(n_days - 1)
            signs[0] = 1 if g.random() < 0.5 else -1
            flips = g.random(n_days - 2) >= p
            signs[1:] = signs[0] * np.cumprod(np.where(flips, -1.0, 1.0))
            mags = g.lognormal(np.log(0.012), 0.4, n_days - 1)
            closes = 100.0 * np.exp(np.concatenate([[0.0], np.cumsum(signs * mags)]))
        vols = np.maximum(g.normal(volume, volume * 0.1, n_days), 1).astype(np.int64)
        for day, close, vol in zip(days, closes, vols):
            rows.append([symbol, day.isoformat(), float(close), int(vol)])
    write_csv_atomic(path, ["symbol", "date", "close", "volume"], rows)


def make_manifest(path: str):
    write_csv_atomic(path, ["symbol", "listing_group", "market_cap", "volume"], [
        ["DUALA", "dual", 8.0e10, ""],
        ["DUALB", "dual", 3.0e10, ""],
    ])


def make_tick_pair(train_path: str, test_path: str, p_star: float = 0.30):
    g = np.random.default_rng(20240602)
    n = 4000
    mags = g.lognormal(np.log(3e-4), 0.25, n)
    taus = g.exponential(10.0, n)
    signs = np.where(g.random(n) < 0.5, 1, -1)
    train = TickSeries(
        times=np.concatenate([[0.0], np.cumsum(taus)]),
        prices=np.exp(np.concatenate([[0.0], np.cumsum(signs * mags)])))
    model = build_conditional_empirical(train)
    # a "test week" drawn from the fitted model at the target persistence
    test = simulate_renewal(SignChainParams(p_star), model, 30_301.0, 1.0, 0,
                            RngStream(20240603))
    write_tick_file(train_path, train)
    write_tick_file(test_path, test)


def main():
    os.makedirs(FIXTURE_DIR, exist_ok=True)
    make_daily_universe(os.path.join(FIXTURE_DIR, "daily_universe.csv"))
    make_manifest(os.path.join(FIXTURE_DIR, "universe_manifest.csv"))
    make_tick_pair(os.path.join(FIXTURE_DIR, "ticks_train.csv"),
                   os.path.join(FIXTURE_DIR, "ticks_test.csv"))
    for name in sorted(os.listdir(FIXTURE_DIR)):
        full = os.path.join(FIXTURE_DIR, name)
        print(f"{name}: {os.path.getsize(full)} bytes")


if __name__ == "__main__":
    main()
