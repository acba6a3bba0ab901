"""Command-line surface: simulate, variance-curve, analyze, hf-eval.

Every command writes plot-ready CSV tables (one column per curve) and
honors --seed for byte-identical reruns. Exit codes: 0 success, 2 usage
error, 3 data error, 4 numerical degeneracy.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .conditional import ConditionalEmpirical, BUCKET_KEYS
from .config import RunConfig, load_default_config
from .errors import DataFormatError, DegeneracyError
from .estimation import analyze_asset
from .forecast import argmin_p, sweep_p
from .io import read_daily_file, read_tick_file, write_csv_atomic
from .params import Empirical, PointMass, SignChainParams
from .rng import RngStream
from .simulate import (
    renewal_terminals,
    simulate_crw,
    simulate_renewal,
    simulate_rw,
    simulate_semiparametric,
)
from .validation import AssetRecord, filter_universe, validate_asset

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_DEGENERATE = 4


def _parse_grid(spec: str) -> np.ndarray:
    try:
        start, stop, step = (float(part) for part in spec.split(":"))
    except ValueError:
        raise ValueError(f"bad grid spec {spec!r}, expected start:stop:step") from None
    if step <= 0 or not (0 < start <= stop < 1):
        raise ValueError(f"grid {spec!r} must lie inside (0, 1) with positive step")
    n = int(round((stop - start) / step)) + 1
    grid = start + step * np.arange(n)
    return grid[(grid > 0) & (grid < 1)]


def _parse_floats(spec: str, what: str) -> np.ndarray:
    try:
        values = np.asarray([float(v) for v in spec.split(",") if v.strip()])
    except ValueError:
        raise ValueError(f"bad {what} list {spec!r}") from None
    if values.size == 0:
        raise ValueError(f"empty {what} list")
    return values


def _magnitude_model(spec: str):
    values = _parse_floats(spec, "magnitude")
    if values.size == 1:
        return PointMass(float(values[0]))
    return Empirical(values)


def _degenerate_joint(mags: np.ndarray, taus: np.ndarray, scale: str) -> ConditionalEmpirical:
    if mags.size != taus.size:
        raise ValueError("--mag and --tau lists must have equal length")
    return ConditionalEmpirical(
        buckets={key: (mags.copy(), taus.copy()) for key in BUCKET_KEYS}, scale=scale
    )


def _renewal_joint(args, cfg: RunConfig) -> ConditionalEmpirical:
    from .conditional import build_conditional_empirical

    if args.train:
        ticks, _ = read_tick_file(args.train)
        return build_conditional_empirical(ticks, scale=args.scale or cfg.scale)
    if args.mag and args.tau:
        return _degenerate_joint(_parse_floats(args.mag, "magnitude"),
                                 _parse_floats(args.tau, "tau"),
                                 args.scale or cfg.scale)
    raise ValueError("renewal simulation needs --train or both --mag and --tau")


def cmd_simulate(args, cfg: RunConfig) -> int:
    if args.reps < 1:
        raise ValueError("--reps must be >= 1")
    seed = args.seed if args.seed is not None else cfg.master_seed
    rng = RngStream(seed)
    kind = args.kind

    if kind == "renewal":
        joint = _renewal_joint(args, cfg)
        params = SignChainParams(args.p)
        horizon = args.horizon_s or cfg.horizon_s
        if args.reps == 1:
            ticks = simulate_renewal(params, joint, horizon, args.start_price,
                                     args.start_sign, rng)
            write_csv_atomic(args.out, ["timestamp", "price"],
                             zip(ticks.times, ticks.prices))
        else:
            sums, counts = renewal_terminals(params, joint, horizon, args.reps,
                                             rng, start_sign=args.start_sign)
            if joint.scale == "log":
                terminal = np.exp(np.log(args.start_price) + sums)
            else:
                terminal = args.start_price + sums
            write_csv_atomic(args.out, ["replicate", "terminal_price", "n_events"],
                             zip(range(args.reps), terminal, counts))
        print(f"wrote {args.out}")
        return EXIT_OK

    def one_path(k: int):
        child = rng.child(k)
        if kind == "rw":
            return simulate_rw(args.steps, child)
        if kind == "crw":
            return simulate_crw(SignChainParams(args.p), args.steps, child)
        mag = _magnitude_model(args.mag or "1")
        return simulate_semiparametric(SignChainParams(args.p), mag, args.steps, child)

    if args.reps == 1:
        path = one_path(0)
        write_csv_atomic(args.out, ["step", "value"],
                         zip(range(args.steps + 1), path.values))
    else:
        total = np.zeros(args.steps + 1)
        total_sq = np.zeros(args.steps + 1)
        for k in range(args.reps):
            values = one_path(k).values
            total += values
            total_sq += values * values
        mean = total / args.reps
        var = np.maximum(total_sq / args.reps - mean * mean, 0.0)
        write_csv_atomic(args.out, ["step", "mean", "std", "variance"],
                         zip(range(args.steps + 1), mean, np.sqrt(var), var))
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_variance_curve(args, cfg: RunConfig) -> int:
    from .simulate import crw_terminals

    grid = _parse_grid(args.p_grid)
    seed = args.seed if args.seed is not None else cfg.master_seed
    rng = RngStream(seed)
    rows = []
    for i, p in enumerate(grid):
        params = SignChainParams(float(p))
        analytic = params.p / (1.0 - params.p)
        row = [p, analytic]
        if args.mode in ("montecarlo", "both"):
            terminals = crw_terminals(params, args.n, args.reps, rng.child(i))
            row.append(terminals.var() / args.n)
        rows.append(row)
    header = ["p", "ratio_analytic"]
    if args.mode in ("montecarlo", "both"):
        header.append("ratio_mc")
    write_csv_atomic(args.out, header, rows)
    print(f"wrote {args.out}")
    return EXIT_OK


def _load_manifest(path: str) -> dict[str, dict]:
    import csv as _csv

    meta: dict[str, dict] = {}
    with open(path, newline="") as fh:
        for row in _csv.DictReader(fh):
            symbol = row["symbol"].strip()
            meta[symbol] = {
                "listing_group": (row.get("listing_group") or "").strip() or None,
                "market_cap": float(row["market_cap"]) if row.get("market_cap") else None,
                "volume": float(row["volume"]) if row.get("volume") else None,
            }
    return meta


def cmd_analyze(args, cfg: RunConfig) -> int:
    series = []
    skipped = 0
    for path in args.files:
        got, skip = read_daily_file(path, permissive=args.permissive)
        series.extend(got)
        skipped += skip
    if not series:
        raise DataFormatError("no assets found in input files")
    manifest = _load_manifest(args.manifest) if args.manifest else {}
    records = []
    for s in series:
        meta = manifest.get(s.symbol, {})
        volume = meta.get("volume") if meta.get("volume") is not None else s.median_volume
        records.append(AssetRecord(symbol=s.symbol, prices=s.closes, volume=volume,
                                   listing_group=meta.get("listing_group"),
                                   market_cap=meta.get("market_cap")))
    volume_min = args.volume_min if args.volume_min is not None else cfg.volume_min
    stale_max = args.stale_max if args.stale_max is not None else cfg.stale_fraction_max
    decisions = {d.symbol: d for d in
                 filter_universe(records, volume_min=volume_min,
                                 stale_fraction_max=stale_max)}
    scale = args.scale or cfg.scale
    rows = []
    sigmas = []
    for s in series:
        d = decisions[s.symbol]
        if not d.kept:
            rows.append([s.symbol, d.reason, "", "", "", "", "", "", "", ""])
            continue
        try:
            report = analyze_asset(s.closes, scale=scale)
            checks = validate_asset(s.closes)
        except DegeneracyError as exc:
            rows.append([s.symbol, f"degenerate:{exc}", "", "", "", "", "", "", "", ""])
            continue
        sigmas.append(report.sigma_bar_sq)
        rows.append([s.symbol, "ok", report.p_hat, report.m1_hat, report.m2_hat,
                     report.sigma_bar_sq, checks.symmetry.p_value,
                     checks.sign_magnitude_corr[1], report.n_increments,
                     report.dropped_zero_count])
    if not sigmas:
        raise DataFormatError("empty surviving universe")
    q1, med, q3 = np.percentile(sigmas, [25, 50, 75])
    footer = [
        f"n_analyzed = {len(sigmas)}",
        f"median_sigma_bar_sq = {med!r}",
        f"quartiles_sigma_bar_sq = {q1!r} / {q3!r}",
    ]
    if skipped:
        footer.append(f"skipped_rows = {skipped}")
    write_csv_atomic(args.out,
                     ["symbol", "status", "p_hat", "m1_hat", "m2_hat",
                      "sigma_bar_sq", "symmetry_p_value", "corr_p_value",
                      "n_increments", "dropped_zeros"],
                     rows, footer_comments=footer)
    print(f"analyzed {len(sigmas)} assets; median sigma_bar_sq = {med:.4f} "
          f"(quartiles {q1:.4f} / {q3:.4f})")
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_hf_eval(args, cfg: RunConfig) -> int:
    train, train_skipped = read_tick_file(args.train, permissive=args.permissive)
    test, test_skipped = read_tick_file(args.test, permissive=args.permissive)
    if len(train) < 3 or len(test) < 2:
        raise DataFormatError(
            f"insufficient ticks: train has {len(train)} rows, test has {len(test)}")
    grid = _parse_grid(args.p_grid) if args.p_grid else np.round(
        np.arange(cfg.p_grid_start, cfg.p_grid_stop + cfg.p_grid_step / 2,
                  cfg.p_grid_step), 12)
    seed = args.seed if args.seed is not None else cfg.master_seed
    curve = sweep_p(train, test, grid,
                    horizon=args.horizon_s or cfg.horizon_s,
                    stride=args.stride_s or cfg.stride_s,
                    n_sims=args.sims or cfg.n_sims,
                    rng=RngStream(seed),
                    scale=args.scale or cfg.scale,
                    n_sample_groups=args.sample_groups)
    best = argmin_p(curve)
    i = int(np.argmin(np.abs(curve.p - best)))
    footer = [f"argmin_p = {best!r}", f"ks_at_argmin = {curve.ks_distance[i]!r}"]
    if train_skipped or test_skipped:
        footer.append(f"skipped_rows = {train_skipped + test_skipped}")
    write_csv_atomic(args.out, ["p", "ks_distance", "variance_rate", "n_forecasts"],
                     zip(curve.p, curve.ks_distance, curve.variance_rate,
                         curve.n_forecasts),
                     footer_comments=footer)
    print(f"argmin_p = {best:.4f} ks_distance = {curve.ks_distance[i]:.6f} "
          f"n_forecasts = {int(curve.n_forecasts[i])}")
    print(f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trendvar",
        description="Persistent-walk price models: simulation, estimation, calibration",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="simulate model paths or replicate summaries")
    sim.add_argument("--kind", required=True, choices=["rw", "crw", "semiparam", "renewal"])
    sim.add_argument("--steps", type=int, default=1000)
    sim.add_argument("--reps", type=int, default=1)
    sim.add_argument("--p", type=float, default=0.5)
    sim.add_argument("--mag", help="comma-separated magnitudes (1 value = point mass)")
    sim.add_argument("--tau", help="comma-separated inter-event times (renewal)")
    sim.add_argument("--train", help="tick CSV to fit the renewal joint model on")
    sim.add_argument("--horizon-s", type=float, dest="horizon_s")
    sim.add_argument("--start-price", type=float, default=1.0, dest="start_price")
    sim.add_argument("--start-sign", type=int, default=0, choices=[-1, 0, 1],
                     dest="start_sign")
    sim.add_argument("--scale", choices=["log", "linear"])
    sim.add_argument("--seed", type=int)
    sim.add_argument("--out", required=True)
    sim.set_defaults(func=cmd_simulate)

    curve = sub.add_parser("variance-curve",
                           help="analytic and Monte Carlo variance ratio over p")
    curve.add_argument("--p-grid", default="0.2:0.8:0.05", dest="p_grid")
    curve.add_argument("--n", type=int, default=200)
    curve.add_argument("--mode", choices=["analytic", "montecarlo", "both"],
                       default="both")
    curve.add_argument("--reps", type=int, default=100_000)
    curve.add_argument("--seed", type=int)
    curve.add_argument("--out", required=True)
    curve.set_defaults(func=cmd_variance_curve)

    analyze = sub.add_parser("analyze", help="per-asset persistence and variance report")
    analyze.add_argument("files", nargs="+", help="daily close CSV files")
    analyze.add_argument("--scale", choices=["log", "linear"])
    analyze.add_argument("--volume-min", type=float, dest="volume_min")
    analyze.add_argument("--stale-max", type=float, dest="stale_max")
    analyze.add_argument("--manifest", help="CSV with symbol,listing_group,market_cap,volume")
    analyze.add_argument("--permissive", action="store_true")
    analyze.add_argument("--seed", type=int)
    analyze.add_argument("--out", required=True)
    analyze.set_defaults(func=cmd_analyze)

    hf = sub.add_parser("hf-eval", help="calibration sweep over p for tick data")
    hf.add_argument("--train", required=True)
    hf.add_argument("--test", required=True)
    hf.add_argument("--p-grid", dest="p_grid")
    hf.add_argument("--horizon-s", type=float, dest="horizon_s")
    hf.add_argument("--stride-s", type=float, dest="stride_s")
    hf.add_argument("--sims", type=int)
    hf.add_argument("--sample-groups", type=int, default=1, dest="sample_groups")
    hf.add_argument("--scale", choices=["log", "linear"])
    hf.add_argument("--permissive", action="store_true")
    hf.add_argument("--seed", type=int)
    hf.add_argument("--out", required=True)
    hf.set_defaults(func=cmd_hf_eval)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_default_config()
        return args.func(args, cfg)
    except DataFormatError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (DegeneracyError, RuntimeError) as exc:
        print(f"degeneracy: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
