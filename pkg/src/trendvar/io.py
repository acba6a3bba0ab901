"""CSV interchange: daily close files, tick files, atomic writers.

CSV with a header row is the only interchange format. Floats are written
with shortest-round-trip formatting so a written file re-ingests to
bit-identical values. Malformed rows raise line-numbered errors unless
the permissive flag is set, in which case skips are counted and reported.
"""

from __future__ import annotations

import csv
import os
import tempfile
from dataclasses import dataclass, field
from datetime import date
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DataFormatError
from .series import TickSeries


@dataclass
class DailySeries:
    """One asset's daily closes (dates strictly increasing)."""

    symbol: str
    dates: list = field(repr=False)
    closes: np.ndarray = field(repr=False)
    volumes: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def median_volume(self) -> Optional[float]:
        if self.volumes is None or self.volumes.size == 0:
            return None
        return float(np.median(self.volumes))


def _parse_date(text: str, path: str, lineno: int) -> date:
    try:
        return date.fromisoformat(text.strip())
    except ValueError:
        raise DataFormatError(f"{path}:{lineno}: bad date {text!r}") from None


def _parse_positive(text: str, what: str, path: str, lineno: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise DataFormatError(f"{path}:{lineno}: bad {what} {text!r}") from None
    if not value > 0:
        raise DataFormatError(f"{path}:{lineno}: nonpositive {what} {text!r}")
    return value


def read_daily_file(path: str, permissive: bool = False) -> tuple[list[DailySeries], int]:
    """Read a daily close CSV, wide (date,close[,volume]) or long
    (symbol,date,close[,volume]). Returns (series list, skipped rows)."""
    skipped = 0
    per_symbol: dict[str, dict] = {}
    with open(path, newline="") as fh:
        reader = csv.reader(row for row in fh if not row.startswith("#"))
        try:
            header = [h.strip().lower() for h in next(reader)]
        except StopIteration:
            raise DataFormatError(f"{path}: empty file") from None
        long_format = "symbol" in header
        for col in ("date", "close"):
            if col not in header:
                raise DataFormatError(f"{path}: missing required column {col!r}")
        idx = {name: header.index(name) for name in header}
        default_symbol = os.path.splitext(os.path.basename(path))[0]
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            try:
                symbol = row[idx["symbol"]].strip() if long_format else default_symbol
                d = _parse_date(row[idx["date"]], path, lineno)
                close = _parse_positive(row[idx["close"]], "close", path, lineno)
                volume = None
                if "volume" in idx and row[idx["volume"]].strip():
                    volume = float(row[idx["volume"]])
                    if volume < 0:
                        raise DataFormatError(f"{path}:{lineno}: negative volume")
            except DataFormatError:
                if permissive:
                    skipped += 1
                    continue
                raise
            entry = per_symbol.setdefault(symbol, {"dates": [], "closes": [], "volumes": []})
            if entry["dates"] and d <= entry["dates"][-1]:
                msg = f"{path}:{lineno}: dates not strictly increasing for {symbol}"
                if permissive:
                    skipped += 1
                    continue
                raise DataFormatError(msg)
            entry["dates"].append(d)
            entry["closes"].append(close)
            entry["volumes"].append(volume)
    out = []
    for symbol, entry in per_symbol.items():
        vols = entry["volumes"]
        volumes = None
        if all(v is not None for v in vols) and vols:
            volumes = np.asarray(vols, dtype=np.float64)
        out.append(DailySeries(symbol=symbol, dates=entry["dates"],
                               closes=np.asarray(entry["closes"]), volumes=volumes))
    return out, skipped


def read_tick_file(path: str, permissive: bool = False) -> tuple[TickSeries, int]:
    """Read a tick CSV (timestamp,price).

    Timestamps must be nondecreasing. Rows repeating the previous price
    are collapsed (events are price changes). Returns (series, skipped).
    """
    times: list[float] = []
    prices: list[float] = []
    skipped = 0
    with open(path, newline="") as fh:
        reader = csv.reader(row for row in fh if not row.startswith("#"))
        try:
            header = [h.strip().lower() for h in next(reader)]
        except StopIteration:
            raise DataFormatError(f"{path}: empty file") from None
        t_col = next((header.index(c) for c in ("timestamp", "time") if c in header), None)
        if t_col is None or "price" not in header:
            raise DataFormatError(f"{path}: expected columns timestamp,price")
        p_col = header.index("price")
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            try:
                try:
                    t = float(row[t_col])
                except (ValueError, IndexError):
                    raise DataFormatError(f"{path}:{lineno}: bad timestamp") from None
                price = _parse_positive(row[p_col], "price", path, lineno)
                if times and t < times[-1]:
                    raise DataFormatError(f"{path}:{lineno}: timestamps not sorted")
                if prices and price == prices[-1]:
                    continue  # not a price change
                if times and t == times[-1]:
                    raise DataFormatError(
                        f"{path}:{lineno}: duplicate timestamp with a new price")
            except DataFormatError:
                if permissive:
                    skipped += 1
                    continue
                raise
            times.append(t)
            prices.append(price)
    return TickSeries(times=np.asarray(times), prices=np.asarray(prices)), skipped


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv_atomic(path: str, header: Sequence[str], rows: Iterable[Sequence],
                     footer_comments: Sequence[str] = ()) -> str:
    """Write a CSV via temp-file-plus-rename so readers never see partial output."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for row in rows:
                writer.writerow([_fmt(v) for v in row])
            for comment in footer_comments:
                fh.write(f"# {comment}\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def write_tick_file(path: str, ticks: TickSeries) -> str:
    return write_csv_atomic(path, ["timestamp", "price"],
                            zip(ticks.times, ticks.prices))
