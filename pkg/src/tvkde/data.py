"""Price CSV loading, return computation, and date/index resolution."""

from __future__ import annotations

import datetime as dt
import os
from collections import Counter
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .errors import DataError

__all__ = [
    "PriceSeries",
    "ReturnSeries",
    "load_prices",
    "to_returns",
    "resolve_t0",
    "save_returns",
]

MIN_USABLE_ROWS = 30

DATA_DIR_ENV = "TVKDE_DATA_DIR"


@dataclass(frozen=True)
class PriceSeries:
    """Cleaned close prices: strictly increasing dates, positive closes."""

    dates: tuple
    closes: np.ndarray
    dropped_rows: int = 0

    def __post_init__(self) -> None:
        closes = np.asarray(self.closes, dtype=float)
        if len(self.dates) != closes.size:
            raise DataError("dates and closes must have equal length")
        if np.any(closes <= 0):
            raise DataError("closes must be positive")
        object.__setattr__(self, "closes", closes)

    def to_csv(self, path, date_col: str = "Date",
               close_col: str = "Close") -> None:
        pd.DataFrame({date_col: [d.isoformat() for d in self.dates],
                      close_col: self.closes}).to_csv(path, index=False)


@dataclass(frozen=True)
class ReturnSeries:
    """Returns aligned to the second price date onward."""

    dates: tuple
    returns: np.ndarray
    return_kind: str = "log"

    def __post_init__(self) -> None:
        rets = np.asarray(self.returns, dtype=float)
        if len(self.dates) != rets.size:
            raise DataError("dates and returns must have equal length")
        object.__setattr__(self, "returns", rets)

    def __len__(self) -> int:
        return self.returns.size


def _parse_dates(raw: pd.Series) -> list[dt.date]:
    """ISO-8601 or MM/DD/YYYY, auto-detected from the first entry."""
    first = str(raw.iloc[0])
    fmt = "%m/%d/%Y" if "/" in first else None
    parsed = pd.to_datetime(raw, format=fmt)
    return [ts.date() for ts in parsed]


def load_prices(path, date_col: str = "Date",
                close_col: str = "Close",
                min_rows: int = MIN_USABLE_ROWS) -> PriceSeries:
    """Load and clean a price CSV.

    Rows with missing or non-positive closes are dropped (counted in
    ``dropped_rows``); duplicate dates are an error.  Fewer than
    ``min_rows`` usable rows is also an error; lower it to load short
    demonstration files.
    """
    if not os.path.isabs(str(path)) and not os.path.exists(path):
        root = os.environ.get(DATA_DIR_ENV)
        if root and os.path.exists(os.path.join(root, str(path))):
            path = os.path.join(root, str(path))
    if not os.path.exists(path):
        raise DataError(f"input file not found: {path}")
    try:
        frame = pd.read_csv(path)
    except Exception as exc:
        raise DataError(f"unparseable CSV {path}: {exc}") from exc
    for col in (date_col, close_col):
        if col not in frame.columns:
            raise DataError(f"missing column {col!r} in {path}")

    closes = pd.to_numeric(frame[close_col], errors="coerce")
    usable = closes.notna() & (closes > 0)
    dropped = int((~usable).sum())
    frame = frame[usable]
    if len(frame) < min_rows:
        raise DataError(
            f"only {len(frame)} usable rows in {path}; need >= {min_rows}")

    dates = _parse_dates(frame[date_col])
    order = np.argsort(dates, kind="stable")
    dates = [dates[i] for i in order]
    values = closes[usable].to_numpy()[order]

    counts = Counter(dates)
    dupes = sorted(d for d, c in counts.items() if c > 1)
    if dupes:
        raise DataError(f"duplicate dates in {path}: "
                        + ", ".join(d.isoformat() for d in dupes))
    return PriceSeries(dates=tuple(dates), closes=values,
                       dropped_rows=dropped)


def to_returns(p: PriceSeries, kind: str = "log") -> ReturnSeries:
    if len(p.dates) < 2:
        raise DataError("need at least 2 prices to compute returns")
    ratios = p.closes[1:] / p.closes[:-1]
    if kind == "log":
        rets = np.log(ratios)
    elif kind == "simple":
        rets = ratios - 1.0
    else:
        raise DataError(f"unknown return kind: {kind!r}")
    return ReturnSeries(dates=p.dates[1:], returns=rets, return_kind=kind)


def resolve_t0(series: ReturnSeries, spec) -> int:
    """Resolve a date or literal index into a 1-based return index.

    For a date, returns the index of the first return date >= that date, so
    the warm-up sample ``returns[:t0]`` runs through that date inclusive.
    """
    if isinstance(spec, (int, np.integer)):
        idx = int(spec)
        if not (1 <= idx <= len(series)):
            raise DataError(f"t0 index {idx} out of range 1..{len(series)}")
        return idx
    if isinstance(spec, str):
        spec = dt.date.fromisoformat(spec)
    if not isinstance(spec, dt.date):
        raise DataError(f"cannot resolve t0 from {spec!r}")
    for i, d in enumerate(series.dates):
        if d >= spec:
            return i + 1
    raise DataError(f"t0 date {spec.isoformat()} is after the last return date")


def save_returns(series: ReturnSeries, path) -> None:
    pd.DataFrame({"Date": [d.isoformat() for d in series.dates],
                  "Return": series.returns}).to_csv(path, index=False)
