"""Shared fixtures: RNG and a small synthetic price CSV."""

from __future__ import annotations

import datetime as dt

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def _business_days(start: dt.date, n: int) -> list[dt.date]:
    out = []
    day = start
    while len(out) < n:
        if day.weekday() < 5:
            out.append(day)
        day += dt.timedelta(days=1)
    return out


@pytest.fixture(scope="session")
def price_csv(tmp_path_factory):
    """A 320-row geometric random walk written as Date,Close."""
    gen = np.random.default_rng(7)
    n = 320
    rets = gen.normal(0.0003, 0.012, n - 1)
    closes = 100.0 * np.exp(np.concatenate([[0.0], np.cumsum(rets)]))
    dates = _business_days(dt.date(2020, 1, 2), n)
    path = tmp_path_factory.mktemp("data") / "prices.csv"
    with open(path, "w") as fh:
        fh.write("Date,Close\n")
        for d, c in zip(dates, closes):
            fh.write(f"{d.isoformat()},{c:.6f}\n")
    return path
