"""Build the bundled monthly S&P 500 total-return and CPI-U level series.

Sources are public datasets redistributed inside two PyPI wheels, so no
network access beyond the package index is needed:

* S&P 500 daily closes (Yahoo Finance) from the ``rdatasets`` package,
  dataset ``gt/sp500``; the last close of each month is the month-end price.
* Dividend yield, annualised percent:
  ``wooldridge/volat`` (S&P 500 yield, 1947-01..1993-06), then the CRSP
  value-weighted yield from ``AER/USStocksSW`` rescaled to the S&P level by
  the mean ratio over their 1988-01..1993-06 overlap (1993-07..2002-12),
  then the last value held flat.
* CPI-U, all items, US city average, not seasonally adjusted (BLS series
  ``CUUR0000SA0``) from the SQLite table shipped with the ``cpi`` package.

Monthly total return is ``P[M]/P[M-1] - 1 + y[M]/1200``. Both outputs use
the ``month,level`` schema; the total-return index is 100 at the first month.

Usage::

    pip install --no-deps rdatasets cpi
    python scripts/build_historical_data.py --out-dir data
"""

from __future__ import annotations

import argparse
import math
import sqlite3
from pathlib import Path

import numpy as np

from rcla.market_data import MonthlySeries, SeriesKind, save_series
from rcla.months import YearMonth, month_range

CPI_SERIES = "CUUR0000SA0"
SPLICE = (YearMonth(1988, 1), YearMonth(1993, 6))
CRSP_END = YearMonth(2002, 12)


def month_end_closes() -> dict[YearMonth, float]:
    import rdatasets

    df = rdatasets.data("gt", "sp500").sort_values("date")
    out: dict[YearMonth, float] = {}
    for date, close in zip(df["date"], df["close"]):
        y, m, _ = str(date).split("-")
        out[YearMonth(int(y), int(m))] = float(close)  # later days overwrite
    return out


def dividend_yield(last: YearMonth) -> dict[YearMonth, float]:
    import rdatasets

    volat = rdatasets.data("wooldridge", "volat")
    dy: dict[YearMonth, float] = {}
    for d, y in zip(volat["date"], volat["divyld"]):
        # dates are stored as year + month/100, e.g. 1947.01
        year = int(d)
        month = int(round((d - year) * 100))
        dy[YearMonth(year, month)] = float(y)

    sw = rdatasets.data("AER", "USStocksSW")
    crsp = {
        YearMonth(1931, 1) + i: math.exp(v / 100.0) * 100.0 for i, v in enumerate(sw["dividend"])
    }
    overlap = month_range(*SPLICE)
    scale = float(np.mean([dy[m] / crsp[m] for m in overlap]))
    for m in month_range(SPLICE[1] + 1, CRSP_END):
        dy[m] = crsp[m] * scale
    held = dy[CRSP_END]
    for m in month_range(CRSP_END + 1, last):
        dy[m] = held
    return dy


def cpi_levels(db: Path, first: YearMonth, last: YearMonth) -> MonthlySeries:
    with sqlite3.connect(db) as con:
        rows = con.execute(
            "select year, period, value from indexes where series = ? and period != 'M13'",
            (CPI_SERIES,),
        ).fetchall()
    by_month = {YearMonth(int(y), int(p[1:])): float(v) for y, p, v in rows}
    return MonthlySeries(first, tuple(by_month[m] for m in month_range(first, last)), SeriesKind.CPI)


def total_return_levels(first: YearMonth, last: YearMonth) -> MonthlySeries:
    closes = month_end_closes()
    dy = dividend_yield(last)
    levels = [100.0]
    for m in month_range(first + 1, last):
        r = closes[m] / closes[m - 1] - 1.0 + dy[m] / 1200.0
        levels.append(levels[-1] * (1.0 + r))
    return MonthlySeries(first, tuple(round(v, 6) for v in levels), SeriesKind.TOTAL_RETURN)


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="data")
    ap.add_argument("--first", default="1950-01")
    ap.add_argument("--last", default="2007-12")
    args = ap.parse_args(argv)

    import cpi

    first, last = YearMonth.parse(args.first), YearMonth.parse(args.last)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    save_series(total_return_levels(first, last), out / "sp500_total_return.csv")
    db = Path(cpi.__file__).parent / "cpi.db"
    save_series(cpi_levels(db, first, last), out / "cpi_u.csv")
    print(f"wrote {out}/sp500_total_return.csv and {out}/cpi_u.csv ({first}..{last})")


if __name__ == "__main__":
    main()
