"""Historical ruin-date table for the 1970/73/76/79 vintages at 4%..9%.

    python scripts/reproduce_table1.py [--out results/table1.csv]

Prints the table next to the published one and the month difference per cell.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from rcla.backtest import table1
from rcla.market_data import SeriesKind, align, load_series
from rcla.months import YearMonth

ROOT = Path(__file__).resolve().parents[1]
VINTAGES = ("1970-01", "1973-01", "1976-01", "1979-01")
RATES = (0.04, 0.05, 0.06, 0.07, 0.08, 0.09)
PUBLISHED = {
    0.04: (None, None, None, None),
    0.05: ("1994-04", "1990-10", None, None),
    0.06: ("1986-01", "1985-05", None, None),
    0.07: ("1983-01", "1983-01", None, None),
    0.08: ("1981-06", "1981-10", "2003-05", None),
    0.09: ("1980-02", "1980-09", "1993-08", None),
}


def load_market(returns: Path, cpi: Path, end: str = "2006-12"):
    r = load_series(returns, SeriesKind.TOTAL_RETURN)
    c = load_series(cpi, SeriesKind.CPI)
    return align(r, c, (VINTAGES[0], end))


def compare(table) -> list[tuple[float, str, str, str, object]]:
    rows = []
    for s in RATES:
        for v, pub in zip(VINTAGES, PUBLISHED[s]):
            got = table.cell(s, v)
            if pub is None:
                diff = "ok" if got is None else "unexpected ruin"
            elif got is None:
                diff = "missing ruin"
            else:
                diff = got - YearMonth.parse(pub)
            rows.append((s, v, pub or "-", str(got) if got else "-", diff))
    return rows


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--returns", default=ROOT / "data" / "sp500_total_return.csv", type=Path)
    ap.add_argument("--cpi", default=ROOT / "data" / "cpi_u.csv", type=Path)
    ap.add_argument("--out", default=ROOT / "results" / "table1.csv", type=Path)
    args = ap.parse_args(argv)
    table = table1(load_market(args.returns, args.cpi), VINTAGES, RATES)
    table.save(args.out)
    print(table.pretty())
    print()
    print(f"{'rate':>5} {'vintage':>8} {'published':>9} {'computed':>9}  diff (months)")
    for s, v, pub, got, diff in compare(table):
        print(f"{s:5.0%} {v:>8} {pub:>9} {got:>9}  {diff}")


if __name__ == "__main__":
    main()
