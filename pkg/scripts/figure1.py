"""Plot-ready SwP paths at 7% for the 1970, 1973 and 1976 vintages.

    python scripts/figure1.py [--out results/figure1.csv] [--png results/figure1.png]

The PNG is drawn only if matplotlib is installed.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from rcla.backtest import figure1_csv, figure1_data
from rcla.io import atomic_write_text
from rcla.market_data import SeriesKind, align, load_series

ROOT = Path(__file__).resolve().parents[1]


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--returns", default=ROOT / "data" / "sp500_total_return.csv", type=Path)
    ap.add_argument("--cpi", default=ROOT / "data" / "cpi_u.csv", type=Path)
    ap.add_argument("--rate", default=0.07, type=float)
    ap.add_argument("--out", default=ROOT / "results" / "figure1.csv", type=Path)
    ap.add_argument("--png", default=None, type=Path)
    args = ap.parse_args(argv)

    market = align(
        load_series(args.returns, SeriesKind.TOTAL_RETURN), load_series(args.cpi, SeriesKind.CPI),
        ("1970-01", "2006-12"),
    )
    paths = figure1_data(market, ["1970-01", "1973-01", "1976-01"], args.rate)
    atomic_write_text(args.out, figure1_csv(paths))
    for p in paths:
        status = f"ruined {p.ruin_month}" if p.ruin_month else f"level {p.levels[-1]:.1f} at {p.months()[-1]}"
        print(f"vintage {p.config.vintage} at {args.rate:.0%}: {status}")

    if args.png:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(8, 4.5))
        for p in paths:
            x = [m.year + (m.month - 1) / 12 for m in p.months()]
            ax.plot(x, p.levels, label=f"vintage {p.config.vintage.year}")
        ax.set_xlabel("year")
        ax.set_ylabel(f"SwP index at {args.rate:.0%}")
        ax.legend()
        fig.tight_layout()
        fig.savefig(args.png, dpi=120)


if __name__ == "__main__":
    main()
