"""Historical ruin-date table and trajectory data for SwP indices."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .io import atomic_write_text
from .market_data import AlignedMarket
from .months import YearMonth, as_month
from .swp_index import SwpConfig, SwpIndexPath, build_path


@dataclass(frozen=True)
class RuinTable:
    rates: tuple[float, ...]
    vintages: tuple[YearMonth, ...]
    cells: tuple[tuple[Optional[YearMonth], ...], ...]  # cells[i][j]: rate i, vintage j
    horizon_end: YearMonth

    def cell(self, rate: float, vintage: Union[str, YearMonth]) -> Optional[YearMonth]:
        return self.cells[self.rates.index(rate)][self.vintages.index(as_month(vintage))]

    def to_csv(self) -> str:
        lines = [",".join(["rate"] + [str(v) for v in self.vintages])]
        for rate, row in zip(self.rates, self.cells):
            lines.append(",".join([repr(float(rate))] + ["" if c is None else str(c) for c in row]))
        return "\n".join(lines) + "\n"

    def save(self, path: Union[str, os.PathLike]) -> None:
        atomic_write_text(path, self.to_csv())

    def pretty(self) -> str:
        head = "rate  " + "  ".join(f"{v.label():>8}" for v in self.vintages)
        body = [
            f"{rate:4.0%}  " + "  ".join(f"{'-' if c is None else c.label():>8}" for c in row)
            for rate, row in zip(self.rates, self.cells)
        ]
        return "\n".join([head, *body])


def _paths(market: AlignedMarket, vintages, rate, horizon_end) -> list[SwpIndexPath]:
    return [build_path(SwpConfig(as_month(v), rate), market.window(v, horizon_end)) for v in vintages]


def table1(
    market: AlignedMarket,
    vintages: Sequence[Union[str, YearMonth]],
    rates: Sequence[float],
    horizon_end: Union[str, YearMonth, None] = None,
) -> RuinTable:
    """Ruin month for every (rate, vintage) cell, or None if not ruined by the horizon.

    ``horizon_end`` is the last month of market growth used (default: end of
    the market). An empty cell means "not ruined within the data", not "never".
    """
    end = market.end_month if horizon_end is None else as_month(horizon_end)
    cells = tuple(tuple(p.ruin_month for p in _paths(market, vintages, s, end)) for s in rates)
    return RuinTable(tuple(rates), tuple(as_month(v) for v in vintages), cells, end)


def figure1_data(
    market: AlignedMarket,
    vintages: Sequence[Union[str, YearMonth]],
    rate: float,
    horizon_end: Union[str, YearMonth, None] = None,
) -> list[SwpIndexPath]:
    end = market.end_month if horizon_end is None else as_month(horizon_end)
    return _paths(market, vintages, rate, end)


def figure1_csv(paths: Sequence[SwpIndexPath]) -> str:
    """Wide CSV: one ``month`` column and one level column per vintage."""
    months = sorted({m for p in paths for m in p.months()})
    lines = [",".join(["month"] + [str(p.config.vintage) for p in paths])]
    for m in months:
        cells = []
        for p in paths:
            k = m - p.first_month
            cells.append(f"{p.levels[k]:.4f}" if 0 <= k < p.levels.size else "")
        lines.append(",".join([str(m)] + cells))
    return "\n".join(lines) + "\n"
