"""Systematic-withdrawal (SwP) pseudo-index construction.

A vintage starts at ``initial_level`` and each month is grown by the
total-return factor, then reduced by ``initial_level * rate / 12`` scaled by
the CPI growth accumulated since the vintage month.

Dating convention: the level produced by month M's update is the level "as
of the first day of" month M+1, so ``levels[0]`` is dated ``vintage + 1`` and
a ruin caused by month M's update is reported as ``M + 1``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import CoverageError
from .io import atomic_write_text
from .market_data import AlignedMarket
from .months import YearMonth, as_month


@dataclass(frozen=True)
class SwpConfig:
    vintage: YearMonth
    rate_s: float
    initial_level: float = 100.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "vintage", as_month(self.vintage))
        if not 0 < self.rate_s < 1:
            raise ValueError(f"rate_s must be in (0, 1), got {self.rate_s}")
        if not self.initial_level > 0:
            raise ValueError(f"initial_level must be positive, got {self.initial_level}")

    @property
    def monthly_withdrawal(self) -> float:
        return self.initial_level * self.rate_s / 12.0

    @property
    def rate_bp(self) -> int:
        return int(round(self.rate_s * 10_000))


@dataclass(frozen=True)
class SwpIndexPath:
    config: SwpConfig
    levels: np.ndarray
    ruin_month: Optional[YearMonth] = None

    @property
    def first_month(self) -> YearMonth:
        return self.config.vintage + 1

    def months(self) -> list[YearMonth]:
        return [self.first_month + k for k in range(self.levels.size)]

    def level_at(self, month: Union[str, YearMonth]) -> float:
        k = as_month(month) - self.first_month
        if not 0 <= k < self.levels.size:
            raise CoverageError(f"{month} not on path {self.first_month}..{self.first_month + self.levels.size - 1}")
        return float(self.levels[k])

    def to_csv(self) -> str:
        rows = ["month,level"] + [f"{m},{v:.4f}" for m, v in zip(self.months(), self.levels)]
        return "\n".join(rows) + "\n"


def step(level: float, gross_return: float, monthly_withdrawal_base: float, cumulative_inflation: float) -> float:
    """One monthly update: grow by total return, then withdraw the CPI-scaled amount.

    The result is not floored; a value <= 0 means the index is ruined.
    """
    return level * gross_return - monthly_withdrawal_base * cumulative_inflation


def build_path(config: SwpConfig, market: AlignedMarket) -> SwpIndexPath:
    if market.start_month != config.vintage:
        raise CoverageError(f"market starts {market.start_month}, vintage is {config.vintage}")
    base = config.monthly_withdrawal
    out = np.zeros(len(market))
    level = config.initial_level
    cum = 1.0
    ruin = None
    for k, (g, f) in enumerate(zip(market.gross_returns.tolist(), market.inflation_factors.tolist())):
        cum *= f
        level = step(level, g, base, cum)
        if level <= 0:
            ruin = config.vintage + (k + 1)
            break
        out[k] = level
    out.flags.writeable = False
    return SwpIndexPath(config, out, ruin)


def build_family(
    vintages: Sequence[Union[str, YearMonth]],
    rates: Sequence[float],
    market: AlignedMarket,
    initial_level: float = 100.0,
) -> list[list[SwpIndexPath]]:
    """Paths for every (vintage, rate) cell, vintage-major, rate-minor.

    Each vintage runs from its own start month to the end of ``market``.
    """
    family = []
    for v in vintages:
        sub = market.window(v)
        family.append([build_path(SwpConfig(as_month(v), s, initial_level), sub) for s in rates])
    return family


def export_family(family: list[list[SwpIndexPath]], directory: Union[str, os.PathLike]) -> list[str]:
    """Write one ``swp_<vintage>_<bp>.csv`` per cell; returns the file paths."""
    paths = []
    for row in family:
        for p in row:
            name = os.path.join(os.fspath(directory), f"swp_{p.config.vintage}_{p.config.rate_bp}.csv")
            atomic_write_text(name, p.to_csv())
            paths.append(name)
    return paths
