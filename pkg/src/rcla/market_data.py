"""Monthly market history: CSV ingestion, alignment, synthetic paths.

Levels are month-end index values stamped with their calendar month. The
growth factor *during* month M is ``level[M] / level[M-1]``, so aligning a
window ``[start, end]`` needs levels from ``start - 1`` through ``end``.
"""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from .errors import CoverageError, ParseError, ValidationError
from .months import YearMonth, as_month
from .params import MarketParams

HEADER = ("month", "level")


class SeriesKind(str, Enum):
    TOTAL_RETURN = "total_return_index"
    CPI = "cpi_index"


@dataclass(frozen=True)
class MonthlySeries:
    start_month: YearMonth
    values: tuple[float, ...]
    kind: SeriesKind = SeriesKind.TOTAL_RETURN

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "kind", SeriesKind(self.kind))
        if not self.values:
            raise ValidationError("series is empty")
        for k, v in enumerate(self.values):
            if not (v > 0 and math.isfinite(v)):
                raise ValidationError(f"non-positive or non-finite level {v!r} at {self.start_month + k}")

    @property
    def end_month(self) -> YearMonth:
        return self.start_month + (len(self.values) - 1)

    def __len__(self) -> int:
        return len(self.values)

    def level(self, month: YearMonth) -> float:
        k = month - self.start_month
        if not 0 <= k < len(self.values):
            raise CoverageError(f"{month} outside {self.start_month}..{self.end_month}")
        return self.values[k]

    def months(self) -> list[YearMonth]:
        return [self.start_month + k for k in range(len(self.values))]


@dataclass(frozen=True)
class AlignedMarket:
    """Per-month growth factors; factor k is the growth during ``start_month + k``."""

    start_month: YearMonth
    gross_returns: np.ndarray
    inflation_factors: np.ndarray

    def __post_init__(self) -> None:
        g = np.array(self.gross_returns, dtype=float)
        f = np.array(self.inflation_factors, dtype=float)
        if g.ndim != 1 or g.shape != f.shape or g.size == 0:
            raise ValidationError("gross_returns and inflation_factors must be equal-length, non-empty")
        if not (np.all(g > 0) and np.all(f > 0) and np.all(np.isfinite(g)) and np.all(np.isfinite(f))):
            raise ValidationError("growth factors must be finite and strictly positive")
        g.flags.writeable = False
        f.flags.writeable = False
        object.__setattr__(self, "gross_returns", g)
        object.__setattr__(self, "inflation_factors", f)

    def __len__(self) -> int:
        return self.gross_returns.size

    @property
    def end_month(self) -> YearMonth:
        return self.start_month + (len(self) - 1)

    def window(self, start: Union[str, YearMonth], end: Union[str, YearMonth, None] = None) -> "AlignedMarket":
        """Sub-market covering ``start``..``end`` (default: through the last month)."""
        start = as_month(start)
        end = self.end_month if end is None else as_month(end)
        i, j = start - self.start_month, end - self.start_month
        if i < 0 or j >= len(self) or j < i:
            raise CoverageError(
                f"window {start}..{end} not inside market {self.start_month}..{self.end_month}"
            )
        return AlignedMarket(start, self.gross_returns[i : j + 1], self.inflation_factors[i : j + 1])


def _format_level(v: float) -> str:
    return np.format_float_positional(v, unique=True, trim="0")


def parse_series(text: str, kind: Union[SeriesKind, str], source: str = "<string>") -> MonthlySeries:
    """Parse CSV text in the ``month,level`` schema."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(c.strip() for c in rows[0]) != HEADER:
        raise ParseError(f"{source}: line 1: expected header 'month,level'")
    months: list[YearMonth] = []
    values: list[float] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        where = f"{source}: line {lineno} ({','.join(row)})"
        if len(row) != 2:
            raise ParseError(f"{where}: expected 2 fields, got {len(row)}")
        try:
            month = YearMonth.parse(row[0])
        except ValueError:
            raise ParseError(f"{where}: bad month {row[0]!r}") from None
        try:
            if "," in row[1] or "_" in row[1]:
                raise ValueError
            level = float(row[1])
        except ValueError:
            raise ParseError(f"{where}: bad level {row[1]!r}") from None
        if months:
            prev = months[-1]
            if month <= prev:
                raise ValidationError(f"{where}: month {month} not after {prev}")
            if month != prev + 1:
                raise ValidationError(f"{where}: gap before {month} (previous {prev})")
        if not (level > 0 and math.isfinite(level)):
            raise ValidationError(f"{where}: level must be positive, got {level!r}")
        months.append(month)
        values.append(level)
    if not months:
        raise ValidationError(f"{source}: no data rows")
    return MonthlySeries(months[0], tuple(values), SeriesKind(kind))


def load_series(path: Union[str, os.PathLike], kind: Union[SeriesKind, str]) -> MonthlySeries:
    """Load and validate a ``month,level`` CSV file.

    Raises ParseError for malformed rows and ValidationError for gaps,
    out-of-order months or non-positive levels; both name the offending row.
    """
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_series(fh.read(), kind, source=str(path))


def format_series(series: MonthlySeries) -> str:
    lines = [",".join(HEADER)]
    lines += [f"{m},{_format_level(v)}" for m, v in zip(series.months(), series.values)]
    return "\n".join(lines) + "\n"


def save_series(series: MonthlySeries, path: Union[str, os.PathLike]) -> None:
    from .io import atomic_write_text

    atomic_write_text(path, format_series(series))


def align(
    returns: MonthlySeries,
    cpi: MonthlySeries,
    window: Union[tuple, Sequence, None] = None,
) -> AlignedMarket:
    """Turn two level series into per-month growth factors over ``window``.

    ``window`` is an inclusive ``(start, end)`` pair of months. Each series
    must hold a level for ``start - 1`` (the base) through ``end``. With no
    window, the widest range both series support is used.
    """
    if window is None:
        start = max(returns.start_month, cpi.start_month) + 1
        end = min(returns.end_month, cpi.end_month)
    else:
        start, end = (as_month(w) for w in window)
    if end < start:
        raise CoverageError(f"empty window {start}..{end}")
    factors = []
    for series in (returns, cpi):
        base = start - 1
        if base < series.start_month or end > series.end_month:
            raise CoverageError(
                f"{series.kind.value} series {series.start_month}..{series.end_month} "
                f"does not cover {base}..{end}"
            )
        i = base - series.start_month
        lv = np.asarray(series.values[i : i + (end - start) + 2])
        factors.append(lv[1:] / lv[:-1])
    return AlignedMarket(start, factors[0], factors[1])


def synth_gbm(
    params: MarketParams,
    n_months: int,
    seed: int,
    start_month: Union[str, YearMonth] = YearMonth(2000, 1),
) -> AlignedMarket:
    """Synthetic real-terms market with lognormal monthly growth.

    Each gross factor is ``exp((nu - sigma^2/2)/12 + sigma*Z/sqrt(12))`` with
    ``nu = params.nu``; inflation factors are exactly 1.
    """
    if n_months < 1:
        raise ValueError("n_months must be >= 1")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    z = rng.standard_normal(n_months)
    nu, sig = params.nu, params.sigma
    g = np.exp((nu - 0.5 * sig * sig) / 12.0 + sig * z / math.sqrt(12.0))
    return AlignedMarket(as_month(start_month), g, np.ones(n_months))
