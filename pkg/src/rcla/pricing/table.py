"""Price grids over purchase age and spending rate."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Any, Sequence, Union

from ..io import atomic_write_text
from ..mortality import annuity_factor
from ..params import GompertzParams, MarketParams
from .contract import PricingResult, RclaContract
from .deterministic import price_deterministic
from .mc import price_mc
from .pde import GridSpec, price_pde

ENGINES = ("mc", "pde", "closed_form")


def price(
    contract: RclaContract,
    mkt: MarketParams,
    g: GompertzParams = GompertzParams(),
    engine: str = "pde",
    **engine_kwargs: Any,
) -> PricingResult:
    """Dispatch to one engine by name."""
    if engine == "pde":
        return price_pde(contract, mkt, g, **engine_kwargs)
    if engine == "mc":
        return price_mc(contract, mkt, g, **engine_kwargs)
    if engine == "closed_form":
        return price_deterministic(contract, mkt, g)
    raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")


@dataclass(frozen=True)
class PriceTable:
    ages: tuple[float, ...]
    rates: tuple[float, ...]
    cells: tuple[tuple[PricingResult, ...], ...]  # cells[i][j]: rate i, age j
    annuity_per_1000: tuple[float, ...]
    engine: str

    def value(self, age: float, rate: float) -> float:
        return self.cells[self.rates.index(rate)][self.ages.index(age)].value

    def values(self) -> list[list[float]]:
        return [[c.value for c in row] for row in self.cells]

    def to_csv(self) -> str:
        lines = [",".join(["rate"] + [f"{a:g}" for a in self.ages])]
        for rate, row in zip(self.rates, self.cells):
            lines.append(",".join([repr(float(rate))] + [f"{c.value:.2f}" for c in row]))
        lines.append(",".join(["annuity_per_1000"] + [f"{v:.2f}" for v in self.annuity_per_1000]))
        return "\n".join(lines) + "\n"

    def save(self, path: Union[str, os.PathLike]) -> None:
        atomic_write_text(path, self.to_csv())


def table2(
    mkt: MarketParams,
    g: GompertzParams = GompertzParams(),
    ages: Sequence[float] = (50, 57, 62, 67, 75),
    rates: Sequence[float] = (0.04, 0.05, 0.06, 0.07),
    engine: str = "pde",
    notional: float = 100_000.0,
    **engine_kwargs: Any,
) -> PriceTable:
    """RCLA values for every (rate, age) plus the $1,000 immediate-annuity row."""
    cells = tuple(
        tuple(price(RclaContract(a, s, notional), mkt, g, engine, **engine_kwargs) for a in ages)
        for s in rates
    )
    annuity = tuple(1000.0 * annuity_factor(a, mkt.r_real, g) for a in ages)
    return PriceTable(tuple(ages), tuple(rates), cells, annuity, engine)


def gmwb_embedded_value(
    age: float,
    rate_s: float,
    premium: float,
    mkt: MarketParams,
    g: GompertzParams = GompertzParams(),
    engine: str = "pde",
    **engine_kwargs: Any,
) -> float:
    """Value of the lifetime-withdrawal guarantee inside a GMWB.

    A GMWB is a systematic withdrawal plan on the premium plus an RCLA on
    the same withdrawal rate, so the guarantee is worth exactly the RCLA.
    """
    return price(RclaContract(age, rate_s, premium), mkt, g, engine, **engine_kwargs).value
