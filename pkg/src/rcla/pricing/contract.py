from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Optional

from ..mortality import TERMINAL_AGE
from ..params import GompertzParams, MarketParams


@dataclass(frozen=True)
class RclaContract:
    """Pays ``rate_s * notional`` real dollars a year for life, starting at index ruin."""

    purchase_age: float
    rate_s: float
    notional: float = 100_000.0

    def __post_init__(self) -> None:
        if not 0 <= self.rate_s < 1:
            raise ValueError(f"rate_s must be in [0, 1), got {self.rate_s}")
        if not self.notional > 0:
            raise ValueError(f"notional must be positive, got {self.notional}")
        if not 0 <= self.purchase_age < TERMINAL_AGE:
            raise ValueError(f"purchase_age must be in [0, {TERMINAL_AGE}), got {self.purchase_age}")

    @property
    def annual_income(self) -> float:
        return self.rate_s * self.notional

    @property
    def wealth_in_income_units(self) -> float:
        """Starting wealth divided by annual income, i.e. ``1 / rate_s`` (inf with no income)."""
        if self.annual_income == 0:
            return math.inf
        return self.notional / self.annual_income

    @property
    def horizon(self) -> float:
        return TERMINAL_AGE - self.purchase_age


def params_echo(contract: RclaContract, mkt: MarketParams, g: GompertzParams) -> dict[str, Any]:
    return {
        "r": mkt.r_real,
        "mu": mkt.mu_real,
        "sigma": mkt.sigma,
        "gompertz_m": g.m,
        "gompertz_b": g.b,
        "age": contract.purchase_age,
        "rate": contract.rate_s,
        "notional": contract.notional,
    }


@dataclass(frozen=True)
class PricingResult:
    value: float
    engine: str  # "mc" | "pde" | "closed_form"
    params: dict[str, Any]
    drift_mode: str
    std_error: Optional[float] = None
    n_paths: Optional[int] = None
    seed: Optional[int] = None
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not (self.value >= 0 and math.isfinite(self.value)):
            raise ValueError(f"invalid price {self.value!r}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "engine": self.engine,
            "value": self.value,
            "std_error": self.std_error if self.std_error is None or math.isfinite(self.std_error) else None,
            "n_paths": self.n_paths,
            "seed": self.seed,
            "drift_mode": self.drift_mode,
            "params": dict(self.params),
            "diagnostics": dict(self.diagnostics),
        }
