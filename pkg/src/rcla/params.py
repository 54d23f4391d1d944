"""Model parameter records shared by the synthetic generator and the pricers.

Defaults are the after-inflation capital-market and Gompertz values used for
the published RCLA price table.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from enum import Enum


class DriftMode(str, Enum):
    RISK_NEUTRAL = "risk_neutral"
    REAL_WORLD = "real_world"


@dataclass(frozen=True)
class GompertzParams:
    m: float = 87.8  # modal age, years
    b: float = 9.5  # dispersion, years

    def __post_init__(self) -> None:
        if not (self.m > 0 and self.b > 0):
            raise ValueError(f"Gompertz m and b must be positive, got m={self.m}, b={self.b}")


@dataclass(frozen=True)
class MarketParams:
    """Real (inflation-deflated) market parameters.

    ``drift_mode`` picks the drift of the wealth diffusion: ``risk_neutral``
    uses ``r_real``, ``real_world`` uses ``mu_real``. Discounting always uses
    ``r_real``. The default is ``real_world`` because that is the mode under
    which the published price table is reproduced (see README).
    """

    r_real: float = 0.025
    mu_real: float = 0.07
    sigma: float = 0.20
    drift_mode: DriftMode = DriftMode.REAL_WORLD

    def __post_init__(self) -> None:
        object.__setattr__(self, "drift_mode", DriftMode(self.drift_mode))
        if not (self.sigma >= 0 and math.isfinite(self.sigma)):
            raise ValueError(f"sigma must be finite and >= 0, got {self.sigma}")

    @property
    def nu(self) -> float:
        return self.r_real if self.drift_mode is DriftMode.RISK_NEUTRAL else self.mu_real

    def with_(self, **changes) -> "MarketParams":
        d = asdict(self)
        d.update(changes)
        return MarketParams(**d)
