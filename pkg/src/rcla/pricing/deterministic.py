"""Closed-form RCLA value when the wealth process has no volatility."""

from __future__ import annotations

import math

from ..mortality import TERMINAL_AGE, annuity_factor, survival
from ..params import GompertzParams, MarketParams
from .contract import PricingResult, RclaContract, params_echo


def ruin_time(u0: float, nu: float) -> float:
    """Time for ``du = (nu*u - 1) dt`` to reach zero from ``u0`` (inf if it never does)."""
    if nu == 0:
        return u0
    x = 1.0 - nu * u0
    if x <= 0:
        return math.inf
    return -math.log(x) / nu


def price_deterministic(
    contract: RclaContract,
    mkt: MarketParams,
    g: GompertzParams = GompertzParams(),
) -> PricingResult:
    if mkt.sigma != 0:
        raise ValueError("closed form requires sigma == 0")
    tau = ruin_time(contract.wealth_in_income_units, mkt.nu)
    if contract.purchase_age + tau >= TERMINAL_AGE:
        value = 0.0
    else:
        value = (
            contract.annual_income
            * math.exp(-mkt.r_real * tau)
            * survival(contract.purchase_age, tau, g)
            * annuity_factor(contract.purchase_age + tau, mkt.r_real, g)
        )
    return PricingResult(
        value=value,
        engine="closed_form",
        params=params_echo(contract, mkt, g),
        drift_mode=mkt.drift_mode.value,
        diagnostics={"ruin_time": tau if math.isfinite(tau) else None},
    )
