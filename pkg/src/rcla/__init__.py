"""Ruin-contingent life annuity toolkit: SwP indices, ruin backtests and pricing."""

from .backtest import RuinTable, figure1_data, table1
from .market_data import AlignedMarket, MonthlySeries, SeriesKind, align, load_series, save_series, synth_gbm
from .months import YearMonth
from .mortality import annuity_factor, hazard, survival
from .params import DriftMode, GompertzParams, MarketParams
from .pricing import (
    GridSpec,
    PricingResult,
    RclaContract,
    gmwb_embedded_value,
    price_deterministic,
    price_mc,
    price_pde,
    table2,
)
from .swp_index import SwpConfig, SwpIndexPath, build_family, build_path, step

__version__ = "0.1.0"
