from __future__ import annotations

import numpy as np

from rcla.backtest import figure1_csv, figure1_data, table1
from rcla.market_data import AlignedMarket, synth_gbm
from rcla.months import YearMonth
from rcla.params import MarketParams
from rcla.swp_index import SwpConfig, build_path

VINTAGES = ["1970-01", "1973-01", "1976-01", "1979-01"]
RATES = [0.04, 0.05, 0.06, 0.07, 0.08, 0.09]


def test_flat_market_every_vintage_ruins_after_100_months():
    m = AlignedMarket(YearMonth(2000, 1), np.ones(200), np.ones(200))
    vintages = ["2000-01", "2001-07", "2003-03"]
    t = table1(m, vintages, [0.12])
    for v in vintages:
        assert t.cell(0.12, v) - YearMonth.parse(v) == 100


def test_cells_equal_build_path():
    m = synth_gbm(MarketParams(sigma=0.3, mu_real=0.02), 300, seed=11, start_month="1980-01")
    t = table1(m, ["1980-01", "1985-01"], [0.06, 0.1])
    for v in ["1980-01", "1985-01"]:
        for s in [0.06, 0.1]:
            assert t.cell(s, v) == build_path(SwpConfig(YearMonth.parse(v), s), m.window(v)).ruin_month


def test_horizon_end_truncates():
    m = AlignedMarket(YearMonth(2000, 1), np.ones(200), np.ones(200))
    t = table1(m, ["2000-01"], [0.12], horizon_end="2008-03")
    assert t.cell(0.12, "2000-01") is None
    assert t.horizon_end == YearMonth(2008, 3)


def test_csv_layout(historical):
    t = table1(historical, VINTAGES, RATES)
    lines = t.to_csv().splitlines()
    assert lines[0] == "rate,1970-01,1973-01,1976-01,1979-01"
    assert lines[1] == "0.04,,,,"
    assert "Jan-70" in t.pretty()


def test_columns_monotone(historical):
    t = table1(historical, VINTAGES, RATES)
    for v in VINTAGES:
        col = [t.cell(s, v) for s in RATES]
        ruined = [c for c in col if c is not None]
        # once a rate ruins, every higher rate ruins no later
        first = next((i for i, c in enumerate(col) if c is not None), len(col))
        assert all(c is not None for c in col[first:])
        assert ruined == sorted(ruined, reverse=True)


def test_figure1(historical):
    paths = figure1_data(historical, ["1970-01", "1973-01", "1976-01"], 0.07)
    assert [str(p.config.vintage) for p in paths] == ["1970-01", "1973-01", "1976-01"]
    csv = figure1_csv(paths).splitlines()
    assert csv[0].startswith("month,")
    assert figure1_data(historical, [], 0.07) == []
