from __future__ import annotations

import numpy as np
import pytest

from rcla.errors import CoverageError
from rcla.market_data import AlignedMarket, synth_gbm
from rcla.months import YearMonth
from rcla.params import MarketParams
from rcla.swp_index import SwpConfig, build_family, build_path, export_family, step


def flat_market(n, start="2000-01", g=1.0, f=1.0):
    return AlignedMarket(YearMonth.parse(start), np.full(n, g), np.full(n, f))


def test_worked_example_step():
    # The printed worked example shows 101.94, which does not follow from
    # 100 * 1.02 - (7/12) * 1.005; the formula gives 101.4137.
    assert round(step(100, 1.02, 7 / 12, 1.005), 4) == 101.4137


def test_step_identity_and_arithmetic():
    assert step(100, 1.0, 0, 1.0) == 100
    assert step(1, 1.0, 7 / 12, 1.0) == pytest.approx(0.4167, abs=5e-5)


def test_step_not_floored():
    assert step(0.1, 1.0, 1.0, 1.0) < 0


def test_linear_decline_ruins_at_month_100():
    path = build_path(SwpConfig(YearMonth(2000, 1), 0.12), flat_market(150))
    assert np.allclose(path.levels[:99], 100 - np.arange(1, 100))
    assert path.ruin_month == YearMonth(2000, 1) + 100
    assert np.all(path.levels[99:] == 0)
    assert path.level_at(path.ruin_month) == 0


def test_first_level_dated_month_after_vintage():
    path = build_path(SwpConfig(YearMonth(1970, 1), 0.07), flat_market(3, "1970-01", 1.02, 1.005))
    assert path.first_month == YearMonth(1970, 2)
    assert path.levels[0] == pytest.approx(101.4137, abs=5e-5)


def test_inflation_compounds_from_vintage():
    f = np.array([1.01, 1.02, 1.03])
    m = AlignedMarket(YearMonth(2000, 1), np.ones(3), f)
    path = build_path(SwpConfig(YearMonth(2000, 1), 0.12), m)
    expected = 100 - np.cumsum(np.cumprod(f))
    np.testing.assert_allclose(path.levels, expected)


def test_tiny_rate_tracks_total_return():
    g = np.full(36, 1.01)
    path = build_path(SwpConfig(YearMonth(2000, 1), 0.0001), AlignedMarket(YearMonth(2000, 1), g, np.ones(36)))
    assert path.ruin_month is None
    assert path.levels[-1] == pytest.approx(100 * 1.01**36, rel=5e-3)


def test_vintage_must_match_market():
    with pytest.raises(CoverageError):
        build_path(SwpConfig(YearMonth(2000, 2), 0.05), flat_market(10))


def test_config_validation():
    with pytest.raises(ValueError):
        SwpConfig(YearMonth(2000, 1), 0.0)
    with pytest.raises(ValueError):
        SwpConfig(YearMonth(2000, 1), 0.05, initial_level=0)


def test_family_shape_and_dominance():
    m = synth_gbm(MarketParams(), 480, seed=3, start_month="1990-01")
    fam = build_family(["1990-01", "1995-06"], [0.04, 0.06, 0.08], m)
    assert [[p.config.rate_s for p in row] for row in fam] == [[0.04, 0.06, 0.08]] * 2
    assert fam[1][0].config.vintage == YearMonth(1995, 6)
    for row in fam:
        a, b, c = (p.levels for p in row)
        assert np.all(a >= b) and np.all(b >= c)
    assert build_family(["1990-01"], [], m) == [[]]


def test_scale_equivariance():
    m = synth_gbm(MarketParams(), 240, seed=5)
    a = build_path(SwpConfig(YearMonth(2000, 1), 0.09), m)
    b = build_path(SwpConfig(YearMonth(2000, 1), 0.09, initial_level=250.0), m)
    np.testing.assert_allclose(b.levels, 2.5 * a.levels, rtol=1e-12)
    assert a.ruin_month == b.ruin_month


def test_export_family(tmp_path):
    m = flat_market(12, "1970-01", 1.01)
    fam = build_family(["1970-01"], [0.05, 0.07], m)
    files = export_family(fam, tmp_path)
    assert [f.rsplit("/", 1)[-1] for f in files] == ["swp_1970-01_500.csv", "swp_1970-01_700.csv"]
    text = (tmp_path / "swp_1970-01_700.csv").read_text()
    assert text.splitlines()[0] == "month,level"
    assert text.splitlines()[1].startswith("1970-02,")


def test_historical_1973_seven_percent(historical):
    path = build_path(SwpConfig(YearMonth(1973, 1), 0.07), historical.window("1973-01"))
    assert abs(path.ruin_month - YearMonth(1983, 1)) <= 3
