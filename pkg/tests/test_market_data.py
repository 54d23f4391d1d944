from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rcla.errors import CoverageError, ParseError, ValidationError
from rcla.market_data import (
    MonthlySeries,
    SeriesKind,
    align,
    format_series,
    load_series,
    parse_series,
    save_series,
    synth_gbm,
)
from rcla.months import YearMonth, month_range
from rcla.params import MarketParams


def write(tmp_path, text, name="s.csv"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_load_two_rows(tmp_path):
    s = load_series(write(tmp_path, "month,level\n1970-01,100.0\n1970-02,102.0\n"), SeriesKind.TOTAL_RETURN)
    assert s.start_month == YearMonth(1970, 1)
    assert s.values == (100.0, 102.0)
    assert s.end_month == YearMonth(1970, 2)


def test_gap_names_row(tmp_path):
    with pytest.raises(ValidationError, match="1970-03"):
        load_series(write(tmp_path, "month,level\n1970-01,100\n1970-03,101\n"), "total_return_index")


@pytest.mark.parametrize(
    "body, exc, needle",
    [
        ("1970-01,100\n1970-13,101\n", ParseError, "line 3"),
        ("1970-01,100\n1970-02,abc\n", ParseError, "line 3"),
        ("1970-01,100\n1970-02\n", ParseError, "line 3"),
        ("1970-02,100\n1970-01,101\n", ValidationError, "line 3"),
        ("1970-01,100\n1970-02,0\n", ValidationError, "line 3"),
        ("1970-01,-5\n", ValidationError, "line 2"),
        ("1970-01,nan\n", ValidationError, "line 2"),
        ("", ValidationError, "no data"),
    ],
)
def test_rejections(body, exc, needle):
    with pytest.raises(exc, match=needle):
        parse_series("month,level\n" + body, "cpi_index")


def test_bad_header():
    with pytest.raises(ParseError, match="header"):
        parse_series("date,value\n1970-01,1\n", "cpi_index")


def test_historical_file_month_count(tmp_path):
    # 1970-01..2007-01 inclusive is 37 years and one month
    months = month_range(YearMonth(1970, 1), YearMonth(2007, 1))
    s = MonthlySeries(months[0], tuple(100.0 + k for k in range(len(months))))
    p = tmp_path / "tr.csv"
    save_series(s, p)
    assert len(load_series(p, SeriesKind.TOTAL_RETURN)) == 445


def test_align_single_transition():
    r = MonthlySeries(YearMonth(1970, 1), (100.0, 102.0))
    c = MonthlySeries(YearMonth(1970, 1), (200.0, 201.0), SeriesKind.CPI)
    m = align(r, c, ("1970-02", "1970-02"))
    assert m.gross_returns.tolist() == [pytest.approx(1.02)]
    assert m.inflation_factors.tolist() == [pytest.approx(1.005)]
    assert m.start_month == YearMonth(1970, 2)


def test_align_self_symmetric():
    r = MonthlySeries(YearMonth(1990, 1), (1.0, 1.1, 0.9, 1.3))
    m = align(r, r)
    np.testing.assert_array_equal(m.gross_returns, m.inflation_factors)


def test_align_outside_range():
    r = MonthlySeries(YearMonth(1990, 1), (1.0, 1.1, 0.9))
    with pytest.raises(CoverageError):
        align(r, r, ("1990-01", "1990-03"))  # needs a 1989-12 base level
    with pytest.raises(CoverageError):
        align(r, r, ("1990-02", "1990-04"))


def test_window():
    r = MonthlySeries(YearMonth(1990, 1), tuple(float(v) for v in range(1, 8)))
    m = align(r, r)
    w = m.window("1990-03", "1990-04")
    assert w.start_month == YearMonth(1990, 3)
    assert w.gross_returns.tolist() == pytest.approx([3 / 2, 4 / 3])
    with pytest.raises(CoverageError):
        m.window("1989-12")


def test_synth_deterministic_limit():
    m = synth_gbm(MarketParams(sigma=0.0), 24, seed=123)
    assert np.allclose(m.gross_returns, math.exp(0.07 / 12), rtol=0, atol=1e-15)
    # the commonly quoted 1.0058496 is a rounding of exp(0.07/12) = 1.00585038...
    assert m.gross_returns[0] == pytest.approx(1.0058496, abs=1e-6)
    assert np.all(m.inflation_factors == 1.0)


def test_synth_seed_repeatable():
    a = synth_gbm(MarketParams(), 500, seed=9)
    b = synth_gbm(MarketParams(), 500, seed=9)
    c = synth_gbm(MarketParams(), 500, seed=10)
    assert a.gross_returns.tobytes() == b.gross_returns.tobytes()
    assert not np.array_equal(a.gross_returns, c.gross_returns)


def test_synth_log_mean():
    m = synth_gbm(MarketParams(), 10_000, seed=1)
    logs = np.log(m.gross_returns)
    se = logs.std(ddof=1) / math.sqrt(logs.size)
    assert abs(logs.mean() - (0.07 - 0.02) / 12) < 3 * se


def test_synth_uses_drift_mode():
    rn = synth_gbm(MarketParams(sigma=0.0, drift_mode="risk_neutral"), 3, seed=0)
    assert rn.gross_returns[0] == pytest.approx(math.exp(0.025 / 12))


levels = st.lists(
    st.floats(min_value=1e-6, max_value=1e9, allow_nan=False, allow_infinity=False), min_size=1, max_size=60
)


@settings(max_examples=100, deadline=None)
@given(levels, st.integers(1900, 2100), st.integers(1, 12))
def test_roundtrip(values, year, month):
    s = MonthlySeries(YearMonth(year, month), tuple(values), SeriesKind.CPI)
    back = parse_series(format_series(s), SeriesKind.CPI)
    assert back == s


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 50))
def test_synth_pure_function(seed, n):
    a = synth_gbm(MarketParams(), n, seed)
    b = synth_gbm(MarketParams(), n, seed)
    assert a.gross_returns.tobytes() == b.gross_returns.tobytes()
    assert np.all(a.gross_returns > 0)
