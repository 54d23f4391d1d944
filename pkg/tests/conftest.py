from __future__ import annotations

from pathlib import Path

import pytest

from rcla.market_data import SeriesKind, align, load_series

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"

# (criterion, passed, detail) lines filled in by test_acceptance.py
ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture(scope="session")
def historical():
    returns = load_series(DATA / "sp500_total_return.csv", SeriesKind.TOTAL_RETURN)
    cpi = load_series(DATA / "cpi_u.csv", SeriesKind.CPI)
    return align(returns, cpi, ("1970-01", "2006-12"))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
