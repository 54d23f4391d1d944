from __future__ import annotations

import json
import subprocess
import sys

import pytest

from conftest import DATA
from rcla.cli import main, parse_args

DATA_ARGS = ["--returns", str(DATA / "sp500_total_return.csv"), "--cpi", str(DATA / "cpi_u.csv")]


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_help_exits_zero(capsys):
    code, out, _ = run(["price", "--help"], capsys)
    assert code == 0
    assert "--drift-mode" in out


def test_defaults_are_table2_parameters():
    cfg = parse_args(["price", "--age", "62", "--rate", "0.05"])
    assert (cfg.r, cfg.mu, cfg.sigma, cfg.gompertz_m, cfg.gompertz_b) == (0.025, 0.07, 0.20, 87.8, 9.5)
    assert cfg.notional == 100_000 and cfg.engine == "pde" and cfg.drift_mode == "real_world"


def test_annuity(capsys):
    code, out, _ = run(["annuity", "--age", "50"], capsys)
    assert code == 0
    assert json.loads(out)["factor"] == pytest.approx(21.838, rel=2e-3)


def test_price_pde_default_cell(tmp_path, capsys):
    out = tmp_path / "p.json"
    code, summary, _ = run(["price", "--age", "62", "--rate", "0.05", "--engine", "pde", "--out", str(out)], capsys)
    assert code == 0
    assert summary.count("\n") == 1 and str(out) in summary
    doc = json.loads(out.read_text())
    assert doc["engine"] == "pde"
    assert doc["value"] == pytest.approx(6072, rel=0.10)
    assert doc["params"]["age"] == 62


def test_price_closed_form(capsys):
    code, out, _ = run(
        ["price", "--age", "57", "--rate", "0.07", "--engine", "closed_form", "--sigma", "0",
         "--drift-mode", "risk_neutral"], capsys,
    )
    assert code == 0
    assert json.loads(out)["diagnostics"]["ruin_time"] == pytest.approx(17.6733, abs=1e-4)


def test_mc_output_byte_identical(tmp_path, capsys):
    argv = ["price", "--age", "62", "--rate", "0.05", "--engine", "mc", "--paths", "3000", "--dt", "0.0833333333",
            "--seed", "4"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(argv + ["--out", str(a)], capsys)[0] == 0
    assert run(argv + ["--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["n_paths"] == 3000


def test_backtest_and_repeatability(tmp_path, capsys):
    a, b = tmp_path / "t1.csv", tmp_path / "t2.csv"
    assert run(["backtest", *DATA_ARGS, "--out", str(a)], capsys)[0] == 0
    assert run(["backtest", *DATA_ARGS, "--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == "rate,1970-01,1973-01,1976-01,1979-01"
    assert lines[1] == "0.04,,,,"


def test_index_and_figure1(tmp_path, capsys):
    idx = tmp_path / "idx.csv"
    code, summary, _ = run(["index", *DATA_ARGS, "--vintage", "1976-01", "--rate", "0.07", "--end", "2006-12",
                            "--out", str(idx)], capsys)
    assert code == 0 and "never ruined" in summary
    rows = idx.read_text().splitlines()
    assert rows[1].startswith("1976-02,") and rows[-1].startswith("2007-01,")
    fig = tmp_path / "fig.csv"
    assert run(["figure1", *DATA_ARGS, "--out", str(fig)], capsys)[0] == 0
    assert fig.read_text().splitlines()[0].startswith("month,")


def test_validate(capsys):
    code, out, _ = run(["validate", *DATA_ARGS], capsys)
    assert code == 0
    assert json.loads(out)["aligned"]["end"] == "2007-12"


def test_table2_small(capsys):
    code, out, _ = run(["table2", "--age", "67", "--rate", "0.05", "--n-space", "300"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "rate,67"


@pytest.mark.parametrize(
    "argv",
    [
        ["price", "--age", "62", "--rate", "5"],
        ["price", "--age", "62"],
        ["frobnicate"],
        ["index", "--vintage", "1970-1", "--rate", "0.05"],
        ["price", "--age", "130", "--rate", "0.05"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_data_errors_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("month,level\n1970-01,100\n1970-03,101\n")
    code, _, err = run(["validate", "--returns", str(bad), "--cpi", str(DATA / "cpi_u.csv")], capsys)
    assert code == 3 and "1970-03" in err
    assert run(["validate", "--returns", str(tmp_path / "missing.csv"), "--cpi", str(bad)], capsys)[0] == 3
    assert run(["index", *DATA_ARGS, "--vintage", "1940-01", "--rate", "0.05"], capsys)[0] == 3


def test_numerical_error_exit_4_keeps_existing_output(tmp_path, capsys):
    out = tmp_path / "keep.json"
    out.write_text("previous\n")
    code, _, err = run(["price", "--age", "62", "--rate", "0.05", "--n-space", "50", "--out", str(out)], capsys)
    assert code == 4 and "numerical" in err
    assert out.read_text() == "previous\n"
    assert [p.name for p in tmp_path.iterdir()] == ["keep.json"]


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rcla.cli", "annuity", "--age", "75"], capture_output=True, text=True, check=True
    )
    assert json.loads(proc.stdout)["factor"] == pytest.approx(10.304, rel=2e-3)
