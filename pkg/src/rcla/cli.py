"""``rcla-lab`` command-line front end.

Every subcommand writes its artifact to ``--out`` (atomically, via a temp
file and rename) and prints a one-line summary, or prints the artifact to
stdout when ``--out`` is omitted. Exit codes: 0 success, 2 usage, 3 data
problems, 4 numerical problems.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from . import __version__
from .backtest import figure1_csv, figure1_data, table1
from .errors import DataError, NumericalError
from .io import atomic_write_text, dump_json
from .market_data import AlignedMarket, SeriesKind, align, load_series
from .months import YearMonth
from .mortality import annuity_factor
from .params import DriftMode, GompertzParams, MarketParams
from .pricing.contract import RclaContract
from .pricing.pde import GridSpec
from .pricing.table import price, table2
from .swp_index import SwpConfig, build_path

DEFAULT_RETURNS = "data/sp500_total_return.csv"
DEFAULT_CPI = "data/cpi_u.csv"
TABLE1_VINTAGES = ("1970-01", "1973-01", "1976-01", "1979-01")
TABLE1_RATES = (0.04, 0.05, 0.06, 0.07, 0.08, 0.09)
TABLE2_AGES = (50.0, 57.0, 62.0, 67.0, 75.0)
TABLE2_RATES = (0.04, 0.05, 0.06, 0.07)
FIGURE1_VINTAGES = ("1970-01", "1973-01", "1976-01")


@dataclass
class RunConfig:
    """Parsed arguments for one invocation, defaulting to the published price-grid parameters."""

    subcommand: str
    returns: str = DEFAULT_RETURNS
    cpi: str = DEFAULT_CPI
    out: Optional[str] = None
    vintage: list[str] = field(default_factory=list)
    rate: list[float] = field(default_factory=list)
    age: list[float] = field(default_factory=list)
    end: Optional[str] = None
    engine: str = "pde"
    paths: int = 100_000
    dt: float = 1.0 / 240.0
    seed: int = 0
    drift_mode: str = DriftMode.REAL_WORLD.value
    r: float = 0.025
    mu: float = 0.07
    sigma: float = 0.20
    gompertz_m: float = 87.8
    gompertz_b: float = 9.5
    notional: float = 100_000.0
    n_space: int = GridSpec.n_space
    age_step: float = GridSpec.age_step

    @property
    def market(self) -> MarketParams:
        return MarketParams(r_real=self.r, mu_real=self.mu, sigma=self.sigma, drift_mode=self.drift_mode)

    @property
    def gompertz(self) -> GompertzParams:
        return GompertzParams(m=self.gompertz_m, b=self.gompertz_b)

    def engine_kwargs(self) -> dict[str, Any]:
        if self.engine == "mc":
            return {"n_paths": self.paths, "dt": self.dt, "seed": self.seed}
        if self.engine == "pde":
            return {"grid": GridSpec(n_space=self.n_space, age_step=self.age_step)}
        return {}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse already exits 2; keep the message terse
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _month(text: str) -> str:
    try:
        return str(YearMonth.parse(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected YYYY-MM, got {text!r}") from None


def _rate(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError(f"rates are decimals in (0, 1), e.g. 0.05; got {text}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rcla-lab", description="SwP pseudo-index backtests and RCLA pricing.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def data_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--returns", default=DEFAULT_RETURNS, help="total-return index CSV (month,level)")
        p.add_argument("--cpi", default=DEFAULT_CPI, help="CPI index CSV (month,level)")

    def out_arg(p: argparse.ArgumentParser, what: str) -> None:
        p.add_argument("--out", help=f"write the {what} here instead of stdout")

    def model_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--engine", choices=("mc", "pde", "closed_form"), default="pde")
        p.add_argument("--paths", type=_positive_int, default=100_000, help="MC paths (default 100000)")
        p.add_argument("--dt", type=float, default=1.0 / 240.0, help="MC time step in years (default 1/240)")
        p.add_argument("--seed", type=int, default=0, help="MC seed (default 0)")
        p.add_argument("--n-space", dest="n_space", type=_positive_int, default=GridSpec.n_space,
                       help="PDE nodes on the uniform core (default %(default)s)")
        p.add_argument("--age-step", dest="age_step", type=float, default=GridSpec.age_step,
                       help="PDE age step in years (default 1/60)")
        p.add_argument("--drift-mode", dest="drift_mode", choices=[m.value for m in DriftMode],
                       default=DriftMode.REAL_WORLD.value,
                       help="wealth drift: mu (real_world, default) or r (risk_neutral)")
        p.add_argument("--r", type=float, default=0.025, help="real risk-free rate (default 0.025)")
        p.add_argument("--mu", type=float, default=0.07, help="real expected return (default 0.07)")
        p.add_argument("--sigma", type=float, default=0.20, help="volatility (default 0.20)")
        p.add_argument("--notional", type=float, default=100_000.0, help="default 100000")
        mortality_args(p)

    def mortality_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--gompertz-m", dest="gompertz_m", type=float, default=87.8, help="modal age (default 87.8)")
        p.add_argument("--gompertz-b", dest="gompertz_b", type=float, default=9.5, help="dispersion (default 9.5)")

    p = sub.add_parser("validate", help="check that the return and CPI files parse and align")
    data_args(p)
    out_arg(p, "JSON report")

    p = sub.add_parser("index", help="one SwP pseudo-index path as CSV")
    data_args(p)
    p.add_argument("--vintage", type=_month, required=True, help="start month YYYY-MM")
    p.add_argument("--rate", type=_rate, required=True, help="spending rate as a decimal")
    p.add_argument("--end", type=_month, help="last month of growth used (default: end of data)")
    out_arg(p, "path CSV")

    p = sub.add_parser("backtest", help="ruin-date table over vintages and rates")
    data_args(p)
    p.add_argument("--vintage", type=_month, action="append", help="repeatable (default 1970/73/76/79-01)")
    p.add_argument("--rate", type=_rate, action="append", help="repeatable (default 0.04..0.09)")
    p.add_argument("--end", type=_month, default="2006-12", help="last month of growth used (default 2006-12)")
    out_arg(p, "table CSV")

    p = sub.add_parser("figure1", help="plot-ready SwP paths for several vintages at one rate")
    data_args(p)
    p.add_argument("--vintage", type=_month, action="append", help="repeatable (default 1970/73/76-01)")
    p.add_argument("--rate", type=_rate, default=0.07, help="spending rate (default 0.07)")
    p.add_argument("--end", type=_month, default="2006-12", help="last month of growth used (default 2006-12)")
    out_arg(p, "wide CSV")

    p = sub.add_parser("price", help="value one RCLA contract (JSON)")
    p.add_argument("--age", type=float, required=True, help="purchase age")
    p.add_argument("--rate", type=_rate, required=True, help="spending rate as a decimal")
    model_args(p)
    out_arg(p, "JSON result")

    p = sub.add_parser("annuity", help="immediate real life annuity factor (JSON)")
    p.add_argument("--age", type=float, required=True)
    p.add_argument("--r", type=float, default=0.025, help="real risk-free rate (default 0.025)")
    mortality_args(p)
    out_arg(p, "JSON result")

    p = sub.add_parser("table2", help="RCLA values over purchase ages and spending rates (CSV)")
    p.add_argument("--age", type=float, action="append", help="repeatable (default 50 57 62 67 75)")
    p.add_argument("--rate", type=_rate, action="append", help="repeatable (default 0.04..0.07)")
    model_args(p)
    out_arg(p, "table CSV")
    return ap


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(subcommand=ns.subcommand)
    for key, value in vars(ns).items():
        if key == "subcommand" or value is None:
            continue
        if key in ("vintage", "rate", "age") and not isinstance(value, list):
            value = [value]
        setattr(cfg, key, value)
    return cfg


def _market(cfg: RunConfig, start: Optional[str] = None, end: Optional[str] = None) -> AlignedMarket:
    returns = load_series(cfg.returns, SeriesKind.TOTAL_RETURN)
    cpi = load_series(cfg.cpi, SeriesKind.CPI)
    if start is None:
        return align(returns, cpi)
    full = align(returns, cpi)
    return full.window(start, end)


def _emit(cfg: RunConfig, text: str, summary: str) -> None:
    if cfg.out:
        atomic_write_text(cfg.out, text)
        print(f"{summary} -> {cfg.out}")
    else:
        sys.stdout.write(text)


def _validate(cfg: RunConfig) -> None:
    returns = load_series(cfg.returns, SeriesKind.TOTAL_RETURN)
    cpi = load_series(cfg.cpi, SeriesKind.CPI)
    mkt = align(returns, cpi)
    report = {
        "returns": {"path": cfg.returns, "start": str(returns.start_month), "end": str(returns.end_month)},
        "cpi": {"path": cfg.cpi, "start": str(cpi.start_month), "end": str(cpi.end_month)},
        "aligned": {"start": str(mkt.start_month), "end": str(mkt.end_month), "months": len(mkt)},
    }
    _emit(cfg, dump_json(report), f"ok: {len(mkt)} aligned months {mkt.start_month}..{mkt.end_month}")


def _index(cfg: RunConfig) -> None:
    vintage, rate = cfg.vintage[0], cfg.rate[0]
    path = build_path(SwpConfig(YearMonth.parse(vintage), rate), _market(cfg, vintage, cfg.end))
    ruin = "never ruined" if path.ruin_month is None else f"ruined {path.ruin_month}"
    _emit(cfg, path.to_csv(), f"index {vintage} @ {rate:g}: {len(path.levels)} months, {ruin}")


def _backtest(cfg: RunConfig) -> None:
    vintages = cfg.vintage or list(TABLE1_VINTAGES)
    rates = cfg.rate or list(TABLE1_RATES)
    first = min(YearMonth.parse(v) for v in vintages)
    table = table1(_market(cfg, str(first), cfg.end), vintages, rates)
    n = sum(c is not None for row in table.cells for c in row)
    _emit(cfg, table.to_csv(), f"backtest: {n} of {len(rates) * len(vintages)} cells ruined by {cfg.end}")


def _figure1(cfg: RunConfig) -> None:
    vintages = cfg.vintage or list(FIGURE1_VINTAGES)
    rate = cfg.rate[0]
    first = min(YearMonth.parse(v) for v in vintages)
    paths = figure1_data(_market(cfg, str(first), cfg.end), vintages, rate)
    _emit(cfg, figure1_csv(paths), f"figure1: {len(paths)} paths at {rate:g}")


def _price(cfg: RunConfig) -> None:
    contract = RclaContract(cfg.age[0], cfg.rate[0], notional=cfg.notional)
    res = price(contract, cfg.market, cfg.gompertz, cfg.engine, **cfg.engine_kwargs())
    extra = "" if res.std_error is None else f" (se {res.std_error:.2f})"
    _emit(
        cfg,
        dump_json(res.to_dict()),
        f"{cfg.engine} value {res.value:.2f}{extra} age {contract.purchase_age:g} rate {contract.rate_s:g}",
    )


def _annuity(cfg: RunConfig) -> None:
    age = cfg.age[0]
    g = cfg.gompertz
    factor = annuity_factor(age, cfg.r, g)
    doc = {"age": age, "r": cfg.r, "gompertz_m": g.m, "gompertz_b": g.b, "factor": factor, "per_1000": 1000 * factor}
    _emit(cfg, dump_json(doc), f"annuity factor {factor:.3f} at age {age:g}")


def _table2(cfg: RunConfig) -> None:
    ages = tuple(cfg.age or TABLE2_AGES)
    rates = tuple(cfg.rate or TABLE2_RATES)
    t = table2(cfg.market, cfg.gompertz, ages=ages, rates=rates, engine=cfg.engine,
               notional=cfg.notional, **cfg.engine_kwargs())
    _emit(cfg, t.to_csv(), f"table2: {len(ages) * len(rates)} cells, engine {cfg.engine}, {cfg.drift_mode}")


COMMANDS = {
    "validate": _validate,
    "index": _index,
    "backtest": _backtest,
    "figure1": _figure1,
    "price": _price,
    "annuity": _annuity,
    "table2": _table2,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        COMMANDS[cfg.subcommand](cfg)
    except DataError as exc:
        print(f"rcla-lab: data error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"rcla-lab: data error: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"rcla-lab: numerical error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"rcla-lab: invalid argument: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
