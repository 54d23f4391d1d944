"""Monte Carlo against finite differences on the full 5 x 4 grid.

    python scripts/engine_crosscheck.py [--paths 500000] [--dt 0.0833333333333]

Writes ``results/engine_crosscheck.csv`` with both values, the MC standard
error and whether ``|MC - PDE| <= max(1% of PDE, 2 SE)`` holds per cell.
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from rcla.io import atomic_write_text
from rcla.params import MarketParams
from rcla.pricing import RclaContract, price_mc, price_pde

ROOT = Path(__file__).resolve().parents[1]
AGES = (50, 57, 62, 67, 75)
RATES = (0.04, 0.05, 0.06, 0.07)


def crosscheck(mkt: MarketParams, paths: int, dt: float, seed: int) -> list[dict]:
    rows = []
    for s in RATES:
        for a in AGES:
            c = RclaContract(a, s)
            pde = price_pde(c, mkt).value
            mc = price_mc(c, mkt, n_paths=paths, dt=dt, seed=seed)
            tol = max(0.01 * pde, 2 * mc.std_error)
            rows.append({"rate": s, "age": a, "pde": pde, "mc": mc.value, "se": mc.std_error,
                         "diff": mc.value - pde, "tol": tol, "ok": abs(mc.value - pde) <= tol})
    return rows


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--paths", type=int, default=500_000)
    ap.add_argument("--dt", type=float, default=1 / 12)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--drift-mode", default="real_world")
    ap.add_argument("--out", default=ROOT / "results" / "engine_crosscheck.csv", type=Path)
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    rows = crosscheck(MarketParams(drift_mode=args.drift_mode), args.paths, args.dt, args.seed)
    lines = ["rate,age,pde,mc,mc_se,diff,tolerance,within"]
    for r in rows:
        lines.append(f"{r['rate']},{r['age']},{r['pde']:.2f},{r['mc']:.2f},{r['se']:.2f},"
                     f"{r['diff']:.2f},{r['tol']:.2f},{r['ok']}")
    atomic_write_text(args.out, "\n".join(lines) + "\n")
    n_ok = sum(r["ok"] for r in rows)
    print(f"{n_ok}/{len(rows)} cells within tolerance in {time.perf_counter() - t0:.0f} s -> {args.out}")


if __name__ == "__main__":
    main()
