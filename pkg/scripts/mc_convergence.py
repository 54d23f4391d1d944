"""Time-step bias of the Monte Carlo engine against the finite-difference value.

    python scripts/mc_convergence.py [--age 57] [--rate 0.05] [--paths 200000]

The same seed is used for every step size, so differences between rows are
mostly discretisation bias rather than sampling noise.
"""

from __future__ import annotations

import argparse

from rcla.params import MarketParams
from rcla.pricing import RclaContract, mc_convergence, price_pde


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--age", type=float, default=57)
    ap.add_argument("--rate", type=float, default=0.05)
    ap.add_argument("--paths", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--drift-mode", default="real_world")
    args = ap.parse_args(argv)
    mkt = MarketParams(drift_mode=args.drift_mode)
    c = RclaContract(args.age, args.rate)
    ref = price_pde(c, mkt).value
    print(f"finite differences: {ref:.2f}")
    print(f"{'dt':>8} {'mc':>10} {'se':>8} {'mc/pde-1':>9}")
    for res in mc_convergence(c, mkt, dts=(1 / 12, 1 / 52, 1 / 240), n_paths=args.paths, seed=args.seed):
        print(f"1/{round(1 / res.diagnostics['dt']):<6} {res.value:10.2f} {res.std_error:8.2f} {res.value / ref - 1:+9.3%}")


if __name__ == "__main__":
    main()
