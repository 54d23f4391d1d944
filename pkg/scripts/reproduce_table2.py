"""Price the 5 x 4 RCLA grid under both drift modes and report errors per cell.

Writes ``results/table2_<mode>.csv`` for each mode and
``results/table2_report.md`` with the per-cell relative error against the
published values and the mode that reproduces them.

    python scripts/reproduce_table2.py [--out-dir results]
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from rcla.io import atomic_write_text
from rcla.params import DriftMode, MarketParams
from rcla.pricing import table2

AGES = (50, 57, 62, 67, 75)
RATES = (0.04, 0.05, 0.06, 0.07)
PUBLISHED = {
    0.04: (6326, 3945, 2545, 1467, 440),
    0.05: (13687, 8983, 6072, 3707, 1256),
    0.06: (24410, 16667, 11680, 7459, 2779),
    0.07: (38292, 26983, 19469, 12891, 5192),
}
PUBLISHED_ANNUITY = (21838, 18810, 16493, 14102, 10304)
TOLERANCE = 0.10


def relative_errors(table) -> dict[tuple[float, int], float]:
    return {(s, a): table.value(a, s) / PUBLISHED[s][j] - 1 for s in RATES for j, a in enumerate(AGES)}


def report(tables: dict[str, object], elapsed: dict[str, float]) -> str:
    lines = ["# RCLA price grid: reproduction report", ""]
    lines.append("Parameters: r = 2.5%, mu = 7%, sigma = 20%, Gompertz m = 87.8, b = 9.5, notional $100,000.")
    lines.append("Engine: finite differences (default grid, Richardson-extrapolated).")
    lines.append("")
    verdict = {}
    for mode, t in tables.items():
        err = relative_errors(t)
        worst = max(abs(e) for e in err.values())
        verdict[mode] = worst <= TOLERANCE
        lines.append(f"## drift_mode = {mode}")
        lines.append("")
        lines.append(f"Worst |relative error| {worst:.2%}; every cell within ±{TOLERANCE:.0%}: "
                     f"{'yes' if verdict[mode] else 'no'}. Run time {elapsed[mode]:.1f} s.")
        lines.append("")
        lines.append("| rate | " + " | ".join(f"age {a}" for a in AGES) + " |")
        lines.append("|---" * (len(AGES) + 1) + "|")
        for s in RATES:
            cells = [f"{t.value(a, s):,.0f} vs {PUBLISHED[s][j]:,} ({err[(s, a)]:+.1%})" for j, a in enumerate(AGES)]
            lines.append(f"| {s:.0%} | " + " | ".join(cells) + " |")
        ann = [f"{v:,.0f} vs {p:,} ({v / p - 1:+.2%})" for v, p in zip(t.annuity_per_1000, PUBLISHED_ANNUITY)]
        lines.append("| $1,000 annuity | " + " | ".join(ann) + " |")
        lines.append("")
    chosen = [m for m, ok in verdict.items() if ok]
    lines.append("## Chosen mode")
    lines.append("")
    if chosen:
        lines.append(f"`{chosen[0]}` reproduces all 20 cells within ±{TOLERANCE:.0%} and is the package default.")
    else:
        lines.append("Neither mode reproduces every cell within tolerance; see the per-cell gaps above.")
    lines.append("")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="results")
    args = ap.parse_args(argv)
    out = Path(args.out_dir)
    tables, elapsed = {}, {}
    for mode in (DriftMode.REAL_WORLD, DriftMode.RISK_NEUTRAL):
        t0 = time.perf_counter()
        tables[mode.value] = table2(MarketParams(drift_mode=mode), ages=AGES, rates=RATES)
        elapsed[mode.value] = time.perf_counter() - t0
        tables[mode.value].save(out / f"table2_{mode.value}.csv")
    atomic_write_text(out / "table2_report.md", report(tables, elapsed))
    print(f"wrote {out}/table2_report.md")


if __name__ == "__main__":
    main()
