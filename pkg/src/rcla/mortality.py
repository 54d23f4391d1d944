"""Gompertz mortality and real life-annuity factors.

Hazard ``lambda(x) = exp((x - m)/b) / b``; survival
``tpx = exp(exp((x - m)/b) * (1 - exp(t/b)))``. Annuity factors are
continuous, per $1/yr of real income, truncated at ``TERMINAL_AGE``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import cumulative_simpson

from .params import GompertzParams

TERMINAL_AGE = 120.0
# Simpson step for single factors (years); well under the 1e-6 accuracy target.
_STEP = 1.0 / 240.0


def survival(x, t, g: GompertzParams = GompertzParams()):
    """Probability that a life aged ``x`` survives ``t`` more years.

    Works elementwise on arrays.
    """
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(x < 0) or np.any(t < 0):
        raise ValueError("age and horizon must be non-negative")
    out = np.exp(np.exp((x - g.m) / g.b) * -np.expm1(t / g.b))
    return float(out) if out.ndim == 0 else out


def hazard(x, g: GompertzParams = GompertzParams()):
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("age must be non-negative")
    out = np.exp((x - g.m) / g.b) / g.b
    return float(out) if out.ndim == 0 else out


def annuity_factor(
    x: float,
    r: float,
    g: GompertzParams = GompertzParams(),
    terminal_age: float = TERMINAL_AGE,
) -> float:
    """Value of $1/yr of continuous real lifetime income for a life aged ``x``.

    Composite Simpson on ``[0, terminal_age - x]`` with step <= 1/240 yr.
    For large ``r`` the step shrinks to resolve ``exp(-r t)`` and the range
    stops where that weight falls below ``exp(-50)``.
    """
    if x < 0:
        raise ValueError("age must be non-negative")
    horizon = terminal_age - x
    if horizon <= 0:
        return 0.0
    step = _STEP
    if r > 0:
        horizon = min(horizon, 50.0 / r)
        step = min(step, 1.0 / (100.0 * r))
    n = max(2, 2 * math.ceil(horizon / (2 * step)))
    t = np.linspace(0.0, horizon, n + 1)
    f = np.exp(-r * t) * survival(x, t, g)
    h = horizon / n
    return float(h / 3.0 * (f[0] + f[-1] + 4.0 * f[1:-1:2].sum() + 2.0 * f[2:-1:2].sum()))


def annuity_factor_discrete(
    x: float,
    r: float,
    g: GompertzParams = GompertzParams(),
    payments_per_year: int = 12,
    terminal_age: float = TERMINAL_AGE,
) -> float:
    """Annuity-due variant: ``1/k`` paid at the start of each ``1/k`` year while alive."""
    n = int(math.floor((terminal_age - x) * payments_per_year))
    t = np.arange(n) / payments_per_year
    return float(np.sum(np.exp(-r * t) * survival(x, t, g)) / payments_per_year)


class AnnuityCurve:
    """Annuity factors on a fine age grid, for fast lookup at arbitrary ages.

    Uses ``a(x) = exp(r x) / l(x) * int_x^T exp(-r y) l(y) dy`` with
    ``l(y) = exp(-exp((y - m)/b))`` and a single backward cumulative
    Simpson integral, so every grid age costs O(1).
    """

    def __init__(
        self,
        r: float,
        g: GompertzParams = GompertzParams(),
        age_min: float = 0.0,
        step: float = 1.0 / 1200.0,
        terminal_age: float = TERMINAL_AGE,
    ) -> None:
        self.r, self.g, self.terminal_age = r, g, terminal_age
        n = max(2, math.ceil((terminal_age - age_min) / step))
        ages = np.linspace(age_min, terminal_age, n + 1)
        # shift exponents so neither factor under/overflows
        log_l = -np.exp((ages - g.m) / g.b)
        log_f = -r * (ages - terminal_age) + log_l
        shift = log_f.max()
        f = np.exp(log_f - shift)
        tail = cumulative_simpson(f[::-1], dx=ages[1] - ages[0], initial=0.0)[::-1]
        with np.errstate(divide="ignore"):
            self.values = tail * np.exp(shift + r * (ages - terminal_age) - log_l)
        self.values[-1] = 0.0
        self.ages = ages

    def __call__(self, x):
        return np.interp(x, self.ages, self.values, right=0.0)
