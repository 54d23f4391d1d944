"""Calendar year-month keys.

Everything in this package works in whole months, so a month is just a
(year, month) pair that supports ordering and integer offsets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

_PATTERN = re.compile(r"^(\d{4})-(\d{2})$")


@dataclass(frozen=True, order=True)
class YearMonth:
    year: int
    month: int

    def __post_init__(self) -> None:
        if not 1 <= self.month <= 12:
            raise ValueError(f"month out of range: {self.month}")

    @classmethod
    def parse(cls, text: str) -> "YearMonth":
        """Parse ``YYYY-MM``; raises ValueError on anything else."""
        m = _PATTERN.match(text.strip())
        if m is None:
            raise ValueError(f"expected YYYY-MM, got {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    @property
    def ordinal(self) -> int:
        return self.year * 12 + (self.month - 1)

    @classmethod
    def from_ordinal(cls, n: int) -> "YearMonth":
        return cls(n // 12, n % 12 + 1)

    def __add__(self, months: int) -> "YearMonth":
        if not isinstance(months, int):
            return NotImplemented
        return YearMonth.from_ordinal(self.ordinal + months)

    def __sub__(self, other: Union["YearMonth", int]):
        if isinstance(other, YearMonth):
            return self.ordinal - other.ordinal
        if isinstance(other, int):
            return YearMonth.from_ordinal(self.ordinal - other)
        return NotImplemented

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"

    def label(self) -> str:
        """Short label in the ``Apr-94`` style used by ruin tables."""
        names = "Jan Feb Mar Apr May Jun Jul Aug Sep Oct Nov Dec".split()
        return f"{names[self.month - 1]}-{self.year % 100:02d}"


def as_month(value: Union[str, YearMonth]) -> YearMonth:
    return value if isinstance(value, YearMonth) else YearMonth.parse(value)


def month_range(start: YearMonth, end: YearMonth) -> list[YearMonth]:
    """Inclusive list of months from ``start`` to ``end``."""
    return [start + k for k in range(end - start + 1)]
