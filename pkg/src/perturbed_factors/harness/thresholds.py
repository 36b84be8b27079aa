"""
Closed-form threshold functions and the known ``K_r``-factor threshold rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParameterError
from ..utils import Rational, as_fraction


def phi(s: int) -> Fraction:
    """``2s / ((s-1)(s+2))``."""
    if s < 2:
        raise ParameterError(f"phi needs s >= 2, got {s}")
    return Fraction(2 * s, (s - 1) * (s + 2))


def p_s(n: int, s: int) -> float:
    """``log n / n`` for ``s = 2`` and ``n^-phi(s)`` above."""
    if s < 2:
        raise ParameterError(f"p_s needs s >= 2, got {s}")
    if n < 3:
        raise ParameterError(f"p_s needs n >= 3, got {n}")
    if s == 2:
        return math.log(n) / n
    return float(n) ** -float(phi(s))


@dataclass(frozen=True)
class ThresholdRow:
    """One range of host densities ``alpha`` and its threshold."""

    name: str
    alpha_low: Fraction
    alpha_high: Fraction
    low_closed: bool
    high_closed: bool
    #: human-readable threshold, e.g. ``n^(-2/3)``
    expression: str
    #: power of ``n``; ``None`` when the host alone has a factor
    exponent: Fraction | None
    #: power of ``log n`` multiplying ``n^exponent``
    log_power: Fraction
    #: ``s`` governing the row, ``None`` for the empty and the Dirac ranges
    s: int | None

    def contains(self, alpha: Rational) -> bool:
        a = as_fraction(alpha)
        above = a >= self.alpha_low if self.low_closed else a > self.alpha_low
        below = a <= self.alpha_high if self.high_closed else a < self.alpha_high
        return above and below

    @property
    def is_point(self) -> bool:
        return self.alpha_low == self.alpha_high

    def representative_alpha(self) -> Fraction:
        if self.is_point or self.low_closed:
            return self.alpha_low
        return (self.alpha_low + self.alpha_high) / 2

    def evaluate(self, n: int) -> float:
        if self.exponent is None:
            return 0.0
        return float(n) ** float(self.exponent) * math.log(n) ** float(self.log_power)


def _fmt(exponent: Fraction, log_power: Fraction) -> str:
    out = f"n^({exponent})"
    if log_power:
        out += " log n" if log_power == 1 else f" (log n)^({log_power})"
    return out


def threshold_table(r: int = 4) -> list[ThresholdRow]:
    """
    Thresholds for a ``K_r``-factor in ``G u G(n, p)`` across the minimum
    degree ``alpha n`` of the host, in increasing ``alpha``.

    Inside ``(1 - s/r, 1 - (s-1)/r)`` the threshold is ``n^(-2/s)``; at the
    point ``alpha = 1 - s/r`` it is ``p_s``. At ``alpha = 0`` it is the
    ``K_r``-factor threshold of ``G(n, p)``, and from ``1 - 1/r`` on the host
    has a factor by itself.
    """
    if r < 2:
        raise ParameterError(f"r must be at least 2, got {r}")
    empty_exp, empty_log = Fraction(-2, r), Fraction(2, r * (r - 1))
    rows = [ThresholdRow("0", Fraction(0), Fraction(0), True, True, _fmt(empty_exp, empty_log), empty_exp, empty_log, None)]
    for s in range(r, 1, -1):
        low, high = 1 - Fraction(s, r), 1 - Fraction(s - 1, r)
        if s < r:
            exponent = Fraction(-1) if s == 2 else -phi(s)
            logs = Fraction(1) if s == 2 else Fraction(0)
            rows.append(ThresholdRow(str(low), low, low, True, True, _fmt(exponent, logs), exponent, logs, s))
        rows.append(
            ThresholdRow(f"({low},{high})", low, high, False, False, _fmt(Fraction(-2, s), Fraction(0)), Fraction(-2, s), Fraction(0), s)
        )
    dirac = 1 - Fraction(1, r)
    rows.append(ThresholdRow(f"[{dirac},1]", dirac, Fraction(1), True, True, "0", None, Fraction(0), None))
    return rows


def find_row(alpha: Rational, r: int = 4) -> ThresholdRow:
    a = as_fraction(alpha)
    for row in threshold_table(r):
        if row.contains(a):
            return row
    raise ParameterError(f"alpha must lie in [0, 1], got {a}")


def row_by_name(name: str, r: int = 4) -> ThresholdRow:
    rows = threshold_table(r)
    for row in rows:
        if row.name == name:
            return row
    raise ParameterError(f"unknown row '{name}', choose from {', '.join(x.name for x in rows)}")
