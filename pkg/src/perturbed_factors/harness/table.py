from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import ParameterError
from ..utils import Rational
from .estimate import BisectResult, ExponentFit, bisect_threshold, exponent_fit
from .thresholds import ThresholdRow, find_row, row_by_name, threshold_table
from .trials import HostKind, HostSpec, TrialSpec

logger = logging.getLogger(__name__)

#: probes with fewer trials than this widen the interval and are flagged
MIN_TRIALS = 100


@dataclass(frozen=True)
class RowPoint:
    n: int
    host: str
    estimate: BisectResult

    @property
    def p_hat(self) -> float:
        return self.estimate.p_hat


@dataclass
class TableRowReport:
    row: ThresholdRow
    r: int
    alpha: Fraction
    points: list[RowPoint] = field(default_factory=list)
    fit: ExponentFit | None = None
    #: slope the row predicts over the sampled range, log factor included
    expected_slope: float | None = None
    slope_tolerance: float = 0.25
    verdict: str = "undetermined"
    flags: list[str] = field(default_factory=list)

    def to_json(self) -> dict[str, object]:
        return {
            "row": self.row.name,
            "expression": self.row.expression,
            "r": self.r,
            "alpha": str(self.alpha),
            "points": [
                {"n": pt.n, "host": pt.host, "p_hat": pt.p_hat, "interval": list(pt.estimate.interval)}
                for pt in self.points
            ],
            "slope": None if self.fit is None else self.fit.slope,
            "stderr": None if self.fit is None else self.fit.stderr,
            "expected_slope": self.expected_slope,
            "verdict": self.verdict,
            "flags": list(self.flags),
        }


def host_for(alpha: Fraction, n: int) -> HostSpec:
    """
    Extremal host of size ``n`` whose independent part has ``round((1-alpha)n)``
    vertices; empty and complete hosts at the ends.
    """
    k = round((1 - alpha) * n)
    if k >= n:
        return HostSpec(HostKind.EMPTY, n)
    if k <= 0:
        return HostSpec(HostKind.COMPLETE, n)
    return HostSpec(HostKind.EXTREMAL, n, alpha=Fraction(n - k, n))


def resolve_row(case: str | Rational, r: int) -> ThresholdRow:
    """A row by name, or the row containing a given alpha."""
    if isinstance(case, str):
        if any(row.name == case for row in threshold_table(r)):
            return row_by_name(case, r)
        try:
            return find_row(Fraction(case), r)
        except (ValueError, ZeroDivisionError):
            return row_by_name(case, r)
    return find_row(case, r)


def expected_slope(row: ThresholdRow, ns: Sequence[int]) -> float | None:
    """Local slope of ``n^e (log n)^c`` fitted over ``ns``: ``e + c / mean(log n)``."""
    if row.exponent is None:
        return None
    mean_log = sum(math.log(n) for n in ns) / len(ns)
    return float(row.exponent) + float(row.log_power) / mean_log


def reproduce_table_row(
    case: str | Rational,
    ns: Sequence[int],
    seed: int = 0,
    trials: int = 200,
    r: int = 4,
    budget: int = 200_000,
    tolerance: float = 0.05,
    slope_tolerance: float = 0.25,
    threads: int = 1,
) -> TableRowReport:
    """
    Estimate the crossing ``p_hat(n)`` on the host family of one threshold
    row and compare the fitted exponent with the row's.

    ``case`` is a row name such as ``"(1/4,1/2)"`` or a value of ``alpha``.
    Interior rows use the representative ``alpha`` of the range. The verdict
    is ``consistent`` when the fitted slope is within ``slope_tolerance``
    plus two standard errors of the predicted local slope, ``inconsistent``
    otherwise, and ``undetermined`` when fewer than three sizes give a
    positive estimate. Rows where the host alone has a factor are consistent
    exactly when every estimate is below the grid.
    """
    row = resolve_row(case, r)
    if not ns:
        raise ParameterError("need at least one n")
    alpha = row.representative_alpha()
    report = TableRowReport(row, r, alpha, slope_tolerance=slope_tolerance)
    if trials < MIN_TRIALS:
        report.flags.append(f"only {trials} trials per probe, intervals are wide")

    for n in ns:
        if n % r:
            raise ParameterError(f"n = {n} is not divisible by r = {r}")
        host = host_for(alpha, n)
        spec = TrialSpec(host, r, (1 / n**2, 1.0), trials, seed, budget, s=row.s)
        logger.info("row %s: estimating at n=%d on %s", row.name, n, host.describe())
        est = bisect_threshold(spec, tolerance=tolerance, threads=threads)
        report.points.append(RowPoint(n, host.describe(), est))
        report.flags.extend(f"n={n}: {f}" for f in est.flags)
        low, high = est.interval
        if not est.below_grid and low > 0 and high / low > 4:
            report.flags.append(f"n={n}: interval [{low:.3g}, {high:.3g}] spans more than a factor 4")

    if row.exponent is None:
        report.verdict = "consistent" if all(pt.estimate.below_grid for pt in report.points) else "inconsistent"
        return report

    report.expected_slope = expected_slope(row, ns)
    usable = [pt for pt in report.points if not pt.estimate.below_grid]
    if len(usable) < len(report.points):
        report.flags.append("some estimates fell below the grid")
    if len(usable) < 3:
        report.flags.append("fewer than three positive estimates, no slope fitted")
        return report
    report.fit = exponent_fit([pt.n for pt in usable], [pt.p_hat for pt in usable])
    gap = abs(report.fit.slope - report.expected_slope)
    report.verdict = "consistent" if gap <= slope_tolerance + 2 * report.fit.stderr else "inconsistent"
    logger.info(
        "row %s: slope %.3f (expected %.3f), %s", row.name, report.fit.slope, report.expected_slope, report.verdict
    )
    return report
