"""
Threshold estimation: the 50% crossing of the success curve and the
power-law exponent of the crossing as ``n`` grows.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from ..errors import BracketError, FitError, ParameterError
from .trials import BISECT_LANE, SweepPoint, TrialSpec, run_trials

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Probe:
    index: int
    point: SweepPoint

    @property
    def p(self) -> float:
        return self.point.p

    @property
    def probability(self) -> float:
        # all-timeout probes count as failures
        return self.point.probability or 0.0


@dataclass
class BisectResult:
    #: estimated crossing; 0 when the low end of the grid already succeeds
    p_hat: float
    low: float
    high: float
    target: float
    below_grid: bool = False
    probes: list[Probe] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    @property
    def interval(self) -> tuple[float, float]:
        return (self.low, self.high)

    def to_json(self) -> dict[str, object]:
        return {
            "p_hat": self.p_hat,
            "interval": [self.low, self.high],
            "target": self.target,
            "below_grid": self.below_grid,
            "probes": [
                {
                    "p": pr.p,
                    "successes": pr.point.successes,
                    "trials": pr.point.trials,
                    "indeterminates": pr.point.indeterminates,
                }
                for pr in self.probes
            ],
            "flags": list(self.flags),
        }


def _midpoint(low: float, high: float) -> float:
    if low > 0:
        return math.sqrt(low * high)
    return high / 2


def bisect_threshold(
    spec: TrialSpec,
    target: float = 0.5,
    tolerance: float = 0.05,
    max_probes: int = 40,
    confidence: float = 0.95,
    threads: int = 1,
) -> BisectResult:
    """
    Locate the edge probability at which the success rate crosses ``target``.

    The bracket is the smallest and largest value of ``spec.p_grid``. Each
    probe runs ``spec.trials`` trials; the bracket is halved geometrically
    until its ends are within a relative ``tolerance``.

    Returns
    -------
    BisectResult
        ``p_hat`` is the geometric centre of the final bracket. The interval
        runs from the largest probe whose success interval lies below
        ``target`` to the smallest probe whose interval lies above it.

    Raises
    ------
    BracketError
        If the success rate at the top of the grid stays below ``target``.
    """
    if not 0 < target < 1:
        raise ParameterError(f"target must lie in (0, 1), got {target}")
    if tolerance <= 0:
        raise ParameterError(f"tolerance must be positive, got {tolerance}")
    lo, hi = min(spec.p_grid), max(spec.p_grid)
    probes: list[Probe] = []
    flags: list[str] = []

    def probe(p: float) -> Probe:
        idx = len(probes)
        (outcomes,) = run_trials(spec, [(idx, p)], threads, BISECT_LANE)
        pr = Probe(idx, SweepPoint.from_outcomes(p, outcomes))
        if pr.point.indeterminates:
            logger.warning("probe p=%.6g: %d trials timed out", p, pr.point.indeterminates)
        if not pr.point.determinate:
            flags.append(f"every trial at p={p:.6g} timed out")
        logger.info("probe %d: p=%.6g success %.3f", idx, p, pr.probability)
        probes.append(pr)
        return pr

    bottom = probe(lo)
    if bottom.probability >= target:
        logger.info("success rate %.3f at the bottom of the grid, reporting below-grid", bottom.probability)
        return BisectResult(0.0, 0.0, lo, target, below_grid=True, probes=probes, flags=flags)
    top = probe(hi) if hi != lo else bottom
    if top.probability < target:
        raise BracketError(target, bottom.probability, top.probability)

    while len(probes) < max_probes and (hi - lo) > tolerance * hi:
        mid = _midpoint(lo, hi)
        if probe(mid).probability >= target:
            hi = mid
        else:
            lo = mid
    if (hi - lo) > tolerance * hi:
        flags.append(f"probe budget of {max_probes} exhausted before the bracket closed")

    below = [pr.p for pr in probes if pr.point.interval(confidence)[1] < target]
    above = [pr.p for pr in probes if pr.point.interval(confidence)[0] > target]
    low_ci = max(below, default=min(spec.p_grid))
    high_ci = min(above, default=max(spec.p_grid))
    return BisectResult(_midpoint(lo, hi), low_ci, high_ci, target, probes=probes, flags=flags)


# ------------------------
# Exponent fits
# ------------------------
@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    #: standard error of the slope
    stderr: float
    ns: tuple[int, ...]
    ps: tuple[float, ...]

    def predict(self, n: int) -> float:
        return math.exp(self.intercept) * n**self.slope


def exponent_fit(ns: Sequence[int], ps: Sequence[float]) -> ExponentFit:
    """Least-squares slope of ``log p`` against ``log n``."""
    if len(ns) != len(ps):
        raise FitError(f"{len(ns)} sizes but {len(ps)} estimates")
    if len(ns) < 3:
        raise FitError(f"need at least three points, got {len(ns)}")
    if any(p <= 0 for p in ps):
        raise FitError("every estimate must be positive to take logarithms")
    if any(n <= 0 for n in ns):
        raise FitError("every n must be positive")
    if len(set(ns)) < 2:
        raise FitError("all points share the same n, the slope is undefined")
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(ps, dtype=float))
    design = np.column_stack([x, np.ones_like(x)])
    coef, _, _, _ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    sigma2 = float(resid @ resid) / (len(ns) - 2)
    sxx = float(((x - x.mean()) ** 2).sum())
    stderr = math.sqrt(sigma2 / sxx)
    return ExponentFit(float(coef[0]), float(coef[1]), stderr, tuple(ns), tuple(ps))
