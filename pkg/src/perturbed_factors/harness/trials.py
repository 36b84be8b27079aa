"""
Monte Carlo trials: does ``G u G(n, p)`` contain a ``K_r``-factor?

Trial ``i`` at grid point ``j`` samples its random graph from the sub-stream
``(lane, j, i)`` of the master seed, so results do not depend on how trials
are spread over worker processes.
"""

from __future__ import annotations

import functools
import logging
import math
import time
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from multiprocessing import get_context

from scipy import stats

from ..errors import ParameterError
from ..graph import (
    Graph,
    gen_complete,
    gen_complete_multipartite,
    gen_empty,
    gen_extremal_host,
    gen_gnp,
    graph_union,
)
from ..rng import Seed
from ..solver.factor import FactorInstance, SolveStatus, solve_factor
from ..validate import validate_result

logger = logging.getLogger(__name__)

#: stream lanes keep sweep and bisection draws apart
SWEEP_LANE = 0
BISECT_LANE = 1


class HostKind(Enum):
    COMPLETE = "complete"
    EMPTY = "empty"
    EXTREMAL = "extremal"
    GNP = "gnp"
    MULTIPARTITE = "multipartite"
    FILE = "file"


@dataclass(frozen=True)
class HostSpec:
    """Recipe for the deterministic host graph of a trial family."""

    kind: HostKind
    n: int = 0
    alpha: Fraction | None = None
    p: Fraction | None = None
    classes: tuple[int, ...] = ()
    path: str | None = None
    seed: int = 0

    def build(self) -> Graph:
        return _build_host(self)

    def describe(self) -> str:
        if self.kind is HostKind.EXTREMAL:
            return f"extremal(n={self.n}, alpha={self.alpha})"
        if self.kind is HostKind.GNP:
            return f"gnp(n={self.n}, p={self.p}, seed={self.seed})"
        if self.kind is HostKind.MULTIPARTITE:
            return f"multipartite({list(self.classes)})"
        if self.kind is HostKind.FILE:
            return f"file({self.path})"
        return f"{self.kind.value}(n={self.n})"


@functools.lru_cache(maxsize=32)
def _build_host(spec: HostSpec) -> Graph:
    if spec.kind is HostKind.COMPLETE:
        return gen_complete(spec.n)
    if spec.kind is HostKind.EMPTY:
        return gen_empty(spec.n)
    if spec.kind is HostKind.EXTREMAL:
        if spec.alpha is None:
            raise ParameterError("extremal host needs alpha")
        return gen_extremal_host(spec.n, spec.alpha)
    if spec.kind is HostKind.GNP:
        if spec.p is None:
            raise ParameterError("gnp host needs p")
        return gen_gnp(spec.n, spec.p, spec.seed)
    if spec.kind is HostKind.MULTIPARTITE:
        return gen_complete_multipartite(spec.classes)
    if spec.path is None:
        raise ParameterError("file host needs a path")
    from ..serialize import read_graph

    return read_graph(spec.path)


@dataclass(frozen=True)
class TrialSpec:
    host: HostSpec
    r: int
    p_grid: tuple[float, ...]
    trials: int = 200
    seed: int = 0
    budget: int = 200_000
    #: ``s`` used for the reference curve ``p_s``; ``None`` when irrelevant
    s: int | None = None
    #: re-check every found factor and every negative answer
    validate: bool = True

    def __post_init__(self) -> None:
        if self.r < 2:
            raise ParameterError(f"r must be at least 2, got {self.r}")
        if self.trials < 1:
            raise ParameterError(f"need at least one trial per point, got {self.trials}")
        if not self.p_grid:
            raise ParameterError("the p grid is empty")
        if any(not 0 <= p <= 1 for p in self.p_grid):
            raise ParameterError(f"edge probabilities must lie in [0, 1], got {list(self.p_grid)}")
        n = self.n
        if n % self.r:
            raise ParameterError(f"{n} vertices are not divisible by r = {self.r}")

    @property
    def n(self) -> int:
        return self.host.build().n


def run_trial(spec: TrialSpec, p: float, trial_index: int, p_index: int = 0, lane: int = SWEEP_LANE) -> bool | None:
    """
    One sample of ``host u G(n, p)`` and an exact factor search on it.
    ``None`` means the solver ran out of budget.
    """
    host = spec.host.build()
    noise = gen_gnp(host.n, p, Seed(spec.seed).derive(lane, p_index, trial_index))
    inst = FactorInstance(graph_union(host, noise), spec.r)
    result = solve_factor(inst, spec.budget)
    if spec.validate:
        validate_result(inst, result)
    if result.status is SolveStatus.TIMEOUT:
        return None
    return result.status is SolveStatus.FOUND


def _trial_job(job: tuple[TrialSpec, float, int, int, int]) -> bool | None:
    spec, p, p_index, trial_index, lane = job
    return run_trial(spec, p, trial_index, p_index, lane)


def run_trials(
    spec: TrialSpec, points: Sequence[tuple[int, float]], threads: int = 1, lane: int = SWEEP_LANE
) -> list[list[bool | None]]:
    """Outcomes per ``(p_index, p)`` point, in trial order."""
    jobs = [(spec, p, idx, t, lane) for idx, p in points for t in range(spec.trials)]
    if threads > 1 and len(jobs) > 1:
        with get_context("spawn").Pool(processes=min(threads, len(jobs))) as pool:
            flat = pool.map(_trial_job, jobs)
    else:
        flat = [_trial_job(job) for job in jobs]
    return [flat[i * spec.trials : (i + 1) * spec.trials] for i in range(len(points))]


# ------------------------
# Aggregation
# ------------------------
@dataclass(frozen=True)
class SweepPoint:
    p: float
    successes: int
    trials: int
    indeterminates: int

    @classmethod
    def from_outcomes(cls, p: float, outcomes: Sequence[bool | None]) -> SweepPoint:
        return cls(p, sum(1 for o in outcomes if o is True), len(outcomes), sum(1 for o in outcomes if o is None))

    @property
    def determinate(self) -> int:
        return self.trials - self.indeterminates

    @property
    def probability(self) -> float | None:
        if not self.determinate:
            return None
        return self.successes / self.determinate

    def interval(self, confidence: float = 0.95) -> tuple[float, float]:
        """Clopper-Pearson interval of the success probability."""
        if not self.determinate:
            return (0.0, 1.0)
        ci = stats.binomtest(self.successes, self.determinate).proportion_ci(confidence_level=confidence)
        return (float(ci.low), float(ci.high))


@dataclass
class SweepResult:
    spec: TrialSpec
    points: list[SweepPoint]
    smoothed: list[float] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)
    #: wall-clock seconds, not part of any written artefact
    elapsed: float = 0.0

    def rows(self) -> list[dict[str, object]]:
        n = self.spec.n
        return [
            {"n": n, "p": pt.p, "successes": pt.successes, "trials": pt.trials, "indeterminates": pt.indeterminates}
            for pt in self.points
        ]

    def summary(self) -> dict[str, object]:
        return {
            "host": self.spec.host.describe(),
            "n": self.spec.n,
            "r": self.spec.r,
            "seed": self.spec.seed,
            "trials": self.spec.trials,
            "points": [
                {
                    "p": pt.p,
                    "probability": pt.probability,
                    "interval": list(pt.interval()),
                    "smoothed": s,
                }
                for pt, s in zip(self.points, self.smoothed)
            ],
            "flags": list(self.flags),
        }


def monotone_smooth(values: Sequence[float], weights: Sequence[float]) -> list[float]:
    """
    Weighted pool-adjacent-violators fit: the non-decreasing sequence closest
    to ``values`` in weighted least squares. Zero-weight entries take the
    value of their block.
    """
    if len(values) != len(weights):
        raise ParameterError("values and weights must have the same length")
    blocks: list[list[float]] = []  # [mean, weight, count]
    for v, w in zip(values, weights):
        blocks.append([float(v), float(w), 1])
        while len(blocks) > 1 and blocks[-2][0] > blocks[-1][0]:
            m2, w2, c2 = blocks.pop()
            m1, w1, c1 = blocks.pop()
            total = w1 + w2
            mean = (m1 * w1 + m2 * w2) / total if total else max(m1, m2)
            blocks.append([mean, total, c1 + c2])
    out: list[float] = []
    for mean, _, count in blocks:
        out.extend([mean] * int(count))
    return out


@dataclass(frozen=True)
class MonotonicityFlag:
    index: int
    p_low: float
    p_high: float
    #: one-sided p-value of "success probability drops from p_low to p_high"
    pvalue: float

    def __str__(self) -> str:
        return f"success rate drops between p={self.p_low:.6g} and p={self.p_high:.6g} (p-value {self.pvalue:.2g})"


def monotonicity_audit(points: Sequence[SweepPoint], level: float = 0.99) -> list[MonotonicityFlag]:
    """
    Two-proportion test between adjacent grid points; a drop significant at
    ``level`` is flagged.
    """
    flags = []
    for i in range(len(points) - 1):
        a, b = points[i], points[i + 1]
        if not a.determinate or not b.determinate:
            continue
        pa, pb = a.successes / a.determinate, b.successes / b.determinate
        pooled = (a.successes + b.successes) / (a.determinate + b.determinate)
        if pooled in (0.0, 1.0) or pa <= pb:
            continue
        se = math.sqrt(pooled * (1 - pooled) * (1 / a.determinate + 1 / b.determinate))
        pvalue = float(stats.norm.sf((pa - pb) / se))
        if pvalue < 1 - level:
            flag = MonotonicityFlag(i, a.p, b.p, pvalue)
            logger.warning("monotonicity audit: %s", flag)
            flags.append(flag)
    return flags


def sweep(spec: TrialSpec, threads: int = 1) -> SweepResult:
    """
    ``spec.trials`` trials at every grid point.

    Points where every trial timed out are flagged; timeouts never count as
    failures. The result carries the raw counts, a monotone smoothing of the
    curve and the flags of the monotonicity audit.
    """
    start = time.perf_counter()
    outcomes = run_trials(spec, list(enumerate(spec.p_grid)), threads)
    points = [SweepPoint.from_outcomes(p, o) for p, o in zip(spec.p_grid, outcomes)]
    result = SweepResult(spec, points)
    for pt in points:
        if pt.indeterminates:
            logger.warning("p=%.6g: %d of %d trials timed out and are excluded", pt.p, pt.indeterminates, pt.trials)
        if not pt.determinate:
            result.flags.append(f"every trial at p={pt.p:.6g} timed out")
        logger.info("p=%.6g: %d/%d successes", pt.p, pt.successes, pt.determinate)
    probs = [pt.probability or 0.0 for pt in points]
    result.smoothed = monotone_smooth(probs, [pt.determinate for pt in points])
    result.flags.extend(str(f) for f in monotonicity_audit(points))
    result.elapsed = time.perf_counter() - start
    return result
