"""
Growing ``h``: split a sparse set off ``A_{h+1}``, then tidy the sparse parts.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import ParameterError
from ..graph import Graph
from ..params import RParams, Variant
from ..rng import Seed, as_seed
from ..utils import canonical, format_fraction, iter_bits, mask_of
from .partition import (
    HPartition,
    PartitionConstants,
    PropertyCheck,
    PropertyReport,
    check_properties,
    check_star_properties,
    sparse_size,
    sparse_threshold,
)
from .sparse import EXACT_LIMIT, sparse_subset_heuristic, sparsest_subset

logger = logging.getLogger(__name__)


# ------------------------
# Split
# ------------------------
@dataclass(frozen=True)
class SplitOutcome:
    #: the refined partition, ``None`` when the preconditions failed
    partition: HPartition | None
    #: vertices of ``X`` moved back to the remainder
    r_set: tuple[int, ...] = ()
    #: vertices of the remainder pulled into the new sparse part
    s_set: tuple[int, ...] = ()
    star: PropertyReport | None = None
    rejection: str | None = None

    @property
    def accepted(self) -> bool:
        return self.rejection is None and self.star is not None and self.star.ok


def refine_split(p: HPartition, x: Iterable[int]) -> SplitOutcome:
    """
    Split the sparse set ``X`` off ``A_{h+1}``.

    With ``Y = A_{h+1} - X``, the vertices of ``X`` missing at least ``3 beta n``
    of ``Y`` go back to the remainder and the vertices of ``Y`` seeing at most
    ``3 beta n`` of ``X`` join the new part. The refined partition is audited
    for the three invariants kept while ``h`` grows.
    """
    xs = canonical(x, p.n)
    if p.h >= p.params.m:
        return SplitOutcome(None, rejection=f"h = {p.h} already equals m")
    k = sparse_size(p.params, p.n)
    last = p.masks[-1]
    xmask = mask_of(xs)
    if xmask & ~last:
        return SplitOutcome(None, rejection=f"X is not contained in A_{p.h + 1}")
    if len(xs) != k:
        return SplitOutcome(None, rejection=f"|X| = {len(xs)}, expected {k}")
    edges = p.host.edge_count_within(xs)
    threshold = sparse_threshold(p)
    if edges > threshold:
        return SplitOutcome(None, rejection=f"e(X) = {edges} exceeds {format_fraction(threshold)}")

    ymask = last & ~xmask
    cut = 3 * p.constants.beta * p.n
    r_set = tuple(v for v in xs if (ymask & ~p.host.mask(v)).bit_count() >= cut)
    s_set = tuple(v for v in iter_bits(ymask) if p.host.degree_into(v, xmask) <= cut)
    new_sparse = (xmask & ~mask_of(r_set)) | mask_of(s_set)
    rest = (ymask & ~mask_of(s_set)) | mask_of(r_set)
    refined = p.with_parts([*p.parts[:-1], iter_bits(new_sparse), iter_bits(rest)])
    star = check_star_properties(refined)
    logger.debug("split: |R| = %d, |S| = %d, invariants %s", len(r_set), len(s_set), "hold" if star.ok else star.failing)
    return SplitOutcome(refined, r_set, s_set, star)


# ------------------------
# Cleanup
# ------------------------
@dataclass(frozen=True)
class Shift:
    vertex: int
    #: 0-based part indices
    source: int
    target: int
    #: sum of e(A_i) over the sparse parts after the shift
    potential: int


@dataclass
class CleanupResult:
    partition: HPartition
    start_potential: int
    shifts: list[Shift] = field(default_factory=list)
    step_limit_hit: bool = False
    #: sum over the sparse parts of the symmetric difference to the input parts
    drift: int = 0
    report: PropertyReport = field(default_factory=PropertyReport)

    @property
    def potentials(self) -> list[int]:
        return [self.start_potential, *(s.potential for s in self.shifts)]


def _find_shift(g: Graph, parts: list[int]) -> tuple[int, int, int] | None:
    for i, src in enumerate(parts):
        for v in iter_bits(src):
            own = g.degree_into(v, src)
            for j, dst in enumerate(parts):
                if j == i:
                    continue
                into = g.degree_into(v, dst)
                if 3 * into < dst.bit_count() and into < own:
                    return v, i, j
    return None


def cleanup_v_vi(p: HPartition, step_limit: int | None = None) -> CleanupResult:
    """
    Move single vertices between the sparse parts ``A_1..A_h`` while some
    vertex sees fewer than a third of another sparse part and has fewer
    neighbours there than in its own. Every shift strictly lowers
    ``sum e(A_i)``, which bounds the number of shifts.

    The result carries the audit of the cross-degree and missing-edge
    properties on the final partition.
    """
    limit = p.n * p.n if step_limit is None else step_limit
    if limit < 0:
        raise ParameterError(f"step limit must be nonnegative, got {limit}")
    sparse = list(p.masks[:-1])
    original = tuple(sparse)
    potential = sum(p.host.edge_count_within(iter_bits(a)) for a in sparse)
    result = CleanupResult(p, potential)
    while True:
        found = _find_shift(p.host, sparse)
        if found is None:
            break
        if len(result.shifts) >= limit:
            logger.warning("cleanup stopped at the step limit of %d shifts", limit)
            result.step_limit_hit = True
            break
        v, i, j = found
        potential -= p.host.degree_into(v, sparse[i]) - p.host.degree_into(v, sparse[j])
        sparse[i] &= ~(1 << v)
        sparse[j] |= 1 << v
        result.shifts.append(Shift(v, i, j, potential))
        logger.debug("cleanup: vertex %d from A_%d to A_%d, potential %d", v, i + 1, j + 1, potential)

    result.partition = p.with_parts([*(iter_bits(a) for a in sparse), p.last])
    result.drift = sum((a ^ b).bit_count() for a, b in zip(sparse, original))
    full = check_properties(result.partition)
    for name in ("v", "vi"):
        result.report.add(full[name])
    return result


# ------------------------
# Search
# ------------------------
@dataclass(frozen=True)
class PartitionStep:
    #: "refine", "rejected", "stop" or "cleanup"
    action: str
    h: int
    detail: str = ""


@dataclass
class PartitionSearch:
    partition: HPartition
    trace: list[PartitionStep]
    report: PropertyReport
    cleanup: CleanupResult
    min_degree_ok: bool = True

    @property
    def certified(self) -> bool:
        return self.report.ok and not self.cleanup.step_limit_hit

    @property
    def method(self) -> str:
        return self.report["iv"].method


def _sparse_candidate(p: HPartition, seed: Seed, samples: int) -> tuple[int, tuple[int, ...]]:
    k = sparse_size(p.params, p.n)
    if len(p.last) <= EXACT_LIMIT:
        return sparsest_subset(p.host, p.last, k)
    return sparse_subset_heuristic(p.host, p.last, k, seed.derive(p.h), samples)


def find_partition(
    host: Graph,
    params: RParams,
    constants: PartitionConstants | None = None,
    seed: Seed | int = 0,
    samples: int = 32,
    step_limit: int | None = None,
) -> PartitionSearch:
    """
    Grow ``h`` from 0 by splitting sparse ``sn/r``-sets off the last part.

    Parameters
    ----------
    host:
        The graph to partition.
    params:
        Absorber-variant parameters.
    constants:
        ``beta`` and ``gamma_1..gamma_m``; :meth:`PartitionConstants.build`
        defaults when omitted.
    seed:
        Stream for the sparse-subset heuristic on large parts.
    samples:
        Random restarts of that heuristic.
    step_limit:
        Cap on cleanup shifts, ``n^2`` by default.

    Returns
    -------
    PartitionSearch
        The final partition, the trace of refinement decisions and the full
        property report. A failing report is returned, not raised.
    """
    params.require(Variant.ABSORBER)
    consts = constants or PartitionConstants.build(params)
    stream = as_seed(seed)
    floor = (1 - Fraction(params.s, params.r)) * host.n
    min_degree_ok = host.min_degree() >= floor
    if not min_degree_ok:
        logger.warning("minimum degree %d is below (1 - s/r) n = %s", host.min_degree(), format_fraction(floor))

    p = HPartition.trivial(host, params, consts)
    trace: list[PartitionStep] = []
    while p.h < params.m:
        k = sparse_size(params, host.n)
        if k == 0 or k > len(p.last):
            trace.append(PartitionStep("stop", p.h, f"A_{p.h + 1} has {len(p.last)} vertices, need {k}"))
            break
        edges, x = _sparse_candidate(p, stream, samples)
        threshold = sparse_threshold(p)
        if edges > threshold:
            trace.append(PartitionStep("stop", p.h, f"sparsest {k}-set found spans {edges} > {format_fraction(threshold)} edges"))
            break
        outcome = refine_split(p, x)
        if not outcome.accepted or outcome.partition is None:
            why = outcome.rejection or f"invariants {outcome.star.failing if outcome.star else []} fail"
            trace.append(PartitionStep("rejected", p.h, why))
            break
        p = outcome.partition
        trace.append(PartitionStep("refine", p.h, f"|R| = {len(outcome.r_set)}, |S| = {len(outcome.s_set)}"))
        logger.info("partition refined to h = %d", p.h)

    cleanup = cleanup_v_vi(p, step_limit)
    p = cleanup.partition
    trace.append(PartitionStep("cleanup", p.h, f"{len(cleanup.shifts)} shifts"))
    report = check_properties(p, stream, samples)
    if not min_degree_ok:
        report.add(PropertyCheck("min-degree", False, detail=f"minimum degree {host.min_degree()} < {format_fraction(floor)}"))
    if not report.ok:
        logger.warning("partition with h = %d fails properties %s", p.h, ", ".join(report.failing))
    return PartitionSearch(p, trace, report, cleanup, min_degree_ok)
