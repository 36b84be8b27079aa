"""
Spreading leftover vertices over groups of parts under a per-group load cap.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from ..errors import ParameterError
from ..graph import Graph
from ..utils import Rational, as_fraction, canonical, mask_of

logger = logging.getLogger(__name__)


@dataclass
class LeftoverAssignment:
    #: vertex -> (group index, part index inside the group)
    assignment: dict[int, tuple[int, int]] = field(default_factory=dict)
    loads: list[int] = field(default_factory=list)
    #: "round-robin" or "max-flow"
    method: str = "round-robin"
    #: vertices with no good group
    unplaceable: tuple[int, ...] = ()
    failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None


def good_groups(g: Graph, groups: Sequence[Sequence[int]], v: int, d: Fraction) -> dict[int, int]:
    """
    Groups that are good for ``v``: at most one part of the group in which
    ``v`` has fewer than ``d`` times the part's size as neighbours. Maps every
    good group to the part ``v`` should join, the weak part when there is one
    and otherwise the part where ``v`` has the smallest share of neighbours.
    """
    out = {}
    for i, masks in enumerate(groups):
        weak = [j for j, a in enumerate(masks) if g.degree_into(v, a) < d * a.bit_count()]
        if len(weak) > 1:
            continue
        if weak:
            out[i] = weak[0]
        else:
            out[i] = min(range(len(masks)), key=lambda j: (Fraction(g.degree_into(v, masks[j]), max(masks[j].bit_count(), 1)), j))
    return out


def distribute_leftover(
    g: Graph,
    groups: Sequence[Sequence[Iterable[int]]],
    leftover: Iterable[int],
    d: Rational,
    cap: int,
) -> LeftoverAssignment:
    """
    Assign every leftover vertex to a good group with at most ``cap`` vertices
    per group.

    Round-robin over the good groups, least loaded first, settles most
    instances. When it gets stuck the assignment is recomputed as a maximum
    flow from the vertices through their good groups to a sink with capacity
    ``cap`` per group.
    """
    dd = as_fraction(d)
    if not 0 <= dd <= 1:
        raise ParameterError(f"goodness threshold must lie in [0, 1], got {dd}")
    if cap < 0:
        raise ParameterError(f"load cap must be nonnegative, got {cap}")
    masks = [[mask_of(canonical(part, g.n)) for part in group] for group in groups]
    xs = canonical(leftover, g.n)
    good = {v: good_groups(g, masks, v, dd) for v in xs}
    loads = [0] * len(masks)

    unplaceable = tuple(v for v in xs if not good[v])
    if unplaceable:
        return LeftoverAssignment(loads=loads, unplaceable=unplaceable, failure=f"vertices {list(unplaceable)} have no good group")

    result = LeftoverAssignment(loads=loads)
    for v in xs:
        options = [i for i in good[v] if loads[i] < cap]
        if not options:
            break
        i = min(options, key=lambda k: (loads[k], k))
        loads[i] += 1
        result.assignment[v] = (i, good[v][i])
    else:
        return result

    logger.debug("round-robin stuck after %d of %d vertices, trying max-flow", len(result.assignment), len(xs))
    flow = nx.DiGraph()
    for v in xs:
        flow.add_edge("source", ("x", v), capacity=1)
        for i in good[v]:
            flow.add_edge(("x", v), ("group", i), capacity=1)
    for i in range(len(masks)):
        flow.add_edge(("group", i), "sink", capacity=cap)
    value, paths = nx.maximum_flow(flow, "source", "sink")
    if value < len(xs):
        return LeftoverAssignment(
            loads=[0] * len(masks), method="max-flow", failure=f"only {value} of {len(xs)} vertices fit under cap {cap}"
        )
    out = LeftoverAssignment(loads=[0] * len(masks), method="max-flow")
    for v in xs:
        i = next(i for i in good[v] if paths[("x", v)].get(("group", i), 0) > 0)
        out.assignment[v] = (i, good[v][i])
        out.loads[i] += 1
    return out
