"""
Local search over P-factors and the cover / independent-set dichotomy.

The engine starts from the all-singleton factor and applies the first
applicable move in the configured order until none applies. Every applied
move strictly increases the lexicographic index, so the run terminates; the
step limit only guards against bugs in custom move orders.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from ..errors import ParameterError, ValidationError
from ..gadgets.packing import PackingCert, assemble_collection_cert
from ..graph import Graph
from ..params import RParams, Variant
from ..utils import Rational, as_fraction, format_fraction, iter_bits, mask_of
from .moves import DEFAULT_MOVE_ORDER, MOVES, Move, z_vertices
from .pieces import IndexVector, Piece, PFactor, compute_index, init_trivial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TraceEntry:
    step: int
    move: str
    removed: tuple[Piece, ...]
    added: tuple[Piece, ...]
    index_before: IndexVector
    index_after: IndexVector


@dataclass
class LocalSearchResult:
    factor: PFactor
    trace: list[TraceEntry] = field(default_factory=list)
    step_limit_hit: bool = False

    @property
    def index(self) -> IndexVector:
        return compute_index(self.factor)


def default_step_limit(params: RParams, n: int) -> int:
    return (2 * params.m + 1) * n * n


def _resolve_order(move_order: Sequence[str] | None) -> list[str]:
    order = list(DEFAULT_MOVE_ORDER if move_order is None else move_order)
    for name in order:
        if name not in MOVES:
            raise ParameterError(f"unknown move '{name}', choose from {', '.join(MOVES)}")
    return order


def run_local_search(
    host: Graph,
    params: RParams,
    move_order: Sequence[str] | None = None,
    step_limit: int | None = None,
    validate_steps: bool = False,
) -> LocalSearchResult:
    """
    Climb the index from the all-singleton factor.

    Parameters
    ----------
    host:
        Graph to tile.
    params:
        Gadget-variant parameters ``r = m*s + t``.
    move_order:
        Move names tried at every step, first applicable wins. Defaults to
        :data:`DEFAULT_MOVE_ORDER`.
    step_limit:
        Maximum number of applied moves, ``(2m+1) n^2`` by default. Hitting it
        is flagged on the result rather than raised.
    validate_steps:
        Re-check the factor and the index increase after every move.
    """
    params.require(Variant.GADGET)
    order = _resolve_order(move_order)
    limit = default_step_limit(params, host.n) if step_limit is None else step_limit
    if limit < 0:
        raise ParameterError(f"step limit must be nonnegative, got {limit}")

    f = init_trivial(host, params)
    result = LocalSearchResult(f)
    index = compute_index(f)
    while True:
        move = _first_move(f, order)
        if move is None:
            break
        if len(result.trace) >= limit:
            logger.warning("local search stopped at the step limit of %d moves", limit)
            result.step_limit_hit = True
            break
        f.replace(move.removed, move.added)
        after = compute_index(f)
        step = len(result.trace)
        if validate_steps:
            problems = f.check()
            if after <= index:
                problems.append(f"index went from {index} to {after}")
            if problems:
                raise ValidationError(f"P-factor after move {step} ({move.name})", problems)
        result.trace.append(TraceEntry(step, move.name, move.removed, move.added, index, after))
        logger.debug("move %d: %s, index %s -> %s", step, move.name, index, after)
        index = after

    logger.info("local search finished after %d moves with index %s", len(result.trace), index)
    return result


def _first_move(f: PFactor, order: Sequence[str]) -> Move | None:
    for name in order:
        move = MOVES[name](f)
        if move is not None:
            return move
    return None


# ------------------------
# Dichotomy
# ------------------------
class Branch(Enum):
    COVER = "cover"
    INDEPENDENT_SET = "independent-set"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class Dichotomy:
    branch: Branch
    factor: PFactor
    #: vertices in pieces K_1..K_m
    leftover: tuple[int, ...]
    independent_set: tuple[int, ...] = ()
    stage_report: dict[str, object] = field(default_factory=dict)
    trace: tuple[TraceEntry, ...] = ()


def default_c_cap(params: RParams, n: int) -> int:
    return min(max(params.r**4, 50), max(1, n // params.r))


def _fill(host: Graph, pool: int, chosen: int) -> int:
    cand = pool & ~chosen
    for v in iter_bits(chosen):
        cand &= ~host.mask(v)
    while cand:
        v = min(iter_bits(cand), key=lambda u: (host.degree_into(u, cand), u))
        chosen |= 1 << v
        cand &= ~(1 << v) & ~host.mask(v)
    return chosen


def greedy_independent_set(host: Graph, pool: Sequence[int]) -> tuple[int, ...]:
    """
    Minimum-degree greedy maximal independent set inside ``pool``, improved by
    swapping one member for two free vertices while possible.
    """
    pmask = mask_of(pool)
    chosen = _fill(host, pmask, 0)
    improved = True
    while improved:
        improved = False
        for v in iter_bits(chosen):
            rest = chosen & ~(1 << v)
            free = pmask & ~chosen
            for u in iter_bits(rest):
                free &= ~host.mask(u)
            for a in iter_bits(free):
                others = free & ~host.mask(a) & ~(1 << a)
                if others:
                    b = (others & -others).bit_length() - 1
                    chosen = _fill(host, pmask, rest | 1 << a | 1 << b)
                    improved = True
                    break
            if improved:
                break
    return tuple(iter_bits(chosen))


def run_dichotomy(
    host: Graph,
    params: RParams,
    gamma: Rational = Fraction(1, 20),
    c_cap: int | None = None,
    move_order: Sequence[str] | None = None,
    step_limit: int | None = None,
    validate_steps: bool = False,
) -> Dichotomy:
    """
    Either a factor leaving at most ``c_cap`` vertices in pieces ``K_1..K_m``,
    or an independent set of size at least ``(s/r - gamma) n``. When neither
    can be certified the result is ``UNDECIDED`` and carries both witnesses.
    """
    params.require(Variant.GADGET)
    g = as_fraction(gamma)
    if not 0 < g < 1:
        raise ParameterError(f"gamma must lie in (0, 1), got {g}")
    cap = default_c_cap(params, host.n) if c_cap is None else c_cap
    if cap < 0:
        raise ParameterError(f"C_cap must be nonnegative, got {cap}")

    search = run_local_search(host, params, move_order, step_limit, validate_steps)
    f = search.factor
    m = params.m
    leftover = f.vertices_in_cliques(range(1, m + 1))
    report: dict[str, object] = {
        "c_cap": cap,
        "leftover": len(leftover),
        "index": list(search.index.values),
        "moves": len(search.trace),
        "step_limit_hit": search.step_limit_hit,
    }
    trace = tuple(search.trace)
    if len(leftover) <= cap:
        return Dichotomy(Branch.COVER, f, leftover, stage_report=report, trace=trace)

    sizes = {j: len(f.vertices_in_cliques((j,))) for j in range(1, m + 1)}
    j = min(i for i in range(1, m + 1) if m * sizes[i] >= cap)
    z = z_vertices(f, j)
    a_j = f.vertices_in_cliques((j,))
    pools = {"Z": z, "A_j": a_j, "V": tuple(host.vertices)}
    best_name, best = "Z", ()
    for name, pool in pools.items():
        found = greedy_independent_set(host, pool)
        if len(found) > len(best):
            best_name, best = name, found
    if best and not host.is_independent(best):
        raise ValidationError("independent-set witness", [f"{list(best)} is not independent"])

    bound = (Fraction(params.s, params.r) - g) * host.n
    report.update(
        {
            "j": j,
            "A_j": sizes[j],
            "Z": len(z),
            "source": best_name,
            "independent": len(best),
            "bound": format_fraction(bound),
            "meets_bound": len(best) >= bound,
        }
    )
    branch = Branch.INDEPENDENT_SET if best and len(best) >= bound else Branch.UNDECIDED
    if branch is Branch.UNDECIDED:
        logger.warning(
            "dichotomy undecided: %d leftover vertices, independent set of %d", len(leftover), len(best)
        )
    return Dichotomy(branch, f, leftover, best, report, trace)


# ------------------------
# Exports
# ------------------------
def trace_to_json(trace: Sequence[TraceEntry]) -> list[dict[str, object]]:
    return [
        {
            "step": e.step,
            "move": e.move,
            "pieces_before": [p.describe() for p in e.removed],
            "pieces_after": [p.describe() for p in e.added if p.vertices],
            "index_before": list(e.index_before.values),
            "index_after": list(e.index_after.values),
        }
        for e in trace
    ]


def pfactor_to_cert(f: PFactor) -> PackingCert:
    """
    Fractional ``T``-packing of the ``K_{m+1}`` and gadget pieces of ``f``;
    the smaller cliques are left at weight 0.
    """
    cliques = [p.vertices for p in f.cliques(f.params.m + 1)]
    layouts = [p.layout for p in f.gadgets() if p.layout is not None]
    return assemble_collection_cert(f.host, f.params, cliques, layouts)
