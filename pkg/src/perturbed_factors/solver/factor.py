"""
Exact factor search.

:func:`solve_factor` is exact-cover backtracking over piece placements: it
always branches on an uncovered vertex with the fewest placements through it,
prunes placements holding two or more vertices of the conforming set while
generating them, and memoises refuted vertex sets. The node budget, not wall
clock, bounds the search so results are reproducible.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum

from ..errors import ParameterError
from ..graph import Graph
from ..utils import canonical, iter_bits, mask_of
from .cliques import greedy_conforming_collection

logger = logging.getLogger(__name__)

#: Largest explicit piece graph accepted.
PIECE_LIMIT = 12
#: How many lowest-degree vertices are compared when choosing a branch vertex.
_SELECTION_WINDOW = 4
#: Cap on memoised refuted states.
_MEMO_LIMIT = 1 << 20


class SolveMode(Enum):
    DECIDE = "decide"
    FIND = "find"
    MAXIMIZE = "maximize"


class SolveStatus(Enum):
    FOUND = "found"
    NONE = "none"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class FactorInstance:
    host: Graph
    #: clique size, or an explicit piece graph
    piece: int | Graph
    conforming: tuple[int, ...] = ()
    mode: SolveMode = SolveMode.FIND

    def __post_init__(self) -> None:
        if isinstance(self.piece, Graph):
            if not 1 <= self.piece.n <= PIECE_LIMIT:
                raise ParameterError(f"piece graphs must have 1..{PIECE_LIMIT} vertices, got {self.piece.n}")
        elif self.piece < 1:
            raise ParameterError(f"clique size must be at least 1, got {self.piece}")
        object.__setattr__(self, "conforming", canonical(self.conforming, self.host.n))

    @property
    def piece_size(self) -> int:
        return self.piece.n if isinstance(self.piece, Graph) else self.piece


@dataclass(frozen=True)
class FactorResult:
    status: SolveStatus
    cliques: tuple[tuple[int, ...], ...] = ()
    covered: int = 0
    nodes: int = 0
    #: false when the budget ran out before the search space was exhausted
    optimal: bool = True

    @property
    def found(self) -> bool:
        return self.status is SolveStatus.FOUND


class _BudgetExhausted(Exception):
    pass


class _Placements:
    """Generates the piece placements through a vertex inside an available set."""

    def __init__(self, inst: FactorInstance) -> None:
        self.host = inst.host
        self.piece = inst.piece
        self.size = inst.piece_size
        self.zmask = mask_of(inst.conforming)
        if isinstance(self.piece, Graph):
            self.min_piece_degree = self.piece.min_degree()
        else:
            self.min_piece_degree = self.size - 1

    def through(self, v: int, avail: int, limit: int | None = None) -> list[int]:
        """Vertex bitsets of placements containing ``v``, in deterministic order."""
        if isinstance(self.piece, Graph):
            return self._embeddings_through(v, avail, limit)
        out: list[int] = []
        z_used = bool(self.zmask >> v & 1)
        self._cliques(1 << v, self.host.mask(v) & avail, self.size - 1, z_used, out, limit)
        return out

    def _cliques(self, chosen: int, cand: int, need: int, z_used: bool, out: list[int], limit: int | None) -> bool:
        if need == 0:
            out.append(chosen)
            return limit is not None and len(out) >= limit
        if z_used:
            cand &= ~self.zmask
        while cand.bit_count() >= need:
            low = cand & -cand
            u = low.bit_length() - 1
            cand ^= low
            if self._cliques(
                chosen | low, cand & self.host.mask(u), need - 1, z_used or bool(self.zmask & low), out, limit
            ):
                return True
        return False

    def _embeddings_through(self, v: int, avail: int, limit: int | None) -> list[int]:
        piece = self.piece
        assert isinstance(piece, Graph)
        host = self.host
        seen: set[int] = set()
        out: list[int] = []

        for anchor in piece.vertices:
            order = [anchor]
            placed = 1 << anchor
            while len(order) < piece.n:
                nxt = max(
                    (u for u in piece.vertices if not placed >> u & 1),
                    key=lambda u: (piece.degree_into(u, placed), -u),
                )
                order.append(nxt)
                placed |= 1 << nxt
            image = [0] * piece.n

            def extend(idx: int, used: int, z_count: int) -> bool:
                if idx == len(order):
                    if used not in seen:
                        seen.add(used)
                        out.append(used)
                    return limit is not None and len(out) >= limit
                u = order[idx]
                cand = avail & ~used
                for w in iter_bits(piece.mask(u)):
                    if w in order[:idx]:
                        cand &= host.mask(image[w])
                for c in iter_bits(cand):
                    zc = z_count + (self.zmask >> c & 1)
                    if zc > 1:
                        continue
                    image[u] = c
                    if extend(idx + 1, used | (1 << c), zc):
                        return True
                return False

            image[anchor] = v
            if extend(1, 1 << v, self.zmask >> v & 1):
                break
        return out


class _Search:
    def __init__(self, inst: FactorInstance, budget: int) -> None:
        self.inst = inst
        self.host = inst.host
        self.places = _Placements(inst)
        self.budget = budget
        self.nodes = 0
        self.refuted: set[int] = set()
        self.chosen: list[int] = []
        self.best: list[int] = []

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted

    # ------------------------
    # Exact cover
    # ------------------------
    def cover(self, avail: int) -> bool:
        self.tick()
        if avail == 0:
            return True
        if avail in self.refuted:
            return False
        if len(self.chosen) > len(self.best):
            self.best = list(self.chosen)

        ranked = []
        for u in iter_bits(avail):
            d = self.host.degree_into(u, avail)
            if d < self.places.min_piece_degree:
                self._refute(avail)
                return False
            ranked.append((d, u))
        ranked.sort()

        branch: list[int] | None = None
        for _, u in ranked[:_SELECTION_WINDOW]:
            cands = self.places.through(u, avail)
            if not cands:
                self._refute(avail)
                return False
            if branch is None or len(cands) < len(branch):
                branch = cands

        assert branch is not None
        for placement in branch:
            self.chosen.append(placement)
            if self.cover(avail & ~placement):
                return True
            self.chosen.pop()
        self._refute(avail)
        return False

    def _refute(self, avail: int) -> None:
        if len(self.refuted) < _MEMO_LIMIT:
            self.refuted.add(avail)

    # ------------------------
    # Maximum partial cover
    # ------------------------
    def maximize(self, avail: int, covered: int) -> None:
        self.tick()
        k = self.places.size
        coverable = 0
        for u in iter_bits(avail):
            if self.host.degree_into(u, avail) >= self.places.min_piece_degree:
                coverable |= 1 << u
        if covered + k * (coverable.bit_count() // k) <= k * len(self.best):
            return
        if covered > k * len(self.best):
            self.best = list(self.chosen)
        if not coverable:
            return
        low = coverable & -coverable
        v = low.bit_length() - 1
        for placement in self.places.through(v, coverable):
            self.chosen.append(placement)
            self.maximize(coverable & ~placement, covered + k)
            self.chosen.pop()
        self.maximize(coverable ^ low, covered)

    def greedy(self) -> list[int]:
        avail = self.host.all_mask
        picked = []
        for v in self.host.vertices:
            if not avail >> v & 1:
                continue
            found = self.places.through(v, avail, limit=1)
            if found:
                picked.append(found[0])
                avail &= ~found[0]
        return picked


def _as_sets(masks: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(iter_bits(m)) for m in masks))


def solve_factor(inst: FactorInstance, budget: int = 200_000) -> FactorResult:
    """
    Exact answer within ``budget`` search nodes: ``FOUND`` with a certificate,
    ``NONE`` after exhausting the search, or ``TIMEOUT`` with the best partial
    cover seen.
    """
    if inst.mode is SolveMode.MAXIMIZE:
        return _maximize(inst, budget)
    k = inst.piece_size
    if inst.host.n % k:
        raise ParameterError(f"{inst.host.n} vertices cannot be split into pieces of size {k}")

    search = _Search(inst, budget)
    try:
        ok = search.cover(inst.host.all_mask)
    except _BudgetExhausted:
        logger.debug("solver budget of %d nodes exhausted", budget)
        best = _as_sets(search.best)
        return FactorResult(SolveStatus.TIMEOUT, best, k * len(best), search.nodes, optimal=False)
    if ok:
        return FactorResult(SolveStatus.FOUND, _as_sets(search.chosen), inst.host.n, search.nodes)
    return FactorResult(SolveStatus.NONE, nodes=search.nodes)


def _maximize(inst: FactorInstance, budget: int) -> FactorResult:
    k = inst.piece_size
    search = _Search(inst, budget)
    search.best = search.greedy()
    optimal = True
    try:
        search.maximize(inst.host.all_mask, 0)
    except _BudgetExhausted:
        logger.debug("maximum partial factor not proven optimal within %d nodes", budget)
        optimal = False
    best = _as_sets(search.best)
    covered = k * len(best)
    if covered == inst.host.n:
        status = SolveStatus.FOUND
    else:
        status = SolveStatus.NONE if optimal else SolveStatus.TIMEOUT
    return FactorResult(status, best, covered, search.nodes, optimal=optimal)


def max_partial_factor(host: Graph, r: int, budget: int = 200_000) -> FactorResult:
    """Largest number of vertices coverable by disjoint ``K_r`` copies."""
    if r < 2:
        raise ParameterError(f"clique size must be at least 2, got {r}")
    return solve_factor(FactorInstance(host, r, mode=SolveMode.MAXIMIZE), budget)


def conforming_clique_factor(g: Graph, z: Iterable[int], t: int, budget: int = 200_000) -> FactorResult:
    """
    ``K_t``-factor with at most one ``Z``-vertex per clique, built the
    constructive way: one greedy ``K_t`` through every ``Z``-vertex, then an
    exact factor of what is left. Falls back to the in-solver conforming search
    when the greedy prefix blocks the completion.
    """
    zs = canonical(z, g.n)
    if g.n % t:
        raise ParameterError(f"{g.n} vertices cannot be split into pieces of size {t}")
    prefix = greedy_conforming_collection(g, zs, t - 1, len(zs))
    if prefix.ok:
        covered = mask_of(v for c in prefix.cliques for v in c)
        rest = [v for v in g.vertices if not covered >> v & 1]
        tail = solve_factor(FactorInstance(g.induced_subgraph(rest), t), budget)
        if tail.found:
            cliques = list(prefix.cliques) + [tuple(rest[i] for i in c) for c in tail.cliques]
            return FactorResult(SolveStatus.FOUND, tuple(sorted(cliques)), g.n, tail.nodes)
        logger.debug("greedy prefix through Z blocks completion; searching with Z in-solver")
    return solve_factor(FactorInstance(g, t, zs), budget)
