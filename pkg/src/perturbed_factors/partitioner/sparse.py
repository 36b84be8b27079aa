"""
Searches for a ``k``-subset of a vertex pool spanning as few edges as possible.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

from ..errors import ParameterError, SizeError
from ..graph import Graph
from ..rng import Seed
from ..utils import iter_bits, mask_of

logger = logging.getLogger(__name__)

#: largest graph whose sparsest subsets are searched exhaustively
EXACT_LIMIT = 18


def _check_k(pool: Sequence[int], k: int) -> None:
    if not 0 <= k <= len(pool):
        raise ParameterError(f"cannot pick {k} vertices from a pool of {len(pool)}")


def sparsest_subset(g: Graph, pool: Sequence[int], k: int, limit: int = EXACT_LIMIT) -> tuple[int, tuple[int, ...]]:
    """
    Exact minimum of ``e(X)`` over ``k``-subsets ``X`` of ``pool`` by branch and
    bound, with a witness.
    """
    _check_k(pool, k)
    if len(pool) > limit:
        raise SizeError("sparse-subset pool", len(pool), limit)
    order = sorted(pool, key=lambda v: (g.degree_into(v, mask_of(pool)), v))
    best_edges = g.edge_count_within(order[:k])
    best = mask_of(order[:k])

    def search(i: int, chosen: int, size: int, edges: int) -> None:
        nonlocal best_edges, best
        if edges >= best_edges:
            return
        if size == k:
            best_edges, best = edges, chosen
            return
        if len(order) - i < k - size:
            return
        v = order[i]
        search(i + 1, chosen | 1 << v, size + 1, edges + g.degree_into(v, chosen))
        search(i + 1, chosen, size, edges)

    search(0, 0, 0, 0)
    return best_edges, tuple(iter_bits(best))


def _peel(g: Graph, pool: int, k: int) -> int:
    """Drop the vertex of largest inside degree until ``k`` remain."""
    current = pool
    while current.bit_count() > k:
        v = max(iter_bits(current), key=lambda u: (g.degree_into(u, current), u))
        current &= ~(1 << v)
    return current


def improve_by_swaps(g: Graph, pool: int, chosen: int) -> int:
    """
    Swap one chosen vertex for one free vertex while that lowers ``e(X)``.
    Each swap strictly decreases the edge count, so the loop terminates.
    """
    improved = True
    while improved:
        improved = False
        for v in iter_bits(chosen):
            rest = chosen & ~(1 << v)
            out_deg = g.degree_into(v, rest)
            for u in iter_bits(pool & ~chosen):
                if g.degree_into(u, rest) < out_deg:
                    chosen = rest | 1 << u
                    improved = True
                    break
            if improved:
                break
    return chosen


def sparse_subset_heuristic(
    g: Graph, pool: Sequence[int], k: int, seed: Seed, samples: int = 32
) -> tuple[int, tuple[int, ...]]:
    """
    Sparse ``k``-subset of ``pool`` from minimum-degree peeling followed by
    swap descent, and from ``samples`` random starts descended the same way.
    The result is an upper bound on the true minimum.
    """
    _check_k(pool, k)
    pmask = mask_of(pool)
    best = improve_by_swaps(g, pmask, _peel(g, pmask, k))
    best_edges = g.edge_count_within(iter_bits(best))
    rng = seed.generator()
    verts = sorted(pool)
    for _ in range(samples):
        if best_edges == 0:
            break
        start = mask_of(rng.choice(verts, size=k, replace=False).tolist()) if k else 0
        found = improve_by_swaps(g, pmask, start)
        edges = g.edge_count_within(iter_bits(found))
        if edges < best_edges:
            best, best_edges = found, edges
    logger.debug("sparse-subset heuristic: %d edges in best %d-subset", best_edges, k)
    return best_edges, tuple(iter_bits(best))
