"""
Small clique-search primitives.

These are the constructive cores of the probabilistic lemmas: each either
returns an explicit object that the caller can re-check, or proves by
exhaustion that none exists at this scale.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from ..errors import ParameterError, SizeError
from ..graph import Graph, enumerate_cliques
from ..utils import canonical, iter_bits, mask_of

logger = logging.getLogger(__name__)

#: Largest host for which find_Fq searches exhaustively.
FQ_LIMIT = 40


def _cliques_in_mask(g: Graph, size: int, cand: int, limit: int | None = None) -> list[tuple[int, ...]]:
    if size == 0:
        return [()]
    return enumerate_cliques(g, size, within=iter_bits(cand), limit=limit)


def find_clique_in_subset(g: Graph, subset: Iterable[int], s: int) -> tuple[int, ...] | None:
    """Some ``K_s`` inside ``subset`` (lexicographically first), or ``None``."""
    found = _cliques_in_mask(g, s, mask_of(canonical(subset, g.n)), limit=1)
    return found[0] if found else None


def find_clique_in_family(g: Graph, family: Iterable[Iterable[int]], s: int) -> tuple[int, ...] | None:
    """First member of ``family`` that is an ``s``-set inducing ``K_s``."""
    for member in family:
        verts = canonical(member, g.n)
        if len(verts) == s and g.is_clique(verts):
            return verts
    return None


def extend_clique_into_part(
    g: Graph, clique: Sequence[int], part: Iterable[int], s: int, avoid: Iterable[int] = ()
) -> tuple[int, ...] | None:
    """
    A ``K_s`` in ``part`` minus ``avoid`` that is complete to ``clique``, so the
    union is a ``K_{|clique|+s}``.
    """
    base = canonical(clique, g.n)
    part_mask = mask_of(canonical(part, g.n))
    if not g.is_clique(base):
        raise ParameterError(f"{list(base)} is not a clique")
    if mask_of(base) & part_mask:
        raise ParameterError("clique to extend must be disjoint from the target part")
    cand = g.common_mask(base) & part_mask & ~mask_of(canonical(avoid, g.n))
    found = _cliques_in_mask(g, s, cand, limit=1)
    return found[0] if found else None


@dataclass(frozen=True)
class GreedyOutcome:
    cliques: tuple[tuple[int, ...], ...]
    #: the Z-vertex whose clique could not be built
    failed_vertex: int | None = None
    #: Z-disjoint cliques still missing after the Z-vertices were served
    shortfall: int = 0

    @property
    def ok(self) -> bool:
        return self.failed_vertex is None and self.shortfall == 0


def greedy_conforming_collection(
    g: Graph, z: Iterable[int], s: int, h: int, forbidden: Iterable[int] = ()
) -> GreedyOutcome:
    """
    Greedily build ``h`` vertex-disjoint ``K_{s+1}`` copies with at most one
    ``Z``-vertex each.

    ``Z`` is processed in order, each vertex getting a ``K_s`` from its
    neighbourhood outside ``Z`` and outside everything already used. When
    ``|Z| < h`` the collection is topped up with ``Z``-disjoint copies.
    """
    zs = canonical(z, g.n)
    zmask = mask_of(zs)
    used = mask_of(canonical(forbidden, g.n))
    cliques: list[tuple[int, ...]] = []

    for v in zs[:h]:
        if used >> v & 1:
            return GreedyOutcome(tuple(cliques), failed_vertex=v)
        cand = g.mask(v) & ~zmask & ~used
        found = _cliques_in_mask(g, s, cand, limit=1)
        if not found:
            logger.debug("no K_%d in the free neighbourhood of %d", s, v)
            return GreedyOutcome(tuple(cliques), failed_vertex=v)
        clique = tuple(sorted((v, *found[0])))
        cliques.append(clique)
        used |= mask_of(clique)

    while len(cliques) < h:
        found = _cliques_in_mask(g, s + 1, g.all_mask & ~zmask & ~used, limit=1)
        if not found:
            return GreedyOutcome(tuple(cliques), shortfall=h - len(cliques))
        cliques.append(found[0])
        used |= mask_of(found[0])
    return GreedyOutcome(tuple(cliques))


def _disjoint_cliques(g: Graph, avail: int, s: int, count: int) -> list[tuple[int, ...]] | None:
    """``count`` vertex-disjoint ``K_s`` inside ``avail``, exhaustively."""
    if count == 0:
        return []
    if avail.bit_count() < s * count:
        return None
    low = avail & -avail
    v = low.bit_length() - 1
    rest = avail ^ low
    for tail in _cliques_in_mask(g, s - 1, g.mask(v) & rest):
        clique = (v, *tail)
        more = _disjoint_cliques(g, rest & ~mask_of(tail), s, count - 1)
        if more is not None:
            return [clique, *more]
    return _disjoint_cliques(g, rest, s, count)


def find_Fq(g: Graph, s: int, q: int, within: Iterable[int] | None = None) -> tuple[int, ...] | None:
    """
    Embed ``q`` copies of ``K_s`` where exactly two share exactly one vertex
    and the rest are pairwise disjoint, on ``q*s - 1`` vertices.

    The embedding is listed in the pattern's own order: the first copy with the
    shared vertex last, then the second copy without it, then the remaining
    copies one after another.
    """
    if q < 2 or s < 2:
        raise ParameterError(f"need q >= 2 and s >= 2, got q={q}, s={s}")
    if g.n > FQ_LIMIT:
        raise SizeError("host", g.n, FQ_LIMIT)
    avail = g.all_mask if within is None else mask_of(canonical(within, g.n))

    for centre in iter_bits(avail):
        nbrs = g.mask(centre) & avail
        for left in _cliques_in_mask(g, s - 1, nbrs):
            left_mask = mask_of(left)
            for right in _cliques_in_mask(g, s - 1, nbrs & ~left_mask):
                if right < left:
                    continue
                used = left_mask | mask_of(right) | (1 << centre)
                rest = _disjoint_cliques(g, avail & ~used, s, q - 2)
                if rest is not None:
                    return (*left, centre, *right, *(v for clique in rest for v in clique))
    return None
