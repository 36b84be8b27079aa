"""
Size adjustment of a partition against its target proportions.

:func:`size_adjustment_ledger` does the bookkeeping: how far each part is from
its target and which deficit part every surplus clique will be trimmed in.
:func:`realize_size_adjustment` finds the cliques in an actual graph.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from ..errors import ParameterError
from ..graph import Graph
from ..params import RParams, Variant
from ..solver.cliques import extend_clique_into_part, greedy_conforming_collection
from ..utils import canonical, iter_bits, mask_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SizeLedger:
    #: deviation of every part from its target size
    g: tuple[int, ...]
    #: half the total deviation, i.e. the number of cliques to place
    total: int
    #: 0-based indices of the parts above target
    surplus: tuple[int, ...]
    deficit: tuple[int, ...]
    #: ``(own part, trimmed part)`` for every clique, own part in surplus order
    assignment: tuple[tuple[int, int], ...]

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple((x > 0) - (x < 0) for x in self.g)


def size_adjustment_ledger(part_sizes: Sequence[int], params: RParams, h: int) -> SizeLedger:
    """
    Deviation of ``A_1..A_h`` from ``sn/r`` and of ``A_{h+1}`` from
    ``((m-h)s+t)n/r``, with one deficit part assigned per surplus clique so
    that every deficit part ``j`` is used exactly ``|g_j|`` times.
    """
    if not 1 <= h <= params.m:
        raise ParameterError(f"h must lie in [1, {params.m}], got {h}")
    if len(part_sizes) != h + 1:
        raise ParameterError(f"expected {h + 1} part sizes, got {len(part_sizes)}")
    n = sum(part_sizes)
    m, s, t, r = params.m, params.s, params.t, params.r
    if n % r:
        raise ParameterError(f"{n} vertices are not divisible by r = {r}")

    targets = [s * n // r] * h + [((m - h) * s + t) * n // r]
    g = tuple(a - b for a, b in zip(part_sizes, targets))
    surplus = tuple(i for i, x in enumerate(g) if x > 0)
    deficit = tuple(i for i, x in enumerate(g) if x <= 0)
    owners = [i for i in surplus for _ in range(g[i])]
    trims = [j for j in deficit for _ in range(-g[j])]
    assert len(owners) == len(trims)
    return SizeLedger(g, len(owners), surplus, deficit, tuple(zip(owners, trims)))


@dataclass(frozen=True)
class AdjustmentResult:
    cliques: tuple[tuple[int, ...], ...]
    #: where realisation stopped, ``None`` on success
    failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None


def realize_size_adjustment(
    g: Graph,
    parts: Sequence[Iterable[int]],
    params: RParams,
    z: Iterable[int] = (),
) -> AdjustmentResult:
    """
    ``K_r`` copies whose removal leaves every part at its target size, for a
    partition ``A_1..A_{m+1}``.

    Every surplus part ``A_i`` contributes ``g_i`` disjoint ``Z``-conforming
    ``K_{s+1}`` (``K_{t+1}`` for ``A_{m+1}`` when ``t < s``). Each is extended
    by a ``K_s`` in every other ``A_j`` and a ``K_t`` in ``A_{m+1}``, avoiding
    ``Z``, and finally loses one vertex in its assigned deficit part.
    """
    params.require(Variant.ABSORBER)
    m, s, t = params.m, params.s, params.t
    if len(parts) != m + 1:
        raise ParameterError(f"expected {m + 1} parts, got {len(parts)}")
    sets = [canonical(p, g.n) for p in parts]
    masks = [mask_of(p) for p in sets]
    if sum(len(p) for p in sets) != mask_of(v for p in sets for v in p).bit_count():
        raise ParameterError("parts must be disjoint")
    zs = canonical(z, g.n)
    zmask = mask_of(zs)
    ledger = size_adjustment_ledger([len(p) for p in sets], params, m)

    used = 0
    seeds: list[tuple[int, tuple[int, ...]]] = []
    for i in ledger.surplus:
        size = t + 1 if i == m and t < s else s + 1
        outside = g.all_mask & ~masks[i]
        found = greedy_conforming_collection(
            g, [v for v in zs if masks[i] >> v & 1], size - 1, ledger.g[i], forbidden=list(iter_bits(outside | used))
        )
        if not found.ok:
            return AdjustmentResult(tuple(c for _, c in seeds), f"A_{i + 1}: only {len(found.cliques)} cliques")
        for c in found.cliques:
            seeds.append((i, c))
            used |= mask_of(c)

    out = []
    for (i, clique), (_, trim) in zip(seeds, ledger.assignment):
        grown = list(clique)
        for j in range(m + 1):
            if j == i:
                continue
            need = t if j == m else s
            ext = extend_clique_into_part(g, grown, sets[j], need, avoid=list(iter_bits(zmask | used)))
            if ext is None:
                return AdjustmentResult(tuple(out), f"clique {list(clique)} has no K_{need} to extend into A_{j + 1}")
            grown.extend(ext)
            used |= mask_of(ext)
        drop = max(v for v in grown if masks[trim] >> v & 1)
        grown.remove(drop)
        used &= ~(1 << drop)
        out.append(tuple(sorted(grown)))
    logger.debug("size adjustment placed %d cliques", len(out))
    return AdjustmentResult(tuple(out))

