from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParameterError, SizeError
from ..graph import Graph, gen_complete_multipartite
from ..utils import iter_bits

logger = logging.getLogger(__name__)

#: Largest graph for which the exact colouring search is attempted. Complete
#: multipartite graphs are read off their classes at any size.
CHROMATIC_LIMIT = 20


@dataclass(frozen=True)
class ChromaticProfile:
    chi: int
    #: smallest colour class over all proper chi-colourings
    t_min: int
    s_value: Fraction
    chi_cr: Fraction


def _search_order(g: Graph) -> list[int]:
    """Maximum-adjacency order: each next vertex has the most already-ordered neighbours."""
    remaining = set(g.vertices)
    order: list[int] = []
    placed = 0
    while remaining:
        v = max(remaining, key=lambda u: (g.degree_into(u, placed), g.degree(u), -u))
        order.append(v)
        remaining.discard(v)
        placed |= 1 << v
    return order


class _Colouring:
    def __init__(self, g: Graph, k: int) -> None:
        self.g = g
        self.k = k
        self.order = _search_order(g)
        self.classes = [0] * k
        self.sizes = [0] * k
        self.best_t: int | None = None

    def exists(self) -> bool:
        return self._extend(0, 0, first_only=True)

    def min_class(self) -> int:
        self._extend(0, 0, first_only=False)
        assert self.best_t is not None
        return self.best_t

    def _extend(self, idx: int, used: int, first_only: bool) -> bool:
        if not first_only and self.best_t is not None:
            # class sizes only grow, so once all are >= best nothing below improves it
            if used == self.k and min(self.sizes) >= self.best_t:
                return False
        if idx == len(self.order):
            if used < self.k:
                return False
            smallest = min(self.sizes)
            if self.best_t is None or smallest < self.best_t:
                self.best_t = smallest
            return first_only
        v = self.order[idx]
        nbrs = self.g.mask(v)
        # colours beyond `used` are interchangeable; only try the first fresh one
        for c in range(min(used + 1, self.k)):
            if self.classes[c] & nbrs:
                continue
            self.classes[c] |= 1 << v
            self.sizes[c] += 1
            found = self._extend(idx + 1, max(used, c + 1), first_only)
            self.classes[c] &= ~(1 << v)
            self.sizes[c] -= 1
            if found:
                return True
        return False


def chromatic_number(g: Graph, limit: int = CHROMATIC_LIMIT) -> int:
    if g.n > limit:
        raise SizeError("graph", g.n, limit)
    if g.n == 0:
        return 0
    k = 1
    while not _Colouring(g, k).exists():
        k += 1
    return k


def multipartite_classes(g: Graph) -> list[int] | None:
    """Class masks when ``g`` is complete multipartite, else ``None``."""
    full = (1 << g.n) - 1
    classes: list[int] = []
    seen = 0
    for v in g.vertices:
        if seen >> v & 1:
            continue
        cls = full & ~g.mask(v)
        if any(full & ~g.mask(u) != cls for u in iter_bits(cls)):
            return None
        classes.append(cls)
        seen |= cls
    return classes


def critical_chromatic(h: Graph, limit: int = CHROMATIC_LIMIT) -> ChromaticProfile:
    """
    ``chi_cr(H) = |V| / s`` where ``s = (|V| - t_min) / (chi - 1)`` and ``t_min``
    is the smallest colour class of any proper ``chi``-colouring.

    Edgeless graphs have ``chi = 1`` and are reported with ``chi_cr = 1``.
    A complete multipartite graph has its classes as the only ``chi``-colouring,
    so ``limit`` does not apply to it.
    """
    if h.n == 0:
        raise ParameterError("critical chromatic number of the empty graph is undefined")
    classes = multipartite_classes(h)
    if classes is not None:
        chi = len(classes)
        t_min = min(c.bit_count() for c in classes)
    else:
        chi = chromatic_number(h, limit)
        t_min = h.n if chi == 1 else _Colouring(h, chi).min_class()
    if chi == 1:
        return ChromaticProfile(1, h.n, Fraction(h.n), Fraction(1))
    s_value = Fraction(h.n - t_min, chi - 1)
    return ChromaticProfile(chi, t_min, s_value, Fraction(h.n) / s_value)


def bottle_class_sizes(m: int, r: int, t: int) -> list[int]:
    if m < 1 or r < 1:
        raise ParameterError(f"bottle graph needs m, r >= 1, got m={m}, r={r}")
    s, rem = divmod(r - t, m)
    if rem or not 0 <= t < s:
        raise ParameterError(f"r = {r} is not m*s + t with 0 <= t < s for m={m}, t={t}")
    sizes = [m * s] * m
    if t > 0:
        sizes.append(m * t)
    return sizes


def gen_bottle(m: int, r: int, t: int) -> Graph:
    """
    Complete ``(m+1)``-partite graph with ``m`` classes of size ``m*s`` and one
    of size ``m*t``; for ``t = 0`` the empty class is dropped.
    """
    sizes = bottle_class_sizes(m, r, t)
    if t == 0:
        logger.info("bottle graph B(%d, %d, 0) has an empty class; using %d classes", m, r, m)
    return gen_complete_multipartite(sizes)
