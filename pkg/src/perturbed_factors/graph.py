"""
Simple undirected graphs on ``[0, n)`` with packed-bitset adjacency.

Every vertex carries its neighbourhood as a Python ``int`` used as a bitset, so
common neighbourhoods are single ``&`` operations; this is the hot path of all
clique searches in the package.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from itertools import combinations

import numpy as np

from .errors import ParameterError, SizeError
from .rng import Seed, as_seed
from .utils import Rational, as_fraction, canonical, iter_bits, mask_of

logger = logging.getLogger(__name__)


class Graph:
    """Immutable simple graph. Vertex labels are ``0..n-1``."""

    __slots__ = ("_adj", "_n")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if n < 0:
            raise ParameterError(f"vertex count must be nonnegative, got {n}")
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) is out of range for a graph on {n} vertices")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._n = n
        self._adj = tuple(adj)

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> Graph:
        """Build from neighbourhood bitsets; the caller guarantees symmetry."""
        g = cls.__new__(cls)
        g._n = len(masks)
        g._adj = tuple(masks)
        return g

    # ------------------------
    # Structure
    # ------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def vertices(self) -> range:
        return range(self._n)

    @property
    def all_mask(self) -> int:
        return (1 << self._n) - 1

    def mask(self, v: int) -> int:
        """Neighbourhood of ``v`` as a bitset."""
        return self._adj[v]

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(iter_bits(self._adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self._n):
            for v in iter_bits(self._adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    @property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self._adj) // 2

    # ------------------------
    # Elementary queries
    # ------------------------
    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self._adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def degree_into(self, v: int, vertices: int) -> int:
        """Number of neighbours of ``v`` inside the bitset ``vertices``."""
        return (self._adj[v] & vertices).bit_count()

    def common_neighborhood(self, vertices: Iterable[int]) -> tuple[int, ...]:
        return tuple(iter_bits(self.common_mask(canonical(vertices, self._n))))

    def common_mask(self, vertices: Iterable[int]) -> int:
        mask = self.all_mask
        for v in vertices:
            mask &= self._adj[v]
        return mask

    def induced_subgraph(self, vertices: Iterable[int]) -> Graph:
        """Subgraph on ``vertices``, relabelled ``0..k-1`` in sorted order."""
        verts = canonical(vertices, self._n)
        index = {v: i for i, v in enumerate(verts)}
        return Graph(
            len(verts),
            ((index[u], index[v]) for u, v in combinations(verts, 2) if self.adjacent(u, v)),
        )

    def edge_count_between(self, xs: Iterable[int], ys: Iterable[int]) -> int:
        """
        ``e(X, Y)``: ordered count of pairs ``(x, y)`` with ``x in X``, ``y in Y``
        adjacent. An edge with both ends in ``X & Y`` is counted twice.
        """
        ymask = mask_of(canonical(ys, self._n))
        return sum(self.degree_into(x, ymask) for x in canonical(xs, self._n))

    def edge_count_within(self, vertices: Iterable[int]) -> int:
        """``e(X)``: the number of edges with both ends in ``X``."""
        verts = canonical(vertices, self._n)
        m = mask_of(verts)
        return sum(self.degree_into(v, m) for v in verts) // 2

    def is_independent(self, vertices: Iterable[int]) -> bool:
        verts = canonical(vertices, self._n)
        m = mask_of(verts)
        return all(not self._adj[v] & m for v in verts)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        verts = canonical(vertices, self._n)
        m = mask_of(verts)
        return all((self._adj[v] | (1 << v)) & m == m for v in verts)

    def complement(self) -> Graph:
        full = self.all_mask
        return Graph.from_masks([full & ~a & ~(1 << v) for v, a in enumerate(self._adj)])

    # ------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self.edge_count})"


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------
def gen_empty(n: int) -> Graph:
    return Graph(n)


def gen_complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph.from_masks([full & ~(1 << v) for v in range(n)])


def gen_gnp(n: int, p: Rational, seed: Seed | int) -> Graph:
    """
    Binomial random graph ``G(n, p)``.

    Pairs are visited in lexicographic order and each consumes one uniform draw
    of the seeded stream, so the output only depends on ``(n, p, seed)``.
    """
    prob = as_fraction(p)
    if not 0 <= prob <= 1:
        raise ParameterError(f"edge probability must lie in [0, 1], got {prob}")
    if n < 2 or prob == 0:
        return Graph(max(n, 0))
    if prob == 1:
        return gen_complete(n)

    rng = as_seed(seed).generator()
    rows, cols = np.triu_indices(n, k=1)
    hits = rng.random(rows.size) < float(prob)
    adj = [0] * n
    for u, v in zip(rows[hits].tolist(), cols[hits].tolist()):
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph.from_masks(adj)


def extremal_independent_size(n: int, alpha: Rational) -> int:
    a = as_fraction(alpha)
    if not 0 < a < 1:
        raise ParameterError(f"alpha must lie strictly between 0 and 1, got {a}")
    size = (1 - a) * n
    if size.denominator != 1:
        raise ParameterError(f"(1 - alpha) * n = {size} is not an integer")
    return int(size)


def gen_extremal_host(n: int, alpha: Rational) -> Graph:
    """
    Host with an independent set ``A = {0, ..., (1-alpha)n - 1}`` and every other
    pair adjacent. Vertices of ``A`` have degree exactly ``alpha * n``.
    """
    k = extremal_independent_size(n, alpha)
    full = (1 << n) - 1
    a_mask = (1 << k) - 1
    adj = [full & ~a_mask if v < k else full & ~(1 << v) for v in range(n)]
    return Graph.from_masks(adj)


def gen_complete_multipartite(class_sizes: Sequence[int]) -> Graph:
    if not class_sizes:
        raise ParameterError("complete multipartite graph needs at least one class")
    if any(c < 1 for c in class_sizes):
        raise ParameterError(f"class sizes must be positive, got {list(class_sizes)}")
    n = sum(class_sizes)
    full = (1 << n) - 1
    adj = []
    start = 0
    for size in class_sizes:
        own = ((1 << size) - 1) << start
        adj.extend([full & ~own] * size)
        start += size
    return Graph.from_masks(adj)


def graph_union(g1: Graph, g2: Graph) -> Graph:
    if g1.n != g2.n:
        raise ParameterError(f"cannot union graphs on {g1.n} and {g2.n} vertices")
    return Graph.from_masks([g1.mask(v) | g2.mask(v) for v in g1.vertices])


# ---------------------------------------------------------------------------
# Searches
# ---------------------------------------------------------------------------
def enumerate_cliques(
    g: Graph, k: int, within: Iterable[int] | None = None, limit: int | None = None
) -> list[tuple[int, ...]]:
    """
    All ``k``-cliques of ``g`` (inside ``within`` if given), in lexicographic
    order, stopping after ``limit`` results.
    """
    if k < 1:
        raise ParameterError(f"clique size must be at least 1, got {k}")
    cand = g.all_mask if within is None else mask_of(canonical(within, g.n))
    out: list[tuple[int, ...]] = []

    def extend(prefix: list[int], cand: int) -> bool:
        if len(prefix) == k:
            out.append(tuple(prefix))
            return limit is not None and len(out) >= limit
        need = k - len(prefix)
        while cand.bit_count() >= need:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            prefix.append(v)
            if extend(prefix, cand & g.mask(v)):
                return True
            prefix.pop()
        return False

    if limit is None or limit > 0:
        extend([], cand)
    return out


def independence_number(g: Graph, limit: int = 64) -> tuple[int, tuple[int, ...]]:
    """Exact maximum independent set by branch and bound on the max-degree vertex."""
    if g.n > limit:
        raise SizeError("graph", g.n, limit)
    best_size = 0
    best_mask = 0

    def search(cand: int, chosen: int, size: int) -> None:
        nonlocal best_size, best_mask
        if size + cand.bit_count() <= best_size:
            return
        pivot, pivot_deg = -1, 0
        for u in iter_bits(cand):
            d = g.degree_into(u, cand)
            if d > pivot_deg:
                pivot, pivot_deg = u, d
        if pivot < 0:
            # cand is independent
            best_size, best_mask = size + cand.bit_count(), chosen | cand
            return
        bit = 1 << pivot
        search(cand & ~bit & ~g.mask(pivot), chosen | bit, size + 1)
        search(cand & ~bit, chosen, size)

    search(g.all_mask, 0, 0)
    return best_size, tuple(iter_bits(best_mask))


def is_conforming(collection: Iterable[Iterable[int]], z: Iterable[int]) -> bool:
    """True when every member of ``collection`` holds at most one vertex of ``z``."""
    zset = set(z)
    return all(sum(1 for v in member if v in zset) <= 1 for member in collection)
