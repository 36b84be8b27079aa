"""
Absorbers: disjoint cliques such that every vertex pair has many cliques that
are good for both of its vertices.

A clique is *good* for ``v`` when ``v`` misses at most two of its vertices.
The construction enumerates (or samples) candidate ``K_{m+k}`` copies, keeps
each with a small probability and prunes intersecting pairs.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import ParameterError
from .graph import Graph, enumerate_cliques
from .params import RParams, Variant
from .partitioner.sparse import EXACT_LIMIT as SPARSE_EXACT_LIMIT
from .partitioner.sparse import sparse_subset_heuristic, sparsest_subset
from .rng import Seed, as_seed
from .utils import Rational, as_fraction, canonical, format_fraction, iter_bits, mask_of

logger = logging.getLogger(__name__)

#: hosts up to this order have their candidate cliques enumerated exhaustively
FAMILY_EXACT_LIMIT = 30
#: cap on the number of candidate cliques kept in a pool
POOL_CAP = 60_000


def is_good(g: Graph, clique: Iterable[int], v: int) -> bool:
    """``v`` has at least ``|K| - 2`` neighbours in the clique ``K``."""
    verts = canonical(clique, g.n)
    if v in verts:
        raise ParameterError(f"vertex {v} lies in the clique {list(verts)}")
    if not g.is_clique(verts):
        raise ParameterError(f"{list(verts)} is not a clique")
    return g.degree_into(v, mask_of(verts)) >= len(verts) - 2


def _good_mask(g: Graph, cmask: int) -> int:
    """Vertices outside the clique for which it is good."""
    out = 0
    for v in iter_bits(g.all_mask & ~cmask):
        if (cmask & ~g.mask(v)).bit_count() <= 2:
            out |= 1 << v
    return out


# ------------------------
# Families
# ------------------------
@dataclass(frozen=True)
class PairFamilies:
    """
    Candidate cliques and, per vertex, the bitset of candidate indices that
    are good for it. The family of a pair is the AND of its two bitsets.
    """

    host: Graph
    k: int
    m: int
    size: int
    pool: tuple[tuple[int, ...], ...]
    good: tuple[int, ...]
    #: "exact" when the pool holds every copy of the clique
    method: str = "exact"
    #: unmet edge-density hypothesis, if any
    hypothesis: str | None = None

    def family(self, u: int, v: int) -> Iterator[tuple[int, ...]]:
        for i in iter_bits(self.good[u] & self.good[v]):
            yield self.pool[i]

    def count(self, u: int, v: int) -> int:
        return (self.good[u] & self.good[v]).bit_count()

    def empty_pairs(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in combinations(self.host.vertices, 2) if not self.good[u] & self.good[v]]

    def __len__(self) -> int:
        return len(self.pool)


def _random_cliques(g: Graph, size: int, seed: Seed, draws: int) -> list[tuple[int, ...]]:
    rng = seed.generator()
    found: set[tuple[int, ...]] = set()
    for _ in range(draws):
        cand = g.all_mask
        chosen: list[int] = []
        while len(chosen) < size and cand:
            options = list(iter_bits(cand))
            v = options[int(rng.integers(len(options)))]
            chosen.append(v)
            cand &= g.mask(v)
        if len(chosen) == size:
            found.add(tuple(sorted(chosen)))
    return sorted(found)


def absorber_clique_size(params: RParams, k: int) -> int:
    if k != 1 + params.g:
        raise ParameterError(f"parameters {params} need k = {1 + params.g}, got {k}")
    return params.m + k


def build_pair_families(
    g: Graph,
    params: RParams,
    k: int,
    seed: Seed | int = 0,
    delta: Rational = 0,
    delta1: Rational | None = None,
    draws: int | None = None,
) -> PairFamilies:
    """
    Candidate ``K_{m+k}`` copies with their per-pair goodness index.

    Parameters
    ----------
    g:
        The host.
    params:
        Absorber-variant parameters; ``k`` must be 2 when ``t = s`` and 1
        otherwise.
    seed:
        Stream for the random clique draws on hosts above
        :data:`FAMILY_EXACT_LIMIT` vertices.
    delta, delta1:
        For ``k = 2``, every set of at least ``(1/(m+1) - m*delta) n``
        vertices should span ``delta1 * n^2`` edges. The hypothesis is tested
        (exactly on small hosts, heuristically otherwise) when ``delta1`` is
        given and a violation is recorded on the result.
    draws:
        Number of random clique draws on large hosts, ``4 n^2`` by default.
    """
    params.require(Variant.ABSORBER)
    size = absorber_clique_size(params, k)
    stream = as_seed(seed)
    if g.n <= FAMILY_EXACT_LIMIT:
        pool = enumerate_cliques(g, size, limit=POOL_CAP)
        method = "exact" if len(pool) < POOL_CAP else "sampled"
    else:
        pool = _random_cliques(g, size, stream.derive(0), 4 * g.n * g.n if draws is None else draws)[:POOL_CAP]
        method = "sampled"

    good = [0] * g.n
    for i, clique in enumerate(pool):
        for v in iter_bits(_good_mask(g, mask_of(clique))):
            good[v] |= 1 << i

    hypothesis = None
    if k == 2 and delta1 is not None:
        hypothesis = _density_hypothesis(g, params, as_fraction(delta), as_fraction(delta1), stream.derive(1))
        if hypothesis:
            logger.warning("edge-density hypothesis fails: %s", hypothesis)
    families = PairFamilies(g, k, params.m, size, tuple(pool), tuple(good), method, hypothesis)
    empty = families.empty_pairs()
    if empty:
        logger.warning("%d vertex pairs have no good K_%d, first %s", len(empty), size, empty[0])
    logger.debug("pair families: %d candidate K_%d (%s)", len(pool), size, method)
    return families


def _density_hypothesis(g: Graph, params: RParams, delta: Fraction, delta1: Fraction, seed: Seed) -> str | None:
    k = max(0, math.ceil((Fraction(1, params.m + 1) - params.m * delta) * g.n))
    if k > g.n:
        return None
    verts = tuple(g.vertices)
    if g.n <= SPARSE_EXACT_LIMIT:
        edges, witness = sparsest_subset(g, verts, k)
    else:
        edges, witness = sparse_subset_heuristic(g, verts, k, seed)
    bound = delta1 * g.n * g.n
    if edges < bound:
        return f"{k}-set {list(witness)} spans {edges} < {format_fraction(bound)} edges"
    return None


@dataclass(frozen=True)
class NeighbourhoodBound:
    ok: bool
    bound: Fraction
    worst_set: tuple[int, ...]
    worst_count: int
    method: str


def common_neighbourhood_bound(
    g: Graph, params: RParams, delta: Rational = 0, seed: Seed | int = 0, samples: int = 2000
) -> NeighbourhoodBound:
    """
    Check that every set of at most ``m`` vertices has at least
    ``(t/r - m*delta) n`` common neighbours. Sets of exactly ``min(m, n)``
    vertices are the binding ones; they are enumerated on hosts up to
    :data:`FAMILY_EXACT_LIMIT` vertices and sampled above.
    """
    d = as_fraction(delta)
    bound = (Fraction(params.t, params.r) - params.m * d) * g.n
    size = min(params.m, g.n)
    if g.n <= FAMILY_EXACT_LIMIT:
        sets: Iterable[tuple[int, ...]] = combinations(g.vertices, size)
        method = "exact"
    else:
        rng = as_seed(seed).generator()
        sets = (tuple(sorted(rng.choice(g.n, size=size, replace=False).tolist())) for _ in range(samples))
        method = "sampled"
    worst: tuple[int, ...] = ()
    worst_count = g.n + 1
    for subset in sets:
        got = g.common_mask(subset).bit_count()
        if got < worst_count:
            worst, worst_count = subset, got
    if worst_count > g.n:
        worst_count = g.n
    return NeighbourhoodBound(worst_count >= bound, bound, worst, worst_count, method)


# ------------------------
# Sampling
# ------------------------
@dataclass
class Absorber:
    host: Graph
    k: int
    m: int
    cliques: list[tuple[int, ...]] = field(default_factory=list)
    #: (u, v) with u < v -> number of cliques good for both
    pair_counts: dict[tuple[int, int], int] = field(default_factory=dict)
    target: int = 0
    attempts: int = 0
    #: keep probability of every candidate clique
    probability: Fraction | None = None
    delta2: Fraction | None = None
    certified: bool = False
    failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    @property
    def covered(self) -> int:
        return sum(len(c) for c in self.cliques)

    @property
    def min_count(self) -> int:
        return min(self.pair_counts.values(), default=0)

    def coverage_bound(self) -> Fraction | None:
        if self.delta2 is None:
            return None
        return 10 * (self.k + self.m) * self.delta2 * self.host.n


def pair_goodness(g: Graph, cliques: Sequence[Sequence[int]]) -> dict[tuple[int, int], int]:
    """Per-pair count of cliques good for both vertices."""
    good = [0] * g.n
    for i, clique in enumerate(cliques):
        for v in iter_bits(_good_mask(g, mask_of(clique))):
            good[v] |= 1 << i
    return {(u, v): (good[u] & good[v]).bit_count() for u, v in combinations(g.vertices, 2)}


def default_target(xi: Rational, n: int) -> int:
    """``xi^2 n / 50`` rounded up, at least 1."""
    return max(1, math.ceil(as_fraction(xi) ** 2 * n / 50))


def keep_probability(xi: Rational, n: int, size: int) -> Fraction:
    """``(xi/10) n^(1-size)`` for cliques of ``size`` vertices, at most 1."""
    if n < 1 or size < 1:
        raise ParameterError(f"need n >= 1 and size >= 1, got n={n}, size={size}")
    return min(Fraction(1), as_fraction(xi) / 10 / Fraction(n) ** (size - 1))


def sample_absorber(
    families: PairFamilies,
    xi: Rational,
    seed: Seed | int = 0,
    target: int | None = None,
    retries: int = 5,
    probability: Rational | None = None,
) -> Absorber:
    """
    Random disjoint subfamily of the candidate pool.

    Every candidate is kept independently, by default with
    :func:`keep_probability`; then each clique meeting an earlier kept one is
    dropped. An attempt
    succeeds when every vertex pair keeps at least ``target`` good cliques.
    Attempt ``i`` draws from sub-stream ``i`` of ``seed``.
    """
    g = families.host
    x = as_fraction(xi)
    if not 0 < x <= 1:
        raise ParameterError(f"xi must lie in (0, 1], got {x}")
    if retries < 1:
        raise ParameterError(f"retries must be positive, got {retries}")
    goal = default_target(x, g.n) if target is None else target
    out = Absorber(g, families.k, families.m, target=goal)
    if not families.pool:
        out.failure = "no candidate cliques"
        return out
    size = families.size
    p = keep_probability(x, g.n, size) if probability is None else as_fraction(probability)
    if not 0 <= p <= 1:
        raise ParameterError(f"probability must lie in [0, 1], got {p}")
    out.probability = p

    stream = as_seed(seed)
    best: tuple[int, list[int], dict[tuple[int, int], int]] | None = None
    for attempt in range(retries):
        rng = stream.derive(attempt).generator()
        draws = rng.random(len(families.pool))
        used = 0
        kept: list[int] = []
        for i in range(len(families.pool)):
            if draws[i] >= float(p):
                continue
            cmask = mask_of(families.pool[i])
            if cmask & used:
                continue
            used |= cmask
            kept.append(i)
        kmask = mask_of(kept)
        counts = {
            (u, v): (families.good[u] & families.good[v] & kmask).bit_count()
            for u, v in combinations(g.vertices, 2)
        }
        low = min(counts.values(), default=0)
        logger.debug("absorber attempt %d: %d cliques, weakest pair %d", attempt, len(kept), low)
        if best is None or low > best[0]:
            best = (low, kept, counts)
        if low >= goal:
            break

    assert best is not None
    low, kept, counts = best
    out.cliques = [families.pool[i] for i in kept]
    out.pair_counts = counts
    out.attempts = attempt + 1
    if low < goal:
        out.failure = f"weakest pair keeps {low} good cliques after {retries} attempts, target {goal}"
    return out


def build_absorber(
    g: Graph,
    params: RParams,
    k: int,
    xi: Rational,
    delta2: Rational | None = None,
    target: int | None = None,
    seed: Seed | int = 0,
    retries: int = 5,
    probability: Rational | None = None,
) -> Absorber:
    """
    Families, sampling and certification in one go.

    The absorber is certified when it covers at most ``10(k+m) delta2 n``
    vertices and every pair keeps at least ``delta2^2 n`` good cliques;
    ``delta2`` defaults to ``xi / 10``.
    """
    stream = as_seed(seed)
    families = build_pair_families(g, params, k, stream.derive(0))
    result = sample_absorber(families, xi, stream.derive(1), target, retries, probability)
    d2 = as_fraction(xi) / 10 if delta2 is None else as_fraction(delta2)
    result.delta2 = d2
    bound = result.coverage_bound()
    assert bound is not None
    result.certified = result.ok and result.covered <= bound and result.min_count >= d2 * d2 * g.n
    logger.info(
        "absorber: %d cliques covering %d vertices, weakest pair %d, certified %s",
        len(result.cliques),
        result.covered,
        result.min_count,
        result.certified,
    )
    return result
