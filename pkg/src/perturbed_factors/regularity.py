"""
Pair densities and regularity, checked directly on small vertex sets.

A pair ``(X, Y)`` is ``(eps, d)``-regular when every ``X' in X`` and
``Y' in Y`` with ``|X'| >= eps|X|`` and ``|Y'| >= eps|Y|`` satisfy
``|d(X', Y') - d| < eps``. For a fixed ``X'`` the extreme densities over
``Y'`` of a given size come from taking the ``Y``-vertices of highest (or
lowest) degree into ``X'``, so only the subsets of one side are enumerated.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate, combinations

from .errors import ParameterError, SizeError
from .graph import Graph
from .rng import Seed, as_seed
from .utils import Rational, as_fraction, canonical, mask_of

logger = logging.getLogger(__name__)

#: largest side enumerated exhaustively
REGULARITY_EXACT_LIMIT = 16


def _disjoint_parts(g: Graph, x: Iterable[int], y: Iterable[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    xs, ys = canonical(x, g.n), canonical(y, g.n)
    if not xs or not ys:
        raise ParameterError("both sides of a pair must be nonempty")
    if mask_of(xs) & mask_of(ys):
        raise ParameterError("the sides of a pair must be disjoint")
    return xs, ys


def density(g: Graph, x: Iterable[int], y: Iterable[int]) -> Fraction:
    """``e(X, Y) / (|X| |Y|)`` as an exact rational."""
    xs, ys = _disjoint_parts(g, x, y)
    return Fraction(g.edge_count_between(xs, ys), len(xs) * len(ys))


@dataclass(frozen=True)
class PairStats:
    x: tuple[int, ...]
    y: tuple[int, ...]
    density: Fraction
    eps: Fraction
    #: reference density the pair is tested against
    d: Fraction
    regular: bool
    #: ``(X', Y')`` with ``|d(X', Y') - d| >= eps``
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    #: "exact" or "sampled"
    method: str = "exact"
    #: smallest share of the other side seen by a vertex of X, resp. Y
    min_degree_share: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))


def _min_share(g: Graph, xs: Sequence[int], ys: Sequence[int]) -> Fraction:
    ymask = mask_of(ys)
    return min(Fraction(g.degree_into(v, ymask), len(ys)) for v in xs)


def _subsets(xs: Sequence[int], low: int) -> Iterator[tuple[int, ...]]:
    for k in range(low, len(xs) + 1):
        yield from combinations(xs, k)


def _random_subsets(xs: Sequence[int], low: int, seed: Seed, samples: int) -> Iterator[tuple[int, ...]]:
    rng = seed.generator()
    for _ in range(samples):
        k = int(rng.integers(low, len(xs) + 1))
        yield tuple(sorted(rng.choice(xs, size=k, replace=False).tolist()))


def _violation(
    g: Graph, sub: Sequence[int], ys: Sequence[int], low: int, d: Fraction, eps: Fraction
) -> tuple[int, ...] | None:
    smask = mask_of(sub)
    ranked = sorted(ys, key=lambda v: (g.degree_into(v, smask), v))
    degs = [g.degree_into(v, smask) for v in ranked]
    asc = [0, *accumulate(degs)]
    desc = [0, *accumulate(reversed(degs))]
    for k in range(low, len(ys) + 1):
        scale = len(sub) * k
        if abs(Fraction(asc[k], scale) - d) >= eps:
            return tuple(sorted(ranked[:k]))
        if abs(Fraction(desc[k], scale) - d) >= eps:
            return tuple(sorted(ranked[len(ranked) - k :]))
    return None


def check_eps_regular(
    g: Graph,
    x: Iterable[int],
    y: Iterable[int],
    eps: Rational,
    d: Rational | None = None,
    mode: str = "auto",
    seed: Seed | int = 0,
    samples: int = 4096,
) -> PairStats:
    """
    Decide ``(eps, d)``-regularity of ``(X, Y)``; ``d`` defaults to the pair's
    own density.

    Parameters
    ----------
    mode:
        ``"exact"`` enumerates every admissible subset of the smaller side and
        raises :class:`SizeError` above :data:`REGULARITY_EXACT_LIMIT` vertices.
        ``"sampled"`` draws ``samples`` random subsets instead, so a regular
        verdict is only evidence. ``"auto"`` picks by size.
    """
    xs, ys = _disjoint_parts(g, x, y)
    e = as_fraction(eps)
    if not 0 < e <= 1:
        raise ParameterError(f"eps must lie in (0, 1], got {e}")
    dens = Fraction(g.edge_count_between(xs, ys), len(xs) * len(ys))
    ref = dens if d is None else as_fraction(d)
    if mode not in ("auto", "exact", "sampled"):
        raise ParameterError(f"unknown mode '{mode}', choose from auto, exact, sampled")

    swapped = len(ys) < len(xs)
    small, large = (ys, xs) if swapped else (xs, ys)
    if mode == "exact" and len(small) > REGULARITY_EXACT_LIMIT:
        raise SizeError("regularity side", len(small), REGULARITY_EXACT_LIMIT)
    exact = mode == "exact" or (mode == "auto" and len(small) <= REGULARITY_EXACT_LIMIT)
    low_small = max(1, math.ceil(e * len(small)))
    low_large = max(1, math.ceil(e * len(large)))
    subsets = _subsets(small, low_small) if exact else _random_subsets(small, low_small, as_seed(seed), samples)

    witness = None
    for sub in subsets:
        other = _violation(g, sub, large, low_large, ref, e)
        if other is not None:
            witness = (other, sub) if swapped else (sub, other)
            break
    shares = (_min_share(g, xs, ys), _min_share(g, ys, xs))
    return PairStats(xs, ys, dens, e, ref, witness is None, witness, "exact" if exact else "sampled", shares)


# ------------------------
# Tuples and reduced graphs
# ------------------------
@dataclass
class SuperRegularReport:
    eps: Fraction
    d: Fraction
    theta: Fraction
    pairs: dict[tuple[int, int], PairStats] = field(default_factory=dict)
    #: (i, j, vertex) for every degree failure found, first per pair
    degree_failures: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def regular(self) -> bool:
        return all(p.regular for p in self.pairs.values())

    @property
    def ok(self) -> bool:
        return self.regular and not self.degree_failures


def is_super_regular(
    g: Graph, parts: Sequence[Iterable[int]], eps: Rational, d: Rational, theta: Rational, mode: str = "auto"
) -> SuperRegularReport:
    """
    ``(eps, d, theta)``-super-regularity of a tuple: every pair is
    ``(eps, d)``-regular and every vertex of ``V_i`` has at least
    ``theta |V_j|`` neighbours in ``V_j``.
    """
    sets = [canonical(p, g.n) for p in parts]
    report = SuperRegularReport(as_fraction(eps), as_fraction(d), as_fraction(theta))
    for i, j in combinations(range(len(sets)), 2):
        report.pairs[(i, j)] = check_eps_regular(g, sets[i], sets[j], eps, d, mode)
        for a, b in ((i, j), (j, i)):
            bmask = mask_of(sets[b])
            low = next((v for v in sets[a] if g.degree_into(v, bmask) < report.theta * len(sets[b])), None)
            if low is not None:
                report.degree_failures.append((a, b, low))
    return report


def reduced_graph(g: Graph, parts: Sequence[Iterable[int]], eps: Rational, d: Rational, mode: str = "auto") -> Graph:
    """Cluster graph: ``ij`` is an edge when the pair is regular at its own density and that density is at least ``d``."""
    sets = [canonical(p, g.n) for p in parts]
    floor = as_fraction(d)
    edges = []
    for i, j in combinations(range(len(sets)), 2):
        stats = check_eps_regular(g, sets[i], sets[j], eps, mode=mode)
        if stats.regular and stats.density >= floor:
            edges.append((i, j))
    return Graph(len(sets), edges)


# ------------------------
# Parameter arithmetic
# ------------------------
@dataclass(frozen=True)
class RegularityWindow:
    eps: Fraction
    d_low: Fraction
    d_high: Fraction
    #: whether the endpoints of the density window are attainable
    closed: bool

    def contains(self, value: Rational) -> bool:
        v = as_fraction(value)
        if self.closed:
            return self.d_low <= v <= self.d_high
        return self.d_low < v < self.d_high


def slicing_params(eps: Rational, beta: Rational, d: Rational) -> RegularityWindow:
    """
    Regularity inherited by subsets of at least ``beta`` of each side:
    ``eps' = max(eps/beta, 2 eps)`` and a density within ``eps`` of ``d``.
    """
    e, b, dd = as_fraction(eps), as_fraction(beta), as_fraction(d)
    if not 0 < e < b:
        raise ParameterError(f"need 0 < eps < beta, got eps={e}, beta={b}")
    if dd > 1:
        raise ParameterError(f"density must be at most 1, got {dd}")
    return RegularityWindow(max(e / b, 2 * e), dd - e, dd + e, closed=True)


def slicing_adding_params(xi: Rational, eps: Rational, d: Rational) -> RegularityWindow:
    """
    Regularity kept after adding at most ``xi |U_i|`` vertices to each side:
    ``eps' = max(xi/eps, 6 eps)`` and a density strictly within ``3 eps`` of ``d``.
    """
    x, e, dd = as_fraction(xi), as_fraction(eps), as_fraction(d)
    if not 0 < x < e < 1:
        raise ParameterError(f"need 0 < xi < eps < 1, got xi={x}, eps={e}")
    if dd > 1:
        raise ParameterError(f"density must be at most 1, got {dd}")
    return RegularityWindow(max(x / e, 6 * e), dd - 3 * e, dd + 3 * e, closed=False)


def random_conforming_split(
    part: Iterable[int], z: Iterable[int], pieces: int, seed: Seed | int
) -> tuple[tuple[int, ...], ...]:
    """
    Split ``part`` into ``pieces`` sets of sizes differing by at most one,
    with every vertex of ``z`` in the first piece and the rest placed
    uniformly at random.
    """
    verts = sorted(set(part))
    if pieces < 1:
        raise ParameterError(f"number of pieces must be positive, got {pieces}")
    inside = set(verts)
    zs = sorted(v for v in set(z) if v in inside)
    base, extra = divmod(len(verts), pieces)
    sizes = [base + (i < extra) for i in range(pieces)]
    if len(zs) * pieces > len(verts):
        raise ParameterError(f"{len(zs)} vertices of Z exceed |V|/pieces = {Fraction(len(verts), pieces)}")
    zset = set(zs)
    rest = [v for v in verts if v not in zset]
    order = as_seed(seed).generator().permutation(len(rest)).tolist()
    shuffled = [rest[i] for i in order]
    out = []
    start = 0
    for i, size in enumerate(sizes):
        take = size - len(zs) if i == 0 else size
        chunk = shuffled[start : start + take]
        start += take
        out.append(tuple(sorted((zs if i == 0 else []) + chunk)))
    return tuple(out)
