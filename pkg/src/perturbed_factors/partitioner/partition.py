"""
Partitions ``A_1, ..., A_{h+1}`` of a host and their structural properties.

The first ``h`` parts are the sparse ones, each about ``sn/r`` vertices with
few inside edges; ``A_{h+1}`` takes the rest. Every property is a separate
predicate so the reports can say exactly which bound failed and where.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import ParameterError
from ..graph import Graph
from ..params import RParams, Variant
from ..rng import Seed, as_seed
from ..utils import Rational, as_fraction, canonical, format_fraction, iter_bits, mask_of
from .sparse import EXACT_LIMIT, sparse_subset_heuristic, sparsest_subset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PartitionConstants:
    beta: Fraction
    #: ``gamma_1, ..., gamma_m``
    gammas: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not 0 < self.beta < 1:
            raise ParameterError(f"beta must lie in (0, 1), got {self.beta}")
        if any(not 0 < g < 1 for g in self.gammas):
            raise ParameterError(f"every gamma must lie in (0, 1), got {[str(g) for g in self.gammas]}")

    @classmethod
    def build(cls, params: RParams, beta: Rational = Fraction(1, 20), gammas: Sequence[Rational] | None = None) -> PartitionConstants:
        """
        Constants for ``params``. Without explicit ``gammas`` the hierarchy is
        geometric, ``gamma_h = 2^(h-m) / 50``.
        """
        if gammas is None:
            values = tuple(Fraction(1, 50) * Fraction(2) ** (h - params.m) for h in range(1, params.m + 1))
        else:
            values = tuple(as_fraction(g) for g in gammas)
            if len(values) != params.m:
                raise ParameterError(f"expected {params.m} gamma values, got {len(values)}")
        return cls(as_fraction(beta), values)

    def gamma(self, h: int) -> Fraction:
        """``gamma_h`` for ``h`` in ``[1, m]``."""
        return self.gammas[h - 1]


@dataclass(frozen=True)
class HPartition:
    host: Graph
    params: RParams
    #: ``A_1, ..., A_{h+1}``, each sorted
    parts: tuple[tuple[int, ...], ...]
    constants: PartitionConstants

    def __post_init__(self) -> None:
        self.params.require(Variant.ABSORBER)
        if not 1 <= len(self.parts) <= self.params.m + 1:
            raise ParameterError(f"a partition has between 1 and {self.params.m + 1} parts, got {len(self.parts)}")
        if len(self.constants.gammas) != self.params.m:
            raise ParameterError(f"expected {self.params.m} gamma values, got {len(self.constants.gammas)}")
        seen = 0
        for i, part in enumerate(self.parts):
            mask = mask_of(canonical(part, self.host.n))
            if mask & seen:
                raise ParameterError(f"A_{i + 1} overlaps an earlier part")
            seen |= mask
        if seen != self.host.all_mask:
            missing = list(iter_bits(self.host.all_mask & ~seen))
            raise ParameterError(f"parts do not cover vertices {missing}")

    @classmethod
    def build(cls, host: Graph, params: RParams, parts: Iterable[Iterable[int]], constants: PartitionConstants | None = None) -> HPartition:
        sets = tuple(canonical(p, host.n) for p in parts)
        return cls(host, params, sets, constants or PartitionConstants.build(params))

    @classmethod
    def trivial(cls, host: Graph, params: RParams, constants: PartitionConstants | None = None) -> HPartition:
        return cls(host, params, (tuple(host.vertices),), constants or PartitionConstants.build(params))

    @property
    def h(self) -> int:
        return len(self.parts) - 1

    @property
    def n(self) -> int:
        return self.host.n

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(mask_of(p) for p in self.parts)

    @property
    def last(self) -> tuple[int, ...]:
        return self.parts[-1]

    def part_of(self, v: int) -> int:
        for i, part in enumerate(self.parts):
            if v in part:
                return i
        raise ParameterError(f"vertex {v} is not in the partition")

    def inside_edges(self) -> tuple[int, ...]:
        """``e(A_i)`` for every part."""
        return tuple(self.host.edge_count_within(p) for p in self.parts)

    def with_parts(self, parts: Iterable[Iterable[int]]) -> HPartition:
        return HPartition(self.host, self.params, tuple(canonical(p, self.n) for p in parts), self.constants)

    def describe(self) -> dict[str, object]:
        return {
            "h": self.h,
            "parts": [list(p) for p in self.parts],
            "beta": format_fraction(self.constants.beta),
            "gammas": [format_fraction(g) for g in self.constants.gammas],
        }


# ------------------------
# Reports
# ------------------------
@dataclass(frozen=True)
class PropertyCheck:
    name: str
    holds: bool
    #: "exact", "sampled" or "vacuous"
    method: str = "exact"
    detail: str = ""
    witness: tuple[int, ...] = ()


@dataclass
class PropertyReport:
    checks: dict[str, PropertyCheck] = field(default_factory=dict)

    def add(self, check: PropertyCheck) -> None:
        self.checks[check.name] = check

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks.values())

    @property
    def failing(self) -> list[str]:
        return [c.name for c in self.checks.values() if not c.holds]

    def __getitem__(self, name: str) -> PropertyCheck:
        return self.checks[name]

    def to_json(self) -> dict[str, dict[str, object]]:
        return {
            c.name: {"holds": c.holds, "method": c.method, "detail": c.detail, "witness": list(c.witness)}
            for c in self.checks.values()
        }


def _vacuous(name: str, why: str) -> PropertyCheck:
    return PropertyCheck(name, True, "vacuous", why)


# ------------------------
# Shared predicates
# ------------------------
def _size_check(p: HPartition, name: str, slack: Fraction) -> PropertyCheck:
    if p.h == 0:
        return _vacuous(name, "h = 0")
    target = Fraction(p.params.s, p.params.r) * p.n
    for i, part in enumerate(p.parts[:-1]):
        if abs(len(part) - target) > slack * p.n:
            return PropertyCheck(name, False, detail=f"|A_{i + 1}| = {len(part)} is not within {format_fraction(slack * p.n)} of {format_fraction(target)}", witness=part)
    return PropertyCheck(name, True, detail=f"all sizes within {format_fraction(slack * p.n)} of {format_fraction(target)}")


def _non_neighbours_into_last(p: HPartition, name: str, bound: Fraction) -> PropertyCheck:
    if p.h == 0:
        return _vacuous(name, "no vertex outside A_{h+1}")
    last = p.masks[-1]
    for v in iter_bits(p.host.all_mask & ~last):
        missing = (last & ~p.host.mask(v)).bit_count()
        if missing > bound:
            return PropertyCheck(name, False, detail=f"vertex {v} has {missing} non-neighbours in A_{p.h + 1}, bound {format_fraction(bound)}", witness=(v,))
    return PropertyCheck(name, True, detail=f"at most {format_fraction(bound)} non-neighbours in A_{p.h + 1}")


def _last_into_sparse(p: HPartition, name: str, bound: Fraction) -> PropertyCheck:
    if p.h == 0:
        return _vacuous(name, "h = 0")
    masks = p.masks
    for v in p.last:
        for i in range(p.h):
            got = p.host.degree_into(v, masks[i])
            if got < bound:
                return PropertyCheck(name, False, detail=f"vertex {v} has {got} neighbours in A_{i + 1}, bound {format_fraction(bound)}", witness=(v,))
    return PropertyCheck(name, True, detail=f"at least {format_fraction(bound)} neighbours in every sparse part")


# ------------------------
# Final properties
# ------------------------
def check_properties(p: HPartition, seed: Seed | int = 0, samples: int = 32) -> PropertyReport:
    """
    Evaluate the six partition properties.

    Parameters
    ----------
    p:
        The partition to audit.
    seed:
        Stream for the random restarts of the sparse-subset heuristic, used for
        the sparsity property when ``n`` exceeds the exact-search limit.
    samples:
        Number of random restarts of that heuristic.

    Returns
    -------
    PropertyReport
        One entry per property, keyed ``"i"`` through ``"vi"``. Entries carry the
        method that decided them; a ``"sampled"`` pass is not a proof.
    """
    beta = p.constants.beta
    report = PropertyReport()
    gamma_h = p.constants.gamma(p.h) if p.h else Fraction(0)
    report.add(_size_check(p, "i", gamma_h))
    report.add(_non_neighbours_into_last(p, "ii", 4 * beta * p.n))
    report.add(_last_into_sparse(p, "iii", beta * p.n))
    report.add(_sparsity_check(p, seed, samples))
    report.add(_cross_degree_check(p))
    report.add(_missing_edges_check(p, gamma_h))
    return report


def sparse_threshold(p: HPartition) -> Fraction:
    """``gamma_{h+1}^2 n^2``; a part of ``sn/r`` vertices at or below it is sparse."""
    return p.constants.gamma(p.h + 1) ** 2 * p.n * p.n


def sparse_size(params: RParams, n: int) -> int:
    return params.s * n // params.r


def _sparsity_check(p: HPartition, seed: Seed | int, samples: int) -> PropertyCheck:
    if p.h >= p.params.m:
        return _vacuous("iv", "h = m")
    k = sparse_size(p.params, p.n)
    if k > len(p.last):
        return _vacuous("iv", f"A_{p.h + 1} has fewer than {k} vertices")
    threshold = sparse_threshold(p)
    if p.n <= EXACT_LIMIT:
        edges, witness = sparsest_subset(p.host, p.last, k)
        method = "exact"
    else:
        edges, witness = sparse_subset_heuristic(p.host, p.last, k, as_seed(seed).derive(p.h), samples)
        method = "sampled"
    if edges <= threshold:
        return PropertyCheck("iv", False, method, f"{k}-subset with {edges} edges, bound {format_fraction(threshold)}", witness)
    return PropertyCheck("iv", True, method, f"sparsest {k}-subset found has {edges} edges > {format_fraction(threshold)}")


def _cross_degree_check(p: HPartition) -> PropertyCheck:
    if p.h < 2:
        return _vacuous("v", "fewer than two sparse parts")
    masks = p.masks
    for i in range(p.h):
        for j in range(p.h):
            if i == j:
                continue
            need = Fraction(len(p.parts[j]), 3)
            for v in p.parts[i]:
                got = p.host.degree_into(v, masks[j])
                if got < need:
                    return PropertyCheck("v", False, detail=f"vertex {v} of A_{i + 1} has {got} neighbours in A_{j + 1}, needs {format_fraction(need)}", witness=(v,))
    return PropertyCheck("v", True, detail="every sparse-part vertex sees a third of every other sparse part")


def missing_edges(g: Graph, xs: Sequence[int], ys: Sequence[int]) -> int:
    """Non-adjacent pairs between two disjoint sets."""
    return len(xs) * len(ys) - g.edge_count_between(xs, ys)


def _missing_edges_check(p: HPartition, gamma_h: Fraction) -> PropertyCheck:
    if p.h == 0:
        return _vacuous("vi", "single part")
    for i in range(p.h + 1):
        for j in range(i + 1, p.h + 1):
            a, b = p.parts[i], p.parts[j]
            gap = missing_edges(p.host, a, b)
            bound = gamma_h * len(a) * len(b)
            if gap > bound:
                return PropertyCheck("vi", False, detail=f"{gap} missing edges between A_{i + 1} and A_{j + 1}, bound {format_fraction(bound)}", witness=(i + 1, j + 1))
    return PropertyCheck("vi", True, detail="missing cross edges within bound for every pair")


# ------------------------
# Intermediate properties of the refinement
# ------------------------
def check_star_properties(p: HPartition) -> PropertyReport:
    """
    The three invariants kept while ``h`` grows: sizes within ``beta*gamma_i*n``
    and ``e(A_i) <= beta^2 gamma_i n^2``, at most ``4 beta n`` non-neighbours in
    ``A_{h+1}``, and at least ``2 beta n`` neighbours in every ``A_i``.
    """
    beta = p.constants.beta
    n = p.n
    report = PropertyReport()
    target = Fraction(p.params.s, p.params.r) * n
    size = PropertyCheck("i*", True, "vacuous" if p.h == 0 else "exact", "h = 0" if p.h == 0 else "sizes and inside edges within bounds")
    for i, part in enumerate(p.parts[:-1]):
        gamma = p.constants.gamma(i + 1)
        if abs(len(part) - target) > beta * gamma * n:
            size = PropertyCheck("i*", False, detail=f"|A_{i + 1}| = {len(part)} is not within {format_fraction(beta * gamma * n)} of {format_fraction(target)}", witness=part)
            break
        inside = p.host.edge_count_within(part)
        if inside > beta * beta * gamma * n * n:
            size = PropertyCheck("i*", False, detail=f"e(A_{i + 1}) = {inside} exceeds {format_fraction(beta * beta * gamma * n * n)}", witness=part)
            break
    report.add(size)
    report.add(_non_neighbours_into_last(p, "ii*", 4 * beta * n))
    report.add(_last_into_sparse(p, "iii*", 2 * beta * n))
    return report


def exceptional_sets(p: HPartition, beta: Rational | None = None) -> tuple[tuple[int, ...], ...]:
    """
    ``Z_i``: vertices of ``A_i`` with more than ``beta*|A_j|`` non-neighbours in
    some sparse part ``A_j``, ``j != i``. One set per part, ``A_{h+1}`` included.
    """
    b = p.constants.beta if beta is None else as_fraction(beta)
    masks = p.masks
    out = []
    for i, part in enumerate(p.parts):
        z = []
        for v in part:
            for j in range(p.h):
                if j == i:
                    continue
                if (masks[j] & ~p.host.mask(v)).bit_count() > b * len(p.parts[j]):
                    z.append(v)
                    break
        out.append(tuple(z))
    return tuple(out)
