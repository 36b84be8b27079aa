from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParameterError
from ..graph import Graph, gen_complete
from ..params import RParams, Variant
from ..utils import Rational, as_fraction


@dataclass(frozen=True)
class WeightedGraph:
    graph: Graph
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.weights) != self.graph.n:
            raise ParameterError(f"{len(self.weights)} weights given for a graph on {self.graph.n} vertices")
        if any(w < 0 for w in self.weights):
            raise ParameterError("vertex weights must be nonnegative")

    @property
    def total_weight(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def scaled(self, phi: Rational) -> WeightedGraph:
        return scale(self, phi)


def scale(w: WeightedGraph, phi: Rational) -> WeightedGraph:
    """``phi ⋉ w``: same graph, every weight multiplied by ``phi``."""
    factor = as_fraction(phi)
    if factor <= 0:
        raise ParameterError(f"scale factor must be positive, got {factor}")
    return WeightedGraph(w.graph, tuple(x * factor for x in w.weights))


def build_T(params: RParams) -> WeightedGraph:
    """
    Weighted ``K_{m+1}``: vertices ``0..m-1`` carry ``s/r`` and vertex ``m``
    (the distinguished one) carries ``t/r``.
    """
    params.require(Variant.GADGET)
    r = params.r
    weights = (Fraction(params.s, r),) * params.m + (Fraction(params.t, r),)
    return WeightedGraph(gen_complete(params.m + 1), weights)


def tau_vertex(params: RParams) -> int:
    """Index of the ``t/r`` vertex in :func:`build_T`."""
    return params.m
