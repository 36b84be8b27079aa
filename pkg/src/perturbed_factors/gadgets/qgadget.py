from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from itertools import combinations

from ..errors import ParameterError
from ..graph import Graph
from ..params import RParams, Variant

VertexSet = tuple[int, ...]


def gadget_shape(params: RParams, h: int) -> tuple[int, int]:
    """``(x, y)``: the number of L-sets and of (M, N) pairs of ``Q_h``."""
    params.require(Variant.GADGET)
    if not 1 <= h <= params.m:
        raise ParameterError(f"gadget index h must lie in [1, {params.m}], got {h}")
    return params.s - params.t, (params.m - h) * params.s + params.t


def gadget_vertex_count(params: RParams, h: int) -> int:
    return (params.m + 1 - h) * params.r


@dataclass(frozen=True)
class GadgetLayout:
    """
    Labelled vertex sets of one ``Q_h`` copy, in whatever coordinates the
    caller uses (gadget-local or host vertices).
    """

    h: int
    l_sets: tuple[VertexSet, ...]
    m_sets: tuple[VertexSet, ...] = ()
    n_sets: tuple[VertexSet, ...] = ()

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(v for part in (*self.l_sets, *self.m_sets, *self.n_sets) for v in part))

    @property
    def x(self) -> int:
        return len(self.l_sets)

    @property
    def y(self) -> int:
        return len(self.m_sets)

    def edges(self) -> Iterator[tuple[int, int]]:
        """
        Edge set of the gadget on these vertex sets: every set is a clique,
        every L-set is complete to every M-set, and ``M_j`` is complete to
        ``N_j``.
        """
        for part in (*self.l_sets, *self.m_sets, *self.n_sets):
            yield from combinations(part, 2)
        for ls in self.l_sets:
            for ms in self.m_sets:
                for u in ls:
                    for v in ms:
                        yield u, v
        for ms, ns in zip(self.m_sets, self.n_sets):
            for u in ms:
                for v in ns:
                    yield u, v

    def check(self, params: RParams, host: Graph) -> list[str]:
        """Shape and spanning checks of this layout inside ``host``."""
        x, y = gadget_shape(params, self.h)
        problems = []
        if (self.x, self.y, len(self.n_sets)) != (x, y, y):
            problems.append(
                f"Q_{self.h} needs {x} L-sets and {y} (M, N) pairs, got {self.x}, {self.y}, {len(self.n_sets)}"
            )
        for name, sets, size in (
            ("L", self.l_sets, self.h),
            ("M", self.m_sets, params.m - self.h + 1),
            ("N", self.n_sets, self.h),
        ):
            for i, part in enumerate(sets):
                if len(part) != size:
                    problems.append(f"{name}_{i} has {len(part)} vertices, expected {size}")
        for u, v in self.edges():
            if not host.adjacent(u, v):
                problems.append(f"gadget edge ({u}, {v}) is missing from the host")
                break
        return problems


@dataclass(frozen=True)
class QGadget:
    params: RParams
    layout: GadgetLayout
    graph: Graph

    @property
    def h(self) -> int:
        return self.layout.h

    @property
    def l_sets(self) -> tuple[VertexSet, ...]:
        return self.layout.l_sets

    @property
    def m_sets(self) -> tuple[VertexSet, ...]:
        return self.layout.m_sets

    @property
    def n_sets(self) -> tuple[VertexSet, ...]:
        return self.layout.n_sets

    @property
    def vertex_count(self) -> int:
        return self.graph.n

    def check_structure(self) -> list[str]:
        """Every adjacency rule of the gadget, including the forbidden pairs."""
        g = self.graph
        problems = self.layout.check(self.params, g)
        for i, ls in enumerate(self.l_sets):
            for j, ns in enumerate(self.n_sets):
                if any(g.adjacent(u, v) for u in ls for v in ns):
                    problems.append(f"L_{i} has an edge to N_{j}")
        for j, ms in enumerate(self.m_sets):
            for k, ns in enumerate(self.n_sets):
                if j != k and any(g.adjacent(u, v) for u in ms for v in ns):
                    problems.append(f"M_{j} has an edge to N_{k}")
        if g.n != gadget_vertex_count(self.params, self.h):
            problems.append(f"gadget has {g.n} vertices, expected {gadget_vertex_count(self.params, self.h)}")
        if g.edge_count != len(set(self.layout.edges())):
            problems.append("gadget carries edges outside its adjacency rules")
        return problems


def build_Q(params: RParams, h: int) -> QGadget:
    """
    Build ``Q_h``. Vertices are numbered L-sets first, then ``M_1..M_y``,
    then ``N_1..N_y``. For ``t = 0`` and ``h = m`` the gadget degenerates to
    ``s`` disjoint copies of ``K_m`` held as L-sets.
    """
    x, y = gadget_shape(params, h)
    m = params.m
    n = gadget_vertex_count(params, h)
    counter = iter(range(n))

    def take(k: int) -> VertexSet:
        return tuple(next(counter) for _ in range(k))

    layout = GadgetLayout(
        h,
        tuple(take(h) for _ in range(x)),
        tuple(take(m - h + 1) for _ in range(y)),
        tuple(take(h) for _ in range(y)),
    )
    return QGadget(params, layout, Graph(n, layout.edges()))

