"""
Fractional packings of weighted graphs and the explicit ``T``-factors of the
gadgets.

All arithmetic is on :class:`fractions.Fraction`; nothing in this module ever
touches floating point.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from ..errors import ParameterError
from ..graph import Graph, gen_complete
from ..params import RParams, Variant
from ..utils import lcm_all
from .qgadget import GadgetLayout, build_Q, gadget_shape
from .weighted import WeightedGraph, build_T, scale

logger = logging.getLogger(__name__)


class PackingMode(Enum):
    PACKING = "packing"
    FACTOR = "factor"


@dataclass(frozen=True)
class PackedPiece:
    piece: WeightedGraph
    #: host vertex of every piece vertex, indexed by piece vertex
    embedding: tuple[int, ...]
    #: free-form grouping label, e.g. the (L-set, (M, N)-pair) indices of a gadget
    group: tuple[int, ...] = ()


@dataclass
class PackingCert:
    host: Graph
    pieces: list[PackedPiece] = field(default_factory=list)

    def accumulated_weights(self, group: tuple[int, ...] | None = None) -> list[Fraction]:
        """Total weight landing on every host vertex, optionally from one group only."""
        acc = [Fraction(0)] * self.host.n
        for p in self.pieces:
            if group is not None and p.group != group:
                continue
            for pv, hv in enumerate(p.embedding):
                acc[hv] += p.piece.weights[pv]
        return acc

    @property
    def weights(self) -> list[Fraction]:
        return self.accumulated_weights()

    def residue(self) -> Fraction:
        return sum((1 - w for w in self.weights), Fraction(0))


@dataclass(frozen=True)
class PackingReport:
    ok: bool
    mode: PackingMode
    message: str = ""
    vertex: int | None = None
    piece_index: int | None = None
    edge: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_packing(cert: PackingCert, mode: PackingMode = PackingMode.FACTOR) -> PackingReport:
    """
    Check a certificate and report the first offending piece, edge or vertex.

    Zero-weight piece vertices carry no mass, so they are exempt from the
    injectivity and edge-preservation checks.
    """
    host = cert.host
    for idx, p in enumerate(cert.pieces):
        g = p.piece.graph
        if len(p.embedding) != g.n:
            return PackingReport(False, mode, f"piece {idx} maps {len(p.embedding)} of {g.n} vertices", piece_index=idx)
        live = [v for v in g.vertices if p.piece.weights[v] > 0]
        images = [p.embedding[v] for v in live]
        for hv in images:
            if not 0 <= hv < host.n:
                return PackingReport(False, mode, f"piece {idx} maps to missing vertex {hv}", vertex=hv, piece_index=idx)
        if len(set(images)) != len(images):
            return PackingReport(False, mode, f"embedding of piece {idx} is not injective", piece_index=idx)
        live_set = set(live)
        for u, v in g.edges():
            if u in live_set and v in live_set and not host.adjacent(p.embedding[u], p.embedding[v]):
                edge = (p.embedding[u], p.embedding[v])
                return PackingReport(False, mode, f"piece {idx} edge maps to non-edge {edge}", piece_index=idx, edge=edge)

    for v, w in enumerate(cert.weights):
        if w > 1:
            return PackingReport(False, mode, f"vertex {v} accumulates weight {w} > 1", vertex=v)
        if mode is PackingMode.FACTOR and w != 1:
            return PackingReport(False, mode, f"vertex {v} accumulates weight {w} != 1", vertex=v)
    return PackingReport(True, mode)


# ---------------------------------------------------------------------------
# Gadget constants
# ---------------------------------------------------------------------------
def q_h_constant(params: RParams, h: int) -> Fraction:
    """Scale ``q_h`` for which ``Q_h`` has a ``(q_h ⋉ T)``-factor."""
    x, y = gadget_shape(params, h)
    if params.t == 0 and h == params.m:
        return Fraction(1)
    return Fraction(params.r, params.s * (params.m - h + 1) * x * y)


def common_denominator_b(params: RParams) -> int:
    params.require(Variant.GADGET)
    return lcm_all(q_h_constant(params, h).denominator for h in range(1, params.m + 1))


# ---------------------------------------------------------------------------
# Explicit T-embeddings
# ---------------------------------------------------------------------------
# (scale, T-embedding as sigma images followed by the tau image, group)
_Placement = tuple[Fraction, tuple[int, ...], tuple[int, ...]]


def _clique_placements(clique: Sequence[int]) -> list[_Placement]:
    """``m+1`` copies of ``T`` on a ``K_{m+1}``, each with a different tau image."""
    out = []
    for i, tau in enumerate(clique):
        sigmas = tuple(clique[:i]) + tuple(clique[i + 1 :])
        out.append((Fraction(1), (*sigmas, tau), ()))
    return out


def _gadget_placements(params: RParams, layout: GadgetLayout) -> list[_Placement]:
    m, h = params.m, layout.h
    if params.t == 0 and h == m:
        # s disjoint K_m; tau has weight 0 and is parked on the first vertex
        parked = layout.l_sets[0][0]
        out = []
        for i, clique in enumerate(layout.l_sets):
            for rot in range(m):
                sigmas = tuple(clique[(k + rot) % m] for k in range(m))
                out.append((Fraction(1), (*sigmas, parked), (i,)))
        return out

    q = q_h_constant(params, h)
    q1, q2 = layout.x * q, layout.y * q
    out = []
    for i, ls in enumerate(layout.l_sets):
        for j, (ms, ns) in enumerate(zip(layout.m_sets, layout.n_sets)):
            for k, mk in enumerate(ms):
                rest = ms[:k] + ms[k + 1 :]
                out.append((q1, (*ls, *rest, mk), (i, j)))
                out.append((q2, (*rest, *ns, mk), (i, j)))
    return out


def _to_pieces(params: RParams, placements: Iterable[_Placement], denominator: int | None = None) -> list[PackedPiece]:
    """
    Turn placements into packed pieces. With ``denominator = b`` every
    ``q ⋉ T`` is split into ``b*q`` copies of ``(1/b) ⋉ T``.
    """
    t = build_T(params)
    cache: dict[Fraction, WeightedGraph] = {}

    def scaled(phi: Fraction) -> WeightedGraph:
        if phi not in cache:
            cache[phi] = scale(t, phi)
        return cache[phi]

    pieces = []
    for phi, emb, group in placements:
        if denominator is None:
            pieces.append(PackedPiece(scaled(phi), emb, group))
            continue
        copies = phi * denominator
        if copies.denominator != 1:
            raise ParameterError(f"scale {phi} is not a multiple of 1/{denominator}")
        unit = scaled(Fraction(1, denominator))
        pieces.extend(PackedPiece(unit, emb, group) for _ in range(int(copies)))
    return pieces


def factor_Q_with_T(params: RParams, h: int) -> PackingCert:
    """
    Exact ``(q_h ⋉ T)``-factor of ``Q_h``.

    For each L-set ``L_i`` and pair ``(M_j, N_j)`` the certificate places, for
    every ``v`` in ``M_j``, one ``(x q_h) ⋉ T`` on ``L_i + M_j`` and one
    ``(y q_h) ⋉ T`` on ``M_j + N_j``, both with the distinguished vertex on
    ``v``. Pieces are grouped by ``(i, j)``.
    """
    gadget = build_Q(params, h)
    return PackingCert(gadget.graph, _to_pieces(params, _gadget_placements(params, gadget.layout)))


def t_factor_of_clique(params: RParams) -> PackingCert:
    params.require(Variant.GADGET)
    clique = tuple(range(params.m + 1))
    return PackingCert(gen_complete(params.m + 1), _to_pieces(params, _clique_placements(clique)))


def assemble_collection_cert(
    host: Graph,
    params: RParams,
    cliques: Sequence[Sequence[int]] = (),
    gadgets: Sequence[GadgetLayout] = (),
) -> PackingCert:
    """
    ``((1/b) ⋉ T)``-packing of a vertex-disjoint collection of ``K_{m+1}`` and
    gadget copies placed in ``host``. Every vertex the collection covers ends
    with weight exactly 1.
    """
    params.require(Variant.GADGET)
    b = common_denominator_b(params)
    placements: list[_Placement] = []
    for clique in cliques:
        if len(clique) != params.m + 1:
            raise ParameterError(f"expected a K_{params.m + 1}, got {len(clique)} vertices")
        placements.extend(_clique_placements(tuple(clique)))
    for layout in gadgets:
        placements.extend(_gadget_placements(params, layout))
    pieces = _to_pieces(params, placements, denominator=b)
    logger.debug("assembled %d copies of (1/%d)-scaled T", len(pieces), b)
    return PackingCert(host, pieces)
