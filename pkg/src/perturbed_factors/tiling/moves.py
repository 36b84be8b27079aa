"""
Index-increasing improvement moves on a :class:`PFactor`.

Each move inspects the factor and returns a :class:`Move` (the pieces to
remove and the pieces to add) or ``None``. Moves never mutate the factor;
the engine applies them. Candidates are scanned in a fixed order so runs are
reproducible.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from ..gadgets.qgadget import GadgetLayout, VertexSet
from ..graph import enumerate_cliques
from ..utils import mask_of
from .pieces import Piece, PFactor

logger = logging.getLogger(__name__)

#: Pieces considered per side when looking for a gadget to assemble.
PIECE_CAP = 40
#: Cliques inspected among the Z-vertices by the matching swap.
SWAP_CLIQUE_LIMIT = 500


@dataclass(frozen=True)
class Move:
    name: str
    removed: tuple[Piece, ...]
    added: tuple[Piece, ...]


@dataclass(frozen=True)
class _Slot:
    """An L- or N-set of a placed gadget, with the M-sets it is joined to."""

    piece: Piece
    side: str
    index: int
    vertices: VertexSet
    joined: int

    @property
    def key(self) -> tuple[VertexSet, str, int]:
        return self.piece.vertices, self.side, self.index


def _slots(piece: Piece) -> list[_Slot]:
    layout = piece.layout
    assert layout is not None
    all_m = mask_of(v for ms in layout.m_sets for v in ms)
    out = [_Slot(piece, "L", i, ls, all_m) for i, ls in enumerate(layout.l_sets)]
    out.extend(_Slot(piece, "N", k, ns, mask_of(layout.m_sets[k])) for k, ns in enumerate(layout.n_sets))
    return out


def _complete_to(f: PFactor, v: int, target: int) -> bool:
    return f.host.mask(v) & target == target


def _dissolve(layout: GadgetLayout, slot_side: str, slot_index: int) -> list[Piece]:
    """
    Cliques left behind once one L- or N-set leaves the gadget: every intact
    (M, N) pair becomes ``K_{m+1}`` and every intact L-set a ``K_h``. When an
    N-set leaves, its M-set is completed by the first L-set instead.
    """
    out: list[Piece] = []
    l_sets = list(layout.l_sets)
    if slot_side == "L":
        del l_sets[slot_index]
        out.extend(Piece.clique(ms + ns) for ms, ns in zip(layout.m_sets, layout.n_sets))
    else:
        for k, (ms, ns) in enumerate(zip(layout.m_sets, layout.n_sets)):
            out.append(Piece.clique(ms + (l_sets.pop(0) if k == slot_index else ns)))
    out.extend(Piece.clique(ls) for ls in l_sets)
    return out


# ------------------------
# Merge and shift
# ------------------------
def move_merge_to_Qm(f: PFactor) -> Move | None:
    """Fold ``s`` copies of ``K_m`` into one ``Q_m`` (only when ``t = 0``)."""
    m, s, t = f.params.m, f.params.s, f.params.t
    if t != 0:
        return None
    cliques = f.cliques(m)
    if len(cliques) < s:
        return None
    chosen = tuple(cliques[:s])
    layout = GadgetLayout(m, tuple(p.vertices for p in chosen))
    return Move("merge", chosen, (Piece.gadget(layout),))


def move_shift_vertex(f: PFactor) -> Move | None:
    """Move a vertex of a ``K_j`` into a ``K_h`` it is complete to, ``j <= h``."""
    m, t = f.params.m, f.params.t
    for h in range(m, 0, -1):
        if h == m and t == 0:
            continue
        targets = f.cliques(h)
        if not targets:
            continue
        for j in range(1, h + 1):
            for src in f.cliques(j):
                for tgt in targets:
                    if tgt == src:
                        continue
                    for x in src.vertices:
                        if _complete_to(f, x, tgt.mask):
                            rest = tuple(v for v in src.vertices if v != x)
                            return Move(
                                "shift",
                                (src, tgt),
                                (Piece.clique(rest), Piece.clique((*tgt.vertices, x))),
                            )
    return None


# ------------------------
# Breaking a gadget
# ------------------------
def move_break_gadget(f: PFactor) -> Move | None:
    """
    Dissolve a gadget around a clique piece ``K_j``.

    For ``h >= j``, a vertex of ``K_j`` complete to an L- or N-set ``U`` of a
    ``Q_h`` joins ``U`` as a ``K_{h+1}``. For ``h < j``, an L- or N-vertex
    complete to ``K_j`` joins it as a ``K_{j+1}``.
    """
    m = f.params.m
    for j in range(1, m + 1):
        for src in f.cliques(j):
            for gadget in f.gadgets():
                assert gadget.layout is not None
                h = gadget.order
                for slot in _slots(gadget):
                    rest = _dissolve(gadget.layout, slot.side, slot.index)
                    if h >= j:
                        umask = mask_of(slot.vertices)
                        for x in src.vertices:
                            if _complete_to(f, x, umask):
                                left = tuple(v for v in src.vertices if v != x)
                                added = (Piece.clique((*slot.vertices, x)), *rest, Piece.clique(left))
                                return Move("break", (src, gadget), added)
                    else:
                        for y in slot.vertices:
                            if _complete_to(f, y, src.mask):
                                left = tuple(v for v in slot.vertices if v != y)
                                added = (Piece.clique((*src.vertices, y)), *rest, Piece.clique(left))
                                return Move("break", (src, gadget), added)
    return None


# ------------------------
# Assembling a gadget
# ------------------------
def _pick(
    options: Sequence[Sequence[tuple[int, object]]], n_left: int, x: int, y: int
) -> tuple[tuple[int, ...], list[tuple[int, object]]] | None:
    """
    Choose ``x`` left items and ``y`` right items such that every chosen right
    item has an option whose left mask contains all chosen left items.

    ``options[i]`` lists ``(left_mask, payload)`` for right item ``i``. Returns
    the left indices and ``(right_index, payload)`` per chosen right item.
    """
    if y == 0 or len(options) < y:
        return None
    support = [0] * n_left
    for opts in options:
        seen = 0
        for lm, _ in opts:
            seen |= lm
        for i in range(n_left):
            support[i] += seen >> i & 1
    usable = [i for i in range(n_left) if support[i] >= y]
    for left in combinations(usable, x):
        need = mask_of(left)
        picked: list[tuple[int, object]] = []
        for ri, opts in enumerate(options):
            for lm, payload in opts:
                if lm & need == need:
                    picked.append((ri, payload))
                    break
            if len(picked) == y:
                return left, picked
    return None


def _left_mask(f: PFactor, lefts: Sequence[Piece], target: Sequence[int]) -> int:
    common = f.host.common_mask(target)
    lm = 0
    for i, p in enumerate(lefts):
        if common & p.mask == p.mask:
            lm |= 1 << i
    return lm


def move_form_Qj_from_cliques(f: PFactor) -> Move | None:
    """
    Build a ``Q_j`` from ``s - t`` copies of ``K_j`` (the L-sets) and
    ``(m - j)s + t`` copies of ``K_{m+1}``, each split into an M-set complete
    to every chosen ``K_j`` and an N-set of size ``j``.
    """
    m, s, t = f.params.m, f.params.s, f.params.t
    rights = f.cliques(m + 1)[:PIECE_CAP]
    for j in range(1, m + 1):
        x, y = s - t, (m - j) * s + t
        lefts = f.cliques(j)[:PIECE_CAP]
        if y == 0 or len(lefts) < x or len(rights) < y:
            continue
        options = []
        for p in rights:
            opts = []
            for ms in combinations(p.vertices, m + 1 - j):
                lm = _left_mask(f, lefts, ms)
                if lm:
                    opts.append((lm, ms))
            options.append(opts)
        found = _pick(options, len(lefts), x, y)
        if found is None:
            continue
        left, picked = found
        m_sets: list[VertexSet] = []
        n_sets: list[VertexSet] = []
        used = []
        for ri, payload in picked:
            ms = payload
            assert isinstance(ms, tuple)
            used.append(rights[ri])
            m_sets.append(ms)
            n_sets.append(tuple(v for v in rights[ri].vertices if v not in ms))
        l_pieces = [lefts[i] for i in left]
        layout = GadgetLayout(j, tuple(p.vertices for p in l_pieces), tuple(m_sets), tuple(n_sets))
        return Move("form-cliques", (*l_pieces, *used), (Piece.gadget(layout),))
    return None


def move_form_Qj_from_Qh(f: PFactor) -> Move | None:
    """
    Build a ``Q_j`` from ``s - t`` copies of ``K_j`` and ``(m - j)s + t``
    gadgets ``Q_h`` with ``h < j``.

    From each gadget one pair ``(M_i, N_i)`` is rewired: ``M_i = C + D`` with
    ``C`` complete to every chosen ``K_j`` becomes the new M-set and
    ``D + N_i`` the new N-set. The gadget's other pairs become ``K_{m+1}`` and
    its L-sets become ``K_h``.
    """
    m, s, t = f.params.m, f.params.s, f.params.t
    for j in range(2, m + 1):
        x, y = s - t, (m - j) * s + t
        lefts = f.cliques(j)[:PIECE_CAP]
        if y == 0 or len(lefts) < x:
            continue
        for h in range(1, j):
            gadgets = f.gadgets(h)[:PIECE_CAP]
            if len(gadgets) < y:
                continue
            options = []
            for g in gadgets:
                assert g.layout is not None
                opts = []
                for i, ms in enumerate(g.layout.m_sets):
                    for c in combinations(ms, m - j + 1):
                        lm = _left_mask(f, lefts, c)
                        if lm:
                            opts.append((lm, (i, c)))
                options.append(opts)
            found = _pick(options, len(lefts), x, y)
            if found is None:
                continue
            left, picked = found
            m_sets: list[VertexSet] = []
            n_sets: list[VertexSet] = []
            used: list[Piece] = []
            added: list[Piece] = []
            for gi, payload in picked:
                g = gadgets[gi]
                assert g.layout is not None and isinstance(payload, tuple)
                i, c = payload
                used.append(g)
                m_sets.append(c)
                d = tuple(v for v in g.layout.m_sets[i] if v not in c)
                n_sets.append(tuple(sorted(d + g.layout.n_sets[i])))
                for k, (ms, ns) in enumerate(zip(g.layout.m_sets, g.layout.n_sets)):
                    if k != i:
                        added.append(Piece.clique(ms + ns))
                added.extend(Piece.clique(ls) for ls in g.layout.l_sets)
            l_pieces = [lefts[i] for i in left]
            layout = GadgetLayout(j, tuple(p.vertices for p in l_pieces), tuple(m_sets), tuple(n_sets))
            return Move("form-gadgets", (*l_pieces, *used), (Piece.gadget(layout), *added))
    return None


# ------------------------
# Matching swap
# ------------------------
def h_neighbours(f: PFactor, j: int) -> dict[int, tuple[list[int], _Slot]]:
    """
    The auxiliary graph between ``A_j`` (vertices of ``K_j`` pieces) and the
    L/N-vertices of gadgets ``Q_h``, ``h`` in ``[j, m]``: ``x`` is joined to
    ``y`` when ``x`` misses ``y`` but could take its place in the gadget.

    Keyed by the gadget vertex ``y``; only vertices with at least one
    neighbour are listed.
    """
    a_j = f.vertices_in_cliques((j,))
    out: dict[int, tuple[list[int], _Slot]] = {}
    if not a_j:
        return out
    for gadget in f.gadgets():
        if gadget.order < j:
            continue
        for slot in _slots(gadget):
            umask = mask_of(slot.vertices)
            for yv in slot.vertices:
                need = (umask & ~(1 << yv)) | slot.joined
                xs = [xv for xv in a_j if not f.host.adjacent(xv, yv) and _complete_to(f, xv, need)]
                if xs:
                    out[yv] = (xs, slot)
    return out


def z_vertices(f: PFactor, j: int) -> tuple[int, ...]:
    """Gadget L/N-vertices with at least ``j + 1`` auxiliary neighbours."""
    return tuple(sorted(y for y, (xs, _) in h_neighbours(f, j).items() if len(xs) >= j + 1))


def _match(
    ys: Sequence[int], hn: dict[int, tuple[list[int], _Slot]], owner: dict[int, Piece]
) -> list[int] | None:
    """One auxiliary neighbour per ``y``, all taken from distinct ``K_j`` pieces."""
    b = nx.Graph()
    left = [("y", y) for y in ys]
    b.add_nodes_from(left, bipartite=0)
    for y in ys:
        for xv in hn[y][0]:
            b.add_edge(("y", y), ("piece", owner[xv].vertices))
    matching = nx.bipartite.hopcroft_karp_matching(b, top_nodes=left)
    chosen = []
    for y in ys:
        mate = matching.get(("y", y))
        if mate is None:
            return None
        key = mate[1]
        chosen.append(next(xv for xv in hn[y][0] if owner[xv].vertices == key))
    return chosen


def _swap_layout(layout: GadgetLayout, swaps: dict[tuple[str, int], tuple[int, int]]) -> GadgetLayout:
    def swapped(side: str, sets: tuple[VertexSet, ...]) -> tuple[VertexSet, ...]:
        out = []
        for i, part in enumerate(sets):
            if (side, i) in swaps:
                y, x = swaps[side, i]
                part = tuple(sorted(x if v == y else v for v in part))
            out.append(part)
        return tuple(out)

    return GadgetLayout(layout.h, swapped("L", layout.l_sets), layout.m_sets, swapped("N", layout.n_sets))


def move_matching_swap(f: PFactor) -> Move | None:
    """
    Free a ``K_{j+1}`` sitting on Z-vertices in distinct gadget slots by
    swapping a matched ``K_j``-vertex into each of their places.
    """
    m = f.params.m
    for j in range(1, m + 1):
        hn = h_neighbours(f, j)
        z = [y for y, (xs, _) in sorted(hn.items()) if len(xs) >= j + 1]
        if len(z) < j + 1:
            continue
        owner = {v: p for p in f.cliques(j) for v in p.vertices}
        for ys in enumerate_cliques(f.host, j + 1, within=z, limit=SWAP_CLIQUE_LIMIT):
            if len({hn[y][1].key for y in ys}) < len(ys):
                continue
            xs = _match(ys, hn, owner)
            if xs is None:
                continue

            per_gadget: dict[tuple[int, ...], dict[tuple[str, int], tuple[int, int]]] = {}
            gadgets: dict[tuple[int, ...], Piece] = {}
            for y, xv in zip(ys, xs):
                slot = hn[y][1]
                gadgets[slot.piece.vertices] = slot.piece
                per_gadget.setdefault(slot.piece.vertices, {})[slot.side, slot.index] = (y, xv)
            removed: list[Piece] = list(gadgets.values())
            added: list[Piece] = []
            for key, piece in gadgets.items():
                assert piece.layout is not None
                added.append(Piece.gadget(_swap_layout(piece.layout, per_gadget[key])))
            for xv in xs:
                src = owner[xv]
                removed.append(src)
                added.append(Piece.clique(v for v in src.vertices if v != xv))
            added.append(Piece.clique(ys))
            logger.debug("matching swap frees K_%d on %s", j + 1, list(ys))
            return Move("matching-swap", tuple(removed), tuple(added))
    return None


MoveFn = Callable[[PFactor], Move | None]

#: Move names in their default application order.
MOVES: dict[str, MoveFn] = {
    "merge": move_merge_to_Qm,
    "shift": move_shift_vertex,
    "break": move_break_gadget,
    "form-cliques": move_form_Qj_from_cliques,
    "form-gadgets": move_form_Qj_from_Qh,
    "matching-swap": move_matching_swap,
}
DEFAULT_MOVE_ORDER: tuple[str, ...] = tuple(MOVES)
