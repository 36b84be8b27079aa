from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum

from ..gadgets.qgadget import GadgetLayout
from ..graph import Graph
from ..params import RParams, Variant
from ..utils import mask_of


class PieceKind(Enum):
    CLIQUE = "K"
    GADGET = "Q"


@dataclass(frozen=True)
class Piece:
    kind: PieceKind
    #: clique size for Clique(i), gadget index for Gadget(h)
    order: int
    vertices: tuple[int, ...]
    layout: GadgetLayout | None = None

    @classmethod
    def clique(cls, vertices: Iterable[int]) -> Piece:
        verts = tuple(sorted(vertices))
        return cls(PieceKind.CLIQUE, len(verts), verts)

    @classmethod
    def gadget(cls, layout: GadgetLayout) -> Piece:
        return cls(PieceKind.GADGET, layout.h, layout.vertices, layout)

    @property
    def is_clique(self) -> bool:
        return self.kind is PieceKind.CLIQUE

    @property
    def mask(self) -> int:
        return mask_of(self.vertices)

    @property
    def label(self) -> str:
        return f"{self.kind.value}{self.order}"

    def describe(self) -> dict[str, object]:
        if self.layout is None:
            return {"kind": self.label, "vertices": list(self.vertices)}
        return {
            "kind": self.label,
            "L": [list(x) for x in self.layout.l_sets],
            "M": [list(x) for x in self.layout.m_sets],
            "N": [list(x) for x in self.layout.n_sets],
        }


@dataclass(frozen=True, order=True)
class IndexVector:
    """``(phi_{m+1}, phi_m, q_m, ..., phi_1, q_1)``, compared lexicographically."""

    values: tuple[int, ...]

    @classmethod
    def from_counts(cls, params: RParams, k: Counter[int], q: Counter[int]) -> IndexVector:
        m, s, t = params.m, params.s, params.t
        top = k[m + 1] + sum(((m - h) * s + t) * q[h] for h in range(1, m + 1))
        values = [top]
        for h in range(m, 0, -1):
            values.append(k[h] + (s - t) * q[h])
            values.append(q[h])
        return cls(tuple(values))

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.values)) + ")"


@dataclass
class PFactor:
    """
    Vertex-disjoint pieces covering the whole host: cliques ``K_1..K_{m+1}``
    and gadgets ``Q_1..Q_m``.
    """

    host: Graph
    params: RParams
    pieces: list[Piece] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.params.require(Variant.GADGET)

    def counts(self) -> tuple[Counter[int], Counter[int]]:
        k: Counter[int] = Counter()
        q: Counter[int] = Counter()
        for p in self.pieces:
            (k if p.is_clique else q)[p.order] += 1
        return k, q

    def cliques(self, size: int) -> list[Piece]:
        return [p for p in self.pieces if p.is_clique and p.order == size]

    def gadgets(self, h: int | None = None) -> list[Piece]:
        return [p for p in self.pieces if not p.is_clique and (h is None or p.order == h)]

    def vertices_in_cliques(self, sizes: Iterable[int]) -> tuple[int, ...]:
        wanted = set(sizes)
        return tuple(sorted(v for p in self.pieces if p.is_clique and p.order in wanted for v in p.vertices))

    def replace(self, removed: Sequence[Piece], added: Sequence[Piece]) -> None:
        gone = list(removed)
        kept = []
        for p in self.pieces:
            if p in gone:
                gone.remove(p)
            else:
                kept.append(p)
        if gone:
            raise ValueError(f"pieces not in factor: {[g.label for g in gone]}")
        self.pieces = kept + [p for p in added if p.vertices]

    def check(self) -> list[str]:
        """Disjointness, full coverage and that every piece spans its claimed graph."""
        problems = []
        seen = 0
        m = self.params.m
        for p in self.pieces:
            if p.mask & seen:
                problems.append(f"{p.label} on {list(p.vertices)} overlaps an earlier piece")
            seen |= p.mask
            if p.is_clique:
                if not 1 <= p.order <= m + 1 or len(p.vertices) != p.order:
                    problems.append(f"clique piece {list(p.vertices)} has invalid size {p.order}")
                elif not self.host.is_clique(p.vertices):
                    problems.append(f"{p.label} on {list(p.vertices)} is not a clique in the host")
            else:
                assert p.layout is not None
                problems.extend(f"{p.label}: {msg}" for msg in p.layout.check(self.params, self.host))
        if seen != self.host.all_mask:
            problems.append(f"pieces cover {seen.bit_count()} of {self.host.n} vertices")
        return problems

    def copy(self) -> PFactor:
        return PFactor(self.host, self.params, list(self.pieces))


def compute_index(f: PFactor) -> IndexVector:
    k, q = f.counts()
    return IndexVector.from_counts(f.params, k, q)


def init_trivial(host: Graph, params: RParams) -> PFactor:
    """Every vertex in its own ``K_1``."""
    return PFactor(host, params, [Piece.clique((v,)) for v in host.vertices])
