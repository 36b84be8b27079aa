"""Tests for P-factors, the improvement moves and the cover / independent-set dichotomy."""

from collections.abc import Callable
from fractions import Fraction

import pytest

from perturbed_factors.errors import ParameterError, ValidationError
from perturbed_factors.gadgets import PackingMode, verify_packing
from perturbed_factors.graph import Graph, gen_complete
from perturbed_factors.params import RParams
from perturbed_factors.tiling import (
    Branch,
    IndexVector,
    PFactor,
    Piece,
    PieceKind,
    compute_index,
    greedy_independent_set,
    init_trivial,
    move_merge_to_Qm,
    move_shift_vertex,
    pfactor_to_cert,
    run_dichotomy,
    run_local_search,
    trace_to_json,
)
from perturbed_factors.validate import validate_pfactor


# ===========================================================================
# P-factors and the index
# ===========================================================================
class TestPFactor:
    """Bookkeeping of pieces and the lexicographic index."""

    def test_trivial_factor(self) -> None:
        """All singletons: only phi_1 is nonzero."""
        f = init_trivial(gen_complete(5), RParams.gadget(2, 2, 1))
        assert len(f.pieces) == 5
        assert f.check() == []
        assert compute_index(f) == IndexVector((0, 0, 0, 5, 0))

    def test_index_order_is_lexicographic(self) -> None:
        """A higher leading entry wins regardless of the tail."""
        assert IndexVector((1, 0, 0)) > IndexVector((0, 9, 9))
        assert str(IndexVector((1, 2))) == "(1, 2)"

    def test_gadget_counts_towards_top_entry(self) -> None:
        """A Q_1 counts y copies of K_{m+1} at the top and x at phi_1."""
        params = RParams.gadget(2, 2, 1)
        f = PFactor(gen_complete(10), params)
        k, q = f.counts()
        q[1] = 1
        assert IndexVector.from_counts(params, k, q).values == (3, 0, 0, 1, 1)

    def test_overlap_is_reported(self) -> None:
        """Overlapping pieces fail validation."""
        f = PFactor(gen_complete(3), RParams.gadget(1, 2, 1), [Piece.clique((0, 1)), Piece.clique((1, 2))])
        with pytest.raises(ValidationError, match="overlaps"):
            validate_pfactor(f)

    def test_missing_edge_and_coverage(self, make_graph: Callable[..., Graph]) -> None:
        """A claimed clique must be one and every vertex must be covered."""
        f = PFactor(make_graph(3, [(0, 1)]), RParams.gadget(1, 2, 1), [Piece.clique((0, 2))])
        problems = f.check()
        assert any("not a clique" in p for p in problems)
        assert any("cover 2 of 3" in p for p in problems)

    def test_replace_rejects_foreign_pieces(self) -> None:
        """Only pieces of the factor can be removed."""
        f = init_trivial(gen_complete(3), RParams.gadget(1, 2, 1))
        with pytest.raises(ValueError, match="not in factor"):
            f.replace([Piece.clique((0, 1))], [])

    def test_absorber_parameters_are_refused(self) -> None:
        """P-factors live in the gadget variant."""
        with pytest.raises(ParameterError, match="gadget parameters"):
            PFactor(gen_complete(3), RParams.absorber(1, 2, 1))


# ===========================================================================
# Moves
# ===========================================================================
class TestMoves:
    """Individual moves on hand-built factors."""

    def test_shift_builds_an_edge(self) -> None:
        """A singleton joins another singleton it is adjacent to."""
        f = init_trivial(gen_complete(3), RParams.gadget(1, 2, 1))
        move = move_shift_vertex(f)
        assert move is not None
        assert move.name == "shift"
        assert Piece.clique((0, 1)) in move.added

    def test_merge_needs_t_zero(self) -> None:
        """s copies of K_m fold into Q_m only when t = 0."""
        params = RParams.gadget(2, 2, 0)
        f = PFactor(gen_complete(4), params, [Piece.clique((0, 1)), Piece.clique((2, 3))])
        move = move_merge_to_Qm(f)
        assert move is not None
        (gadget,) = move.added
        assert gadget.kind is PieceKind.GADGET
        assert gadget.order == 2
        assert gadget.layout is not None
        assert gadget.layout.l_sets == ((0, 1), (2, 3))

        other = PFactor(gen_complete(4), RParams.gadget(1, 3, 1), [Piece.clique((0,)), Piece.clique((1, 2, 3))])
        assert move_merge_to_Qm(other) is None


# ===========================================================================
# Local search
# ===========================================================================
class TestLocalSearch:
    """Index climbing from the all-singleton factor."""

    def test_complete_graph_is_tiled_perfectly(self) -> None:
        """K_6 with m = 1 ends in three edges."""
        result = run_local_search(gen_complete(6), RParams.gadget(1, 2, 1), validate_steps=True)
        assert not result.step_limit_hit
        assert result.factor.check() == []
        assert len(result.factor.cliques(2)) == 3
        assert result.index.values[0] == 3

    def test_trace_is_strictly_increasing(self, extremal: Callable[..., Graph]) -> None:
        """Every recorded move raises the index."""
        result = run_local_search(extremal(20, "3/5"), RParams.gadget(2, 2, 1))
        assert result.trace
        for entry in result.trace:
            assert entry.index_after > entry.index_before
        doc = trace_to_json(result.trace)
        assert [e["step"] for e in doc] == list(range(len(result.trace)))

    def test_step_limit_is_flagged(self) -> None:
        """A zero step limit stops before the first move."""
        result = run_local_search(gen_complete(6), RParams.gadget(1, 2, 1), step_limit=0)
        assert result.step_limit_hit
        assert result.trace == []

    def test_unknown_move(self) -> None:
        """Move names come from the registry."""
        with pytest.raises(ParameterError, match="unknown move 'teleport'"):
            run_local_search(gen_complete(3), RParams.gadget(1, 2, 1), move_order=["teleport"])

    def test_greedy_independent_set(self, extremal: Callable[..., Graph]) -> None:
        """The independent part of an extremal host is found."""
        g = extremal(12, "2/3")
        assert greedy_independent_set(g, range(12)) == (0, 1, 2, 3)
        assert greedy_independent_set(g, [4, 5, 6]) in {(4,), (5,), (6,)}


# ===========================================================================
# Dichotomy
# ===========================================================================
class TestDichotomy:
    """Either an almost-perfect tiling or a large independent set."""

    def test_dense_extremal_host_is_covered(self, extremal: Callable[..., Graph]) -> None:
        """alpha = 3/5 with r = 5, s = 2 leaves few vertices outside K_3 and gadgets."""
        params = RParams.gadget(2, 2, 1)
        result = run_dichotomy(extremal(20, "3/5"), params)
        assert result.branch is Branch.COVER
        assert len(result.leftover) <= result.stage_report["c_cap"]
        assert verify_packing(pfactor_to_cert(result.factor), PackingMode.PACKING).ok

    def test_sparse_extremal_host_yields_independent_set(self, extremal: Callable[..., Graph]) -> None:
        """alpha = 1/2 with a tight cap falls to the independent-set branch."""
        g = extremal(20, "1/2")
        result = run_dichotomy(g, RParams.gadget(2, 2, 1), c_cap=1)
        assert result.branch is Branch.INDEPENDENT_SET
        assert g.is_independent(result.independent_set)
        assert len(result.independent_set) >= (Fraction(2, 5) - Fraction(1, 20)) * 20
        assert result.stage_report["meets_bound"] is True

    def test_parameter_checks(self) -> None:
        """gamma lies in (0, 1) and the cap is nonnegative."""
        g = gen_complete(4)
        with pytest.raises(ParameterError, match="gamma"):
            run_dichotomy(g, RParams.gadget(1, 2, 1), gamma=0)
        with pytest.raises(ParameterError, match="C_cap"):
            run_dichotomy(g, RParams.gadget(1, 2, 1), c_cap=-1)
