"""Tests for the integer move planners, their replay and the size-adjustment ledger."""

import itertools

import pytest

from perturbed_factors.balancing import (
    Lemma,
    MoveKind,
    MovePlan,
    PartSizes,
    SizeMove,
    apply_plan,
    balanced_remainders,
    plan_divisibility_r,
    plan_divisibility_s_singular,
    plan_equalize,
    plan_singular_partition,
    plan_transfers,
    realize_size_adjustment,
    size_adjustment_ledger,
)
from perturbed_factors.errors import ExecutionError, ParameterError, ValidationError
from perturbed_factors.graph import gen_complete, gen_empty
from perturbed_factors.params import RParams, Variant

R5 = RParams.gadget(2, 2, 1)
SINGULAR = RParams.absorber(1, 2, 2)
R3 = RParams.from_r_s(3, 2, Variant.ABSORBER)


# ===========================================================================
# Remainders
# ===========================================================================
class TestBalancedRemainders:
    """Zero-sum representatives of minimal absolute sum."""

    @pytest.mark.parametrize(
        "sizes, modulus, expected",
        [
            ([21, 19, 20], 5, [1, -1, 0]),
            ([5, 4, 3], 2, [-1, 0, 1]),
            ([10, 10], 5, [0, 0]),
        ],
    )
    def test_representatives(self, sizes: list[int], modulus: int, expected: list[int]) -> None:
        """Largest residues are lowered first, ties by index."""
        assert balanced_remainders(sizes, modulus) == expected

    def test_indivisible_total(self) -> None:
        """The total must be a multiple of the modulus."""
        with pytest.raises(ParameterError, match="not divisible by 5"):
            balanced_remainders([3, 3], 5)


# ===========================================================================
# Planners
# ===========================================================================
class TestPlanners:
    """Each planner reaches its promised post-state."""

    def test_equalize(self) -> None:
        """Two P_1 moves bring S_1, S_2 to twice |T|."""
        sizes = PartSizes((18, 20, 12), R5)
        plan = plan_equalize(sizes)
        assert plan.feasible
        assert len(plan) == 2
        assert all(mv.kind is MoveKind.P_K and mv.removals == (1, 2, 2) for mv in plan.moves)
        assert apply_plan(sizes, plan).sizes == (16, 16, 8)

    def test_equalize_oversized_part(self) -> None:
        """A part above (s/r)M cannot be fixed by removals."""
        plan = plan_equalize(PartSizes((22, 18, 10), R5))
        assert not plan.feasible
        assert plan.failing_part == 0
        assert "exceeds" in plan.reason

    def test_equalize_outside_window(self) -> None:
        """Parts too far below target need more than epsilon M moves."""
        plan = plan_equalize(PartSizes((10, 20, 20), R5))
        assert not plan.feasible
        assert "below" in plan.reason

    def test_divisibility_by_r(self) -> None:
        """One round of P_{a,b} plus P_i for i != a reaches (15, 15, 15)."""
        sizes = PartSizes((21, 19, 20), R5)
        plan = plan_divisibility_r(sizes)
        assert [str(mv) for mv in plan.moves] == ["P_{1,2}", "P_2", "P_3"]
        assert all(mv.removed == 5 for mv in plan.moves)
        assert plan.remainder_ledger == (2, 0)
        assert apply_plan(sizes, plan).sizes == (15, 15, 15)

    def test_divisibility_by_r_overdraws_small_parts(self) -> None:
        """P_{1,2} would take two vertices from a part holding one."""
        plan = plan_divisibility_r(PartSizes((1, 2), RParams.gadget(1, 2, 1)))
        assert not plan.feasible
        assert plan.failing_part == 0
        assert plan.reason == "P_{1,2} drives U_1 to -1"

    def test_divisibility_by_r_window(self) -> None:
        """With an epsilon the parts must be near-balanced."""
        plan = plan_divisibility_r(PartSizes((40, 10, 10), R5), epsilon="1/10")
        assert not plan.feasible
        assert plan.failing_part == 0

    def test_singular_divisibility_by_s(self) -> None:
        """One P_{3,1} move makes every size even."""
        sizes = PartSizes((5, 4, 3), SINGULAR)
        plan = plan_divisibility_s_singular(sizes)
        assert [mv.removals for mv in plan.moves] == [(1, 2, 1)]
        assert apply_plan(sizes, plan).sizes == (4, 2, 2)

    def test_singular_divisibility_overdraws_small_parts(self) -> None:
        """P_{3,1} needs s vertices from an empty U_2."""
        plan = plan_divisibility_s_singular(PartSizes((1, 0, 3), SINGULAR))
        assert not plan.feasible
        assert plan.failing_part == 1
        assert plan.reason == "P_{3,1} drives U_2 to -2"

    def test_singular_planners_need_t_equal_s(self) -> None:
        """The singular planners refuse non-singular parameters."""
        with pytest.raises(ParameterError, match="singular planners"):
            plan_divisibility_s_singular(PartSizes((4, 4, 4), R5))

    def test_singular_partition(self) -> None:
        """Each U_i splits into two parts of size x_j = M/(m+1) - |U_j|."""
        table = plan_singular_partition(PartSizes((4, 4, 4), SINGULAR))
        assert table.feasible
        assert table.x == (2, 2, 2)
        assert table.rows == ((2, 2), (2, 2), (2, 2))
        assert table.part_size(0, 1) == 2
        with pytest.raises(ParameterError, match="no part"):
            table.part_size(1, 1)

    def test_singular_partition_needs_divisible_parts(self) -> None:
        """Every part must already be divisible by s."""
        table = plan_singular_partition(PartSizes((5, 4, 3), SINGULAR))
        assert not table.feasible
        assert table.failing_part == 0

    def test_transfers(self) -> None:
        """Two transfers through the largest other part."""
        sizes = PartSizes((26, 25, 29), RParams.gadget(1, 3, 1))
        plan = plan_transfers(sizes.sizes, sizes.params)
        assert [str(mv) for mv in plan.moves] == ["Transfer(2,1;3)", "Transfer(3,1;2)"]
        assert plan.remainder_ledger == (4, 2, 0)
        assert apply_plan(sizes, plan).sizes == (20, 12, 16)

    def test_transfers_modulo_r(self) -> None:
        """Residues (1, 4, 0) mod 5 need a single transfer."""
        sizes = PartSizes((1, 4, 0), R5)
        plan = plan_transfers(sizes.sizes, R5, modular=True)
        assert plan.feasible
        assert [str(mv) for mv in plan.moves] == ["Transfer(1,2;3)"]
        assert plan.moves[0].removals == (1, 4, 20)
        assert plan.remainder_ledger == (2, 0)
        assert apply_plan(sizes, plan).sizes == (0, 0, 0)

    def test_transfers_move_one_unit_each(self) -> None:
        """Residues (2, r-2, 0) need two transfers."""
        sizes = PartSizes((2, 3, 0), R5)
        plan = plan_transfers(sizes.sizes, R5, modular=True)
        assert [str(mv) for mv in plan.moves] == ["Transfer(1,2;3)", "Transfer(1,2;3)"]
        assert plan.remainder_ledger == (4, 2, 0)
        assert apply_plan(sizes, plan).sizes == (0, 0, 0)

    def test_transfers_need_an_affordable_auxiliary_part(self) -> None:
        """Read as real sizes, (1, 4, 0) has no part that can give r(r-1) vertices."""
        plan = plan_transfers((1, 4, 0), R5)
        assert not plan.feasible
        assert plan.failing_part == 2
        assert plan.reason == "Transfer(1,2;3) drives U_3 to -20"

    @pytest.mark.parametrize(
        "totals, reason",
        [
            ((4, 4), "at least three parts"),
            ((4, 4, 3), "not divisible"),
        ],
    )
    def test_transfers_infeasible(self, totals: tuple[int, ...], reason: str) -> None:
        """Too few parts or an indivisible sum."""
        plan = plan_transfers(totals, RParams.gadget(1, 3, 1))
        assert not plan.feasible
        assert reason in plan.reason


def _intermediate_sizes(sizes: tuple[int, ...], plan: MovePlan) -> list[tuple[int, ...]]:
    steps = []
    current = sizes
    for mv in plan.moves:
        current = tuple(x - d for x, d in zip(current, mv.removals))
        steps.append(current)
    return steps


class TestPlansStayNonnegative:
    """Feasible plans never overdraw a part on small instances."""

    def test_divisibility_by_r(self) -> None:
        """Every two-part instance up to 8 vertices a part, r = 3."""
        params = RParams.gadget(1, 2, 1)
        for sizes in itertools.product(range(9), repeat=2):
            if sum(sizes) % 3:
                continue
            plan = plan_divisibility_r(PartSizes(sizes, params))
            if plan.feasible:
                assert all(min(step) >= 0 for step in _intermediate_sizes(sizes, plan)), sizes
                apply_plan(PartSizes(sizes, params), plan)
            else:
                assert "drives" in plan.reason

    def test_singular_divisibility_by_s(self) -> None:
        """Every three-part instance up to 6 vertices a part, r = 4, s = 2."""
        for sizes in itertools.product(range(7), repeat=3):
            if sum(sizes) % 4:
                continue
            plan = plan_divisibility_s_singular(PartSizes(sizes, SINGULAR))
            if plan.feasible:
                assert all(min(step) >= 0 for step in _intermediate_sizes(sizes, plan)), sizes
                apply_plan(PartSizes(sizes, SINGULAR), plan)
            else:
                assert "drives" in plan.reason

    def test_transfers(self) -> None:
        """Every three-part instance up to 14 vertices a part, r = 3."""
        params = RParams.gadget(1, 2, 1)
        for sizes in itertools.product(range(15), repeat=3):
            if sum(sizes) % 3:
                continue
            plan = plan_transfers(sizes, params)
            if plan.feasible:
                assert all(min(step) >= 0 for step in _intermediate_sizes(sizes, plan)), sizes
                apply_plan(PartSizes(sizes, params), plan)
            else:
                assert "drives" in plan.reason


# ===========================================================================
# Replay
# ===========================================================================
class TestApplyPlan:
    """Replay failures carry the offending move."""

    def test_infeasible_plans_are_refused(self) -> None:
        """An infeasible plan cannot be replayed."""
        plan = MovePlan.infeasible(Lemma.EQUALIZE, "no")
        with pytest.raises(ParameterError, match="infeasible"):
            apply_plan(PartSizes((1, 1, 1), R5), plan)

    def test_negative_part(self) -> None:
        """A move driving a part below zero names its index."""
        plan = MovePlan(Lemma.TRANSFERS, (SizeMove(MoveKind.TRANSFER, (0, 1, 2), (1, 3, 12)),))
        with pytest.raises(ExecutionError) as excinfo:
            apply_plan(PartSizes((1, 3, 4), RParams.gadget(1, 3, 1)), plan)
        assert excinfo.value.move_index == 0

    def test_post_state_is_rechecked(self) -> None:
        """An empty plan on unbalanced sizes fails the divisibility check."""
        with pytest.raises(ValidationError, match="not divisible by 5"):
            apply_plan(PartSizes((21, 19, 20), R5), MovePlan(Lemma.DIVISIBILITY_R))

    def test_negative_sizes(self) -> None:
        """Part sizes are nonnegative."""
        with pytest.raises(ParameterError, match="nonnegative"):
            PartSizes((-1, 2), R5)


# ===========================================================================
# Size adjustment
# ===========================================================================
class TestSizeAdjustment:
    """Ledger bookkeeping and its realisation in a graph."""

    def test_ledger(self) -> None:
        """22 + 8 against targets 20 + 10."""
        ledger = size_adjustment_ledger([22, 8], R3, 1)
        assert ledger.g == (2, -2)
        assert ledger.signs == (1, -1)
        assert ledger.total == 2
        assert ledger.assignment == ((0, 1), (0, 1))

    def test_ledger_argument_checks(self) -> None:
        """h in range, one size per part and an order divisible by r."""
        with pytest.raises(ParameterError, match="h must lie"):
            size_adjustment_ledger([1, 2], R3, 2)
        with pytest.raises(ParameterError, match="expected 2 part sizes"):
            size_adjustment_ledger([1, 2, 3], R3, 1)
        with pytest.raises(ParameterError, match="not divisible"):
            size_adjustment_ledger([1, 3], R3, 1)

    def test_realize_in_complete_graph(self) -> None:
        """Two triangles with two vertices in the surplus part restore the targets."""
        parts = [range(22), range(22, 30)]
        result = realize_size_adjustment(gen_complete(30), parts, R3)
        assert result.ok
        assert result.cliques == ((0, 1, 2), (3, 4, 5))

    def test_realize_reports_failure(self) -> None:
        """No surplus clique exists in an edgeless host."""
        result = realize_size_adjustment(gen_empty(30), [range(22), range(22, 30)], R3)
        assert not result.ok
        assert result.failure == "A_1: only 0 cliques"
