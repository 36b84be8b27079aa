from .ledger import AdjustmentResult, SizeLedger, realize_size_adjustment, size_adjustment_ledger
from .plans import (
    Lemma,
    MoveKind,
    MovePlan,
    PartitionTable,
    PartSizes,
    SizeMove,
    apply_plan,
    balanced_remainders,
    plan_divisibility_r,
    plan_divisibility_s_singular,
    plan_equalize,
    plan_singular_partition,
    plan_transfers,
)

__all__ = [
    "AdjustmentResult",
    "Lemma",
    "MoveKind",
    "MovePlan",
    "PartSizes",
    "PartitionTable",
    "SizeLedger",
    "SizeMove",
    "apply_plan",
    "balanced_remainders",
    "plan_divisibility_r",
    "plan_divisibility_s_singular",
    "plan_equalize",
    "plan_singular_partition",
    "plan_transfers",
    "realize_size_adjustment",
    "size_adjustment_ledger",
]
