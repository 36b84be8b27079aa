from .leftover import LeftoverAssignment, distribute_leftover, good_groups
from .partition import (
    HPartition,
    PartitionConstants,
    PropertyCheck,
    PropertyReport,
    check_properties,
    check_star_properties,
    exceptional_sets,
    missing_edges,
    sparse_size,
    sparse_threshold,
)
from .refine import (
    CleanupResult,
    PartitionSearch,
    PartitionStep,
    Shift,
    SplitOutcome,
    cleanup_v_vi,
    find_partition,
    refine_split,
)
from .sparse import EXACT_LIMIT, improve_by_swaps, sparse_subset_heuristic, sparsest_subset

__all__ = [
    "EXACT_LIMIT",
    "CleanupResult",
    "HPartition",
    "LeftoverAssignment",
    "PartitionConstants",
    "PartitionSearch",
    "PartitionStep",
    "PropertyCheck",
    "PropertyReport",
    "Shift",
    "SplitOutcome",
    "check_properties",
    "check_star_properties",
    "cleanup_v_vi",
    "distribute_leftover",
    "exceptional_sets",
    "find_partition",
    "good_groups",
    "improve_by_swaps",
    "missing_edges",
    "refine_split",
    "sparse_size",
    "sparse_subset_heuristic",
    "sparse_threshold",
    "sparsest_subset",
]
