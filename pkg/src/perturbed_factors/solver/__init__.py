from .cliques import (
    GreedyOutcome,
    extend_clique_into_part,
    find_clique_in_family,
    find_clique_in_subset,
    find_Fq,
    greedy_conforming_collection,
)
from .factor import (
    FactorInstance,
    FactorResult,
    SolveMode,
    SolveStatus,
    conforming_clique_factor,
    max_partial_factor,
    solve_factor,
)

__all__ = [
    "FactorInstance",
    "FactorResult",
    "GreedyOutcome",
    "SolveMode",
    "SolveStatus",
    "conforming_clique_factor",
    "extend_clique_into_part",
    "find_Fq",
    "find_clique_in_family",
    "find_clique_in_subset",
    "greedy_conforming_collection",
    "max_partial_factor",
    "solve_factor",
]
