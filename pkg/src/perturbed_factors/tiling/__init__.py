from .engine import (
    Branch,
    Dichotomy,
    LocalSearchResult,
    TraceEntry,
    default_c_cap,
    default_step_limit,
    greedy_independent_set,
    pfactor_to_cert,
    run_dichotomy,
    run_local_search,
    trace_to_json,
)
from .moves import (
    DEFAULT_MOVE_ORDER,
    MOVES,
    Move,
    h_neighbours,
    move_break_gadget,
    move_form_Qj_from_cliques,
    move_form_Qj_from_Qh,
    move_matching_swap,
    move_merge_to_Qm,
    move_shift_vertex,
    z_vertices,
)
from .pieces import IndexVector, Piece, PieceKind, PFactor, compute_index, init_trivial

__all__ = [
    "DEFAULT_MOVE_ORDER",
    "MOVES",
    "Branch",
    "Dichotomy",
    "IndexVector",
    "LocalSearchResult",
    "Move",
    "PFactor",
    "Piece",
    "PieceKind",
    "TraceEntry",
    "compute_index",
    "default_c_cap",
    "default_step_limit",
    "greedy_independent_set",
    "h_neighbours",
    "init_trivial",
    "move_break_gadget",
    "move_form_Qj_from_Qh",
    "move_form_Qj_from_cliques",
    "move_matching_swap",
    "move_merge_to_Qm",
    "move_shift_vertex",
    "pfactor_to_cert",
    "run_dichotomy",
    "run_local_search",
    "trace_to_json",
]
