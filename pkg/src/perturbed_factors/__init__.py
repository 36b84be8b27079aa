from .absorber import Absorber, build_absorber, build_pair_families, sample_absorber
from .errors import (
    BracketError,
    ConfigError,
    ExecutionError,
    FactorsError,
    FitError,
    GraphFormatError,
    ParameterError,
    SizeError,
    ValidationError,
)
from .graph import Graph, gen_extremal_host, gen_gnp, graph_union
from .harness import bisect_threshold, exponent_fit, reproduce_table_row, sweep
from .params import RParams, Variant
from .partitioner import find_partition
from .serialize import read_graph, write_graph
from .solver import FactorInstance, FactorResult, SolveMode, SolveStatus, solve_factor
from .state import ExperimentState
from .tiling import run_dichotomy

__all__ = [
    "Absorber",
    "BracketError",
    "ConfigError",
    "ExecutionError",
    "ExperimentState",
    "FactorInstance",
    "FactorResult",
    "FactorsError",
    "FitError",
    "Graph",
    "GraphFormatError",
    "ParameterError",
    "RParams",
    "SizeError",
    "SolveMode",
    "SolveStatus",
    "ValidationError",
    "Variant",
    "bisect_threshold",
    "build_absorber",
    "build_pair_families",
    "exponent_fit",
    "find_partition",
    "gen_extremal_host",
    "gen_gnp",
    "graph_union",
    "read_graph",
    "reproduce_table_row",
    "run_dichotomy",
    "sample_absorber",
    "solve_factor",
    "sweep",
    "write_graph",
]
