from __future__ import annotations

import argparse
import logging

from ..errors import ConfigError
from ..graph import Graph
from ..serialize import graph_to_json, read_graph, read_vertex_list
from ..solver.factor import FactorInstance, SolveMode, SolveStatus, solve_factor
from ..validate import validate_result
from .base import Subcommand, add_host_arguments, host_spec

logger = logging.getLogger(__name__)


class GenSubcommand(Subcommand):
    name = "gen"
    short_desc = "Generate a host graph and write it as JSON"

    def add_arguments(self, arg_group: argparse.ArgumentParser) -> None:
        add_host_arguments(arg_group, allow_file=False)

    def run(self, options: argparse.Namespace) -> int:
        spec = host_spec(options)
        g = spec.build()
        logger.info("generated %s with %d edges", spec.describe(), g.edge_count)
        self.emit_json(options, graph_to_json(g))
        return 0


class SolveSubcommand(Subcommand):
    name = "solve"
    short_desc = "Search for a K_r-factor, or a factor of any small piece graph"

    _exit_codes = {SolveStatus.FOUND: 0, SolveStatus.NONE: 1, SolveStatus.TIMEOUT: 2}  # noqa: RUF012

    def add_arguments(self, arg_group: argparse.ArgumentParser) -> None:
        add_host_arguments(arg_group)
        arg_group.add_argument("--r", type=int, default=None, help="Clique size of the pieces")
        arg_group.add_argument(
            "--piece-file",
            metavar="FILE",
            default=None,
            help="JSON graph of the piece to tile with. Overrides --r.",
        )
        arg_group.add_argument(
            "--z-file",
            metavar="FILE",
            default=None,
            help="JSON list of conforming vertices; no piece may hold two of them",
        )
        arg_group.add_argument(
            "--mode",
            choices=[m.value for m in SolveMode],
            default=SolveMode.FIND.value,
            help="""'decide' only answers, 'find' also returns the pieces,
            'maximize' returns a largest partial factor [find]""",
        )
        arg_group.add_argument("--budget", type=int, default=200_000, help="Search node budget [200000]")

    def run(self, options: argparse.Namespace) -> int:
        state = self.experiment_state(options, budget=options.budget)
        host = host_spec(options).build()
        if options.piece_file is not None:
            piece: int | Graph = read_graph(options.piece_file)
        elif options.r is not None:
            piece = options.r
        else:
            raise ConfigError("give either --r or --piece-file")
        z = read_vertex_list(options.z_file) if options.z_file else []
        inst = FactorInstance(host, piece, tuple(z), SolveMode(options.mode))
        result = solve_factor(inst, state.budget)
        validate_result(inst, result)
        logger.info("%s after %d nodes", result.status.value, result.nodes)
        self.emit_json(
            options,
            {
                "status": result.status.value,
                "cliques": [list(c) for c in result.cliques],
                "covered": result.covered,
                "nodes": result.nodes,
                "optimal": result.optimal,
            },
        )
        return self._exit_codes[result.status]
