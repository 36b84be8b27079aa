from __future__ import annotations

import functools
from importlib.metadata import entry_points

from .base import Subcommand
from .experiments import BisectSubcommand, SweepSubcommand, TableSubcommand
from .graphs import GenSubcommand, SolveSubcommand
from .structure import PartitionSubcommand, RegcheckSubcommand
from .tiling import BalanceSubcommand, TileSubcommand

ENTRY_POINT_GROUP = "perturbed_factors.subcommands"


@functools.lru_cache
def get_subcommands() -> dict[str, Subcommand]:
    # All built-in subcommands
    commands: dict[str, Subcommand] = {
        cls.name: cls()
        for cls in (
            GenSubcommand,
            SolveSubcommand,
            TileSubcommand,
            BalanceSubcommand,
            PartitionSubcommand,
            RegcheckSubcommand,
            SweepSubcommand,
            BisectSubcommand,
            TableSubcommand,
        )
    }

    # Load any subcommands specified via entry points
    for ep in entry_points(group=ENTRY_POINT_GROUP):
        name = ep.name
        cls = ep.load()
        if name in commands:
            raise RuntimeError(
                f"A plugin for 'perturbed-factors' tried to load subcommand '{name}' but it already exists"
            )
        if not (isinstance(cls, type) and issubclass(cls, Subcommand)):
            raise RuntimeError(
                f"A plugin for 'perturbed-factors' tried to load subcommand '{name}' but it is not a Subcommand class"
            )
        cmd = cls()
        cmd.name = name
        commands[name] = cmd

    return commands
