from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence

from ..errors import FactorsError
from .base import EXIT_FLAGGED, Subcommand
from .registry import ENTRY_POINT_GROUP, get_subcommands

__all__ = ["ENTRY_POINT_GROUP", "EXIT_FLAGGED", "Subcommand", "build_parser", "get_subcommands", "main"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perturbed-factors",
        description="Clique factors in randomly perturbed graphs: solvers, proof machinery and threshold experiments",
    )
    parser.add_argument("--seed", type=int, default=0, help="Master seed of every random choice [0]")
    parser.add_argument("--threads", type=int, default=1, help="Worker processes for Monte Carlo trials [1]")
    parser.add_argument("--out", metavar="PATH", default=None, help="Write the main output here instead of stdout")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="count", default=0, help="More logging; repeat for debug")
    verbosity.add_argument("-q", "--quiet", action="store_true", default=False, help="Only log errors")

    subparsers = parser.add_subparsers(title="subcommands", metavar="COMMAND", required=True)
    for name, cmd in get_subcommands().items():
        sub = subparsers.add_parser(name, help=cmd.short_desc, description=cmd.long_desc or cmd.short_desc)
        cmd.add_arguments(sub)
        sub.set_defaults(subcommand=cmd)
    return parser


def configure_logging(verbose: int, quiet: bool) -> None:
    if quiet:
        level = logging.ERROR
    else:
        level = max(logging.DEBUG, logging.WARNING - 10 * verbose)
    logging.basicConfig(level=level, format="%(levelname)s: %(name)s: %(message)s", stream=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    options = parser.parse_args(argv)
    configure_logging(options.verbose, options.quiet)
    cmd: Subcommand = options.subcommand
    try:
        return cmd.run(options)
    except FactorsError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
