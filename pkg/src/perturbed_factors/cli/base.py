from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Any

from typing_extensions import Unpack

from ..errors import ConfigError
from ..harness.trials import HostKind, HostSpec
from ..serialize import dumps, write_text
from ..state import ExperimentState, ExperimentStateKwargs
from ..utils import as_fraction

#: exit code for runs that finished but raised a flag
EXIT_FLAGGED = 2


class Subcommand:
    """
    One ``perturbed-factors`` subcommand. Plugins subclass this and register
    under the ``perturbed_factors.subcommands`` entry-point group.
    """

    name: str = ""
    short_desc: str = ""
    long_desc: str | None = None

    def add_arguments(self, arg_group: argparse.ArgumentParser) -> None:
        pass

    def run(self, options: argparse.Namespace) -> int:
        raise NotImplementedError

    # ------------------------
    # Helpers
    # ------------------------
    def experiment_state(
        self, options: argparse.Namespace, **kwargs: Unpack[ExperimentStateKwargs]
    ) -> ExperimentState:
        """Run-wide knobs from the global flags plus subcommand overrides."""
        kwargs.setdefault("seed", options.seed)
        kwargs.setdefault("threads", options.threads)
        kwargs.setdefault("out", options.out)
        return ExperimentState(**kwargs)

    def emit(self, options: argparse.Namespace, text: str) -> None:
        write_text(text, options.out, sys.stdout)

    def emit_json(self, options: argparse.Namespace, doc: Any) -> None:
        self.emit(options, dumps(doc))


# ------------------------
# Argument types
# ------------------------
def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def fraction_arg(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def fraction_list(text: str) -> list[Fraction]:
    return [fraction_arg(x) for x in text.split(",") if x.strip()]


# ------------------------
# Hosts
# ------------------------
def add_host_arguments(arg_group: argparse.ArgumentParser, allow_file: bool = True) -> None:
    kinds = [k.value for k in HostKind if k is not HostKind.FILE]
    if allow_file:
        arg_group.add_argument(
            "--host",
            metavar="FILE",
            default=None,
            help="Read the host graph from a JSON file. Overrides --kind.",
        )
    arg_group.add_argument(
        "--kind",
        choices=kinds,
        default=None,
        help="Generate the host graph instead of reading it",
    )
    arg_group.add_argument("--n", type=int, default=None, help="Number of vertices of a generated host")
    arg_group.add_argument(
        "--alpha",
        type=fraction_arg,
        default=None,
        help="""Minimum-degree ratio of an extremal host. Its independent set
        has (1 - alpha) n vertices.""",
    )
    arg_group.add_argument("--host-p", type=fraction_arg, default=None, help="Edge probability of a gnp host")
    arg_group.add_argument(
        "--classes",
        type=int_list,
        default=None,
        help="Class sizes of a complete multipartite host, e.g. 3,3,3",
    )


def host_spec(options: argparse.Namespace) -> HostSpec:
    """The host described by :func:`add_host_arguments` flags."""
    path = getattr(options, "host", None)
    if path is not None:
        return HostSpec(HostKind.FILE, path=path)
    if options.kind is None:
        raise ConfigError("give either --host FILE or --kind")
    kind = HostKind(options.kind)
    classes = tuple(options.classes or ())
    n = sum(classes) if kind is HostKind.MULTIPARTITE else options.n
    if n is None:
        raise ConfigError(f"--kind {kind.value} needs --n")
    return HostSpec(kind, n, alpha=options.alpha, p=options.host_p, classes=classes, seed=options.seed)
