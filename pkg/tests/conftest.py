"""Shared builder fixtures."""

from __future__ import annotations

from collections.abc import Callable, Iterable
from pathlib import Path

import pytest

from perturbed_factors.graph import Graph, gen_extremal_host
from perturbed_factors.params import RParams, Variant
from perturbed_factors.serialize import write_graph
from perturbed_factors.utils import Rational


@pytest.fixture
def make_graph() -> Callable[..., Graph]:
    """Build a graph from an edge list."""

    def _make(n: int, edges: Iterable[tuple[int, int]] = ()) -> Graph:
        return Graph(n, list(edges))

    return _make


@pytest.fixture
def extremal() -> Callable[[int, Rational], Graph]:
    """Extremal host with an independent set of (1 - alpha) n vertices."""
    return gen_extremal_host


@pytest.fixture
def params() -> Callable[..., RParams]:
    """Parameters from ``(r, s)`` or from ``(m, s, t)``, gadget variant by default."""

    def _params(*args: int, variant: Variant = Variant.GADGET) -> RParams:
        if len(args) == 2:
            return RParams.from_r_s(args[0], args[1], variant)
        m, s, t = args
        return RParams(m, s, t, variant)

    return _params


@pytest.fixture
def graph_file(tmp_path: Path) -> Callable[[Graph], Path]:
    """Write a graph to a JSON file under ``tmp_path`` and return its path.

    Parameters
    ----------
    tmp_path:
        Temporary directory provided by pytest.
    """
    counter = iter(range(10_000))

    def _write(g: Graph) -> Path:
        path = tmp_path / f"graph_{next(counter)}.json"
        write_graph(g, path)
        return path

    return _write
