"""Tests for the small clique-search primitives."""

from collections.abc import Callable

import pytest

from perturbed_factors.errors import ParameterError, SizeError
from perturbed_factors.graph import Graph, gen_complete, gen_empty
from perturbed_factors.solver import (
    extend_clique_into_part,
    find_clique_in_family,
    find_clique_in_subset,
    find_Fq,
    greedy_conforming_collection,
)


class TestCliquePrimitives:
    """Lexicographically first witnesses or a proven absence."""

    def test_clique_in_subset(self) -> None:
        """The first triangle inside the subset."""
        assert find_clique_in_subset(gen_complete(6), [5, 3, 4, 1], 3) == (1, 3, 4)
        assert find_clique_in_subset(gen_empty(6), range(6), 2) is None

    def test_clique_in_family(self, make_graph: Callable[..., Graph]) -> None:
        """Members of the wrong size or with a missing edge are skipped."""
        g = make_graph(4, [(0, 1), (2, 3), (1, 2), (1, 3)])
        assert find_clique_in_family(g, [[0, 1, 2], [0, 1], [1, 2, 3]], 3) == (1, 2, 3)

    def test_extend_clique(self) -> None:
        """A K_2 complete to the given edge, avoiding one vertex."""
        g = gen_complete(6)
        assert extend_clique_into_part(g, [0, 1], [2, 3, 4], 2) == (2, 3)
        assert extend_clique_into_part(g, [0, 1], [2, 3, 4], 2, avoid=[2]) == (3, 4)

    def test_extend_rejects_bad_inputs(self, make_graph: Callable[..., Graph]) -> None:
        """The base must be a clique disjoint from the part."""
        g = make_graph(4, [(0, 1)])
        with pytest.raises(ParameterError, match="not a clique"):
            extend_clique_into_part(g, [0, 2], [3], 1)
        with pytest.raises(ParameterError, match="disjoint"):
            extend_clique_into_part(g, [0, 1], [1, 3], 1)


class TestGreedyConforming:
    """Greedy K_{s+1} copies with one Z-vertex each."""

    def test_extremal_host(self, extremal: Callable[..., Graph]) -> None:
        """Each independent vertex takes the next free edge of the clique part."""
        outcome = greedy_conforming_collection(extremal(12, "2/3"), [0, 1, 2, 3], 2, 4)
        assert outcome.ok
        assert outcome.cliques == ((0, 4, 5), (1, 6, 7), (2, 8, 9), (3, 10, 11))

    def test_top_up_with_z_free_cliques(self) -> None:
        """Missing copies beyond |Z| avoid Z altogether."""
        outcome = greedy_conforming_collection(gen_complete(6), [0], 1, 3)
        assert outcome.cliques == ((0, 1), (2, 3), (4, 5))

    def test_failure_names_the_vertex(self, make_graph: Callable[..., Graph]) -> None:
        """An isolated Z-vertex cannot be served."""
        outcome = greedy_conforming_collection(make_graph(4, [(1, 2)]), [0], 1, 1)
        assert not outcome.ok
        assert outcome.failed_vertex == 0

    def test_shortfall(self) -> None:
        """Too few Z-free vertices leaves a shortfall."""
        outcome = greedy_conforming_collection(gen_complete(4), [], 1, 3)
        assert outcome.shortfall == 1


class TestFq:
    """Two copies sharing a vertex plus disjoint copies."""

    def test_bowtie_in_k5(self) -> None:
        """Two triangles through one centre, the shared vertex listed last in the first copy."""
        assert find_Fq(gen_complete(5), 3, 2) == (1, 2, 0, 3, 4)

    def test_needs_enough_vertices(self) -> None:
        """K_4 is one vertex short."""
        assert find_Fq(gen_complete(4), 3, 2) is None

    def test_with_a_disjoint_copy(self) -> None:
        """q = 3 adds a vertex-disjoint triangle."""
        found = find_Fq(gen_complete(8), 3, 3)
        assert found is not None
        assert len(set(found)) == 8

    def test_parameter_and_size_limits(self) -> None:
        """q and s start at two and large hosts are refused."""
        with pytest.raises(ParameterError):
            find_Fq(gen_complete(5), 1, 2)
        with pytest.raises(SizeError):
            find_Fq(gen_empty(50), 3, 2)
