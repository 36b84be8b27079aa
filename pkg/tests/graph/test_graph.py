"""Tests for the bitset graph, its generators and the exact searches."""

from collections.abc import Callable

import pytest

from perturbed_factors.errors import ParameterError, SizeError
from perturbed_factors.graph import (
    Graph,
    enumerate_cliques,
    extremal_independent_size,
    gen_complete,
    gen_complete_multipartite,
    gen_empty,
    gen_gnp,
    graph_union,
    independence_number,
    is_conforming,
)
from perturbed_factors.rng import Seed


# ===========================================================================
# Structure
# ===========================================================================
class TestGraphStructure:
    """Adjacency queries on small hand-built graphs."""

    def test_path_degrees(self, make_graph: Callable[..., Graph]) -> None:
        """A path 0-1-2-3 has degrees 1, 2, 2, 1."""
        g = make_graph(4, [(0, 1), (1, 2), (2, 3)])
        assert g.degrees() == [1, 2, 2, 1]
        assert g.min_degree() == 1
        assert g.edge_count == 3
        assert g.edges() == [(0, 1), (1, 2), (2, 3)]

    def test_neighbourhoods(self, make_graph: Callable[..., Graph]) -> None:
        """Common neighbourhoods intersect the individual ones."""
        g = make_graph(4, [(0, 2), (1, 2), (0, 3)])
        assert g.neighbors(0) == (2, 3)
        assert g.common_neighborhood([0, 1]) == (2,)
        assert g.adjacent(2, 0)
        assert not g.adjacent(0, 1)

    def test_edge_counts(self) -> None:
        """Edge counts inside and between sets of K_4."""
        g = gen_complete(4)
        assert g.edge_count_within([0, 1, 2]) == 3
        assert g.edge_count_between([0, 1], [2, 3]) == 4
        assert g.degree_into(0, 0b1110) == 3

    def test_clique_and_independence_predicates(self, make_graph: Callable[..., Graph]) -> None:
        """A triangle plus an isolated vertex."""
        g = make_graph(4, [(0, 1), (1, 2), (0, 2)])
        assert g.is_clique([0, 1, 2])
        assert not g.is_clique([0, 1, 3])
        assert g.is_independent([0, 3])
        assert not g.is_independent([0, 1])

    def test_induced_subgraph_relabels(self, make_graph: Callable[..., Graph]) -> None:
        """The induced subgraph is relabelled in sorted order."""
        g = make_graph(5, [(1, 3), (3, 4)])
        sub = g.induced_subgraph([4, 3, 1])
        assert sub.n == 3
        assert sub.edges() == [(0, 1), (1, 2)]

    def test_complement(self) -> None:
        """The complement of K_n is empty and vice versa."""
        assert gen_complete(5).complement().edge_count == 0
        assert gen_empty(5).complement() == gen_complete(5)

    def test_rejects_self_loops(self) -> None:
        """Self-loops are a parameter error."""
        with pytest.raises(ParameterError, match="self-loop"):
            Graph(3, [(1, 1)])

    def test_rejects_out_of_range(self) -> None:
        """Edges must stay inside [0, n)."""
        with pytest.raises(ParameterError, match="out of range"):
            Graph(3, [(0, 3)])


# ===========================================================================
# Generators
# ===========================================================================
class TestGenerators:
    """Deterministic and seeded graph generators."""

    def test_gnp_is_reproducible(self) -> None:
        """The same seed gives the same graph; a different path does not share draws."""
        a = gen_gnp(30, 0.5, Seed(7))
        b = gen_gnp(30, 0.5, 7)
        assert a == b
        assert gen_gnp(30, 0.5, Seed(7).derive(1)) != a

    def test_gnp_extremes(self) -> None:
        """p = 0 is empty and p = 1 is complete."""
        assert gen_gnp(10, 0, 1).edge_count == 0
        assert gen_gnp(10, 1, 1).edge_count == 45

    def test_gnp_rejects_bad_probability(self) -> None:
        """Probabilities outside [0, 1] are rejected."""
        with pytest.raises(ParameterError, match="edge probability"):
            gen_gnp(10, 1.5, 0)

    def test_extremal_host_shape(self, extremal: Callable[..., Graph]) -> None:
        """The first (1 - alpha) n vertices are independent and have degree alpha n."""
        g = extremal(12, "2/3")
        a = range(4)
        assert g.is_independent(a)
        assert all(g.degree(v) == 8 for v in a)
        assert all(g.degree(v) == 11 for v in range(4, 12))
        assert g.min_degree() == 8

    def test_extremal_host_needs_integral_set(self) -> None:
        """(1 - alpha) n must be an integer."""
        assert extremal_independent_size(20, "3/5") == 8
        with pytest.raises(ParameterError, match="not an integer"):
            extremal_independent_size(10, "1/3")

    def test_complete_multipartite(self) -> None:
        """Classes are independent and everything across them is joined."""
        g = gen_complete_multipartite([2, 3])
        assert g.edge_count == 6
        assert g.is_independent([2, 3, 4])

    def test_union(self, make_graph: Callable[..., Graph]) -> None:
        """The union keeps the edges of both graphs."""
        u = graph_union(make_graph(3, [(0, 1)]), make_graph(3, [(1, 2)]))
        assert u.edges() == [(0, 1), (1, 2)]
        with pytest.raises(ParameterError, match="cannot union"):
            graph_union(gen_empty(3), gen_empty(4))


# ===========================================================================
# Searches
# ===========================================================================
class TestSearches:
    """Clique enumeration and exact independence number."""

    def test_enumerate_triangles_of_k4(self) -> None:
        """K_4 has four triangles, listed lexicographically."""
        assert enumerate_cliques(gen_complete(4), 3) == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]

    def test_enumerate_with_limit_and_subset(self) -> None:
        """``limit`` stops early and ``within`` restricts the search."""
        g = gen_complete(6)
        assert len(enumerate_cliques(g, 2, limit=3)) == 3
        assert enumerate_cliques(g, 2, within=[4, 5]) == [(4, 5)]

    def test_independence_number_of_extremal_host(self, extremal: Callable[..., Graph]) -> None:
        """The independent part of an extremal host is a maximum independent set."""
        size, witness = independence_number(extremal(12, "2/3"))
        assert size == 4
        assert witness == (0, 1, 2, 3)

    def test_independence_number_cap(self) -> None:
        """Graphs above the cap are refused."""
        with pytest.raises(SizeError, match="capped at 8"):
            independence_number(gen_empty(9), limit=8)

    def test_is_conforming(self) -> None:
        """At most one vertex of Z per member."""
        assert is_conforming([(0, 1), (2, 3)], {0, 2})
        assert not is_conforming([(0, 1, 2)], {0, 2})
