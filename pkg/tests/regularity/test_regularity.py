"""Tests for pair regularity, super-regular tuples, reduced graphs and the parameter arithmetic."""

from fractions import Fraction

import pytest

from perturbed_factors.errors import ParameterError, SizeError
from perturbed_factors.graph import Graph, gen_complete_multipartite, gen_empty
from perturbed_factors.regularity import (
    check_eps_regular,
    density,
    is_super_regular,
    random_conforming_split,
    reduced_graph,
    slicing_adding_params,
    slicing_params,
)


def _half_joined() -> Graph:
    """X = 0..3, Y = 4..7 with 0 and 1 complete to Y and 2, 3 isolated."""
    return Graph(8, [(x, y) for x in (0, 1) for y in range(4, 8)])


# ===========================================================================
# Pairs
# ===========================================================================
class TestPairRegularity:
    """Exact and sampled regularity checks of a single pair."""

    def test_complete_bipartite_pair_is_regular(self) -> None:
        """Every sub-pair has density one."""
        g = gen_complete_multipartite([3, 3])
        stats = check_eps_regular(g, [0, 1, 2], [3, 4, 5], "1/2")
        assert stats.regular
        assert stats.density == 1
        assert stats.method == "exact"
        assert stats.witness is None

    def test_half_joined_pair_is_irregular(self) -> None:
        """Two fully joined vertices form a dense sub-pair."""
        stats = check_eps_regular(_half_joined(), range(4), range(4, 8), "1/2")
        assert stats.density == Fraction(1, 2)
        assert not stats.regular
        assert stats.witness == ((0, 1), (4, 5))
        assert stats.min_degree_share == (Fraction(0), Fraction(1, 2))

    def test_reference_density(self) -> None:
        """Against d = 1 the complete pair stays regular, against d = 0 it does not."""
        g = gen_complete_multipartite([2, 2])
        assert check_eps_regular(g, [0, 1], [2, 3], "1/2", d=1).regular
        assert not check_eps_regular(g, [0, 1], [2, 3], "1/2", d=0).regular

    def test_sampled_mode(self) -> None:
        """Sampling reports its method and finds no violation where none exists."""
        g = gen_complete_multipartite([3, 3])
        stats = check_eps_regular(g, [0, 1, 2], [3, 4, 5], "1/3", mode="sampled", seed=4, samples=50)
        assert stats.regular
        assert stats.method == "sampled"

    def test_density(self) -> None:
        """Exact rational density."""
        assert density(_half_joined(), range(4), range(4, 8)) == Fraction(1, 2)

    @pytest.mark.parametrize(
        "x, y, kwargs, message",
        [
            ([0, 1], [1, 2], {}, "disjoint"),
            ([], [1, 2], {}, "nonempty"),
            ([0, 1], [2, 3], {"eps": 0}, "eps must lie"),
            ([0, 1], [2, 3], {"mode": "fast"}, "unknown mode"),
        ],
    )
    def test_argument_checks(self, x: list[int], y: list[int], kwargs: dict, message: str) -> None:
        """Sides, eps and mode are validated."""
        args = {"eps": "1/2", **kwargs}
        with pytest.raises(ParameterError, match=message):
            check_eps_regular(gen_empty(4), x, y, **args)

    def test_exact_mode_size_cap(self) -> None:
        """Exact mode refuses sides above the enumeration limit."""
        with pytest.raises(SizeError):
            check_eps_regular(gen_empty(40), range(17), range(17, 40), "1/2", mode="exact")


# ===========================================================================
# Tuples
# ===========================================================================
class TestTuples:
    """Super-regularity and reduced graphs."""

    def test_complete_tripartite_is_super_regular(self) -> None:
        """Every pair is complete and every vertex sees all of each other part."""
        g = gen_complete_multipartite([2, 2, 2])
        report = is_super_regular(g, [[0, 1], [2, 3], [4, 5]], "1/2", 1, 1)
        assert report.ok
        assert len(report.pairs) == 3

    def test_degree_failure(self) -> None:
        """Isolated vertices of X violate the minimum degree."""
        report = is_super_regular(_half_joined(), [range(4), range(4, 8)], "1/2", "1/2", "1/4")
        assert not report.ok
        assert (0, 1, 2) in report.degree_failures

    def test_reduced_graph(self) -> None:
        """Only the dense regular pair becomes an edge."""
        g = Graph(6, [(0, 2), (0, 3), (1, 2), (1, 3)])
        reduced = reduced_graph(g, [[0, 1], [2, 3], [4, 5]], "1/2", "1/2")
        assert reduced.edges() == [(0, 1)]


# ===========================================================================
# Parameter arithmetic
# ===========================================================================
class TestParameterArithmetic:
    """Windows inherited by slicing and by adding vertices."""

    @pytest.mark.parametrize(
        "eps, beta, d, expected",
        [
            ("1/100", "1/2", "2/5", Fraction(1, 50)),
            ("1/25", "1/10", "1/2", Fraction(2, 5)),
        ],
    )
    def test_slicing(self, eps: str, beta: str, d: str, expected: Fraction) -> None:
        """eps' = max(eps/beta, 2 eps)."""
        assert slicing_params(eps, beta, d).eps == expected

    def test_slicing_window_is_closed(self) -> None:
        """The density stays within eps of d, endpoints included."""
        window = slicing_params("1/100", "1/2", "2/5")
        assert (window.d_low, window.d_high) == (Fraction(39, 100), Fraction(41, 100))
        assert window.contains("41/100")
        assert not window.contains("42/100")

    @pytest.mark.parametrize(
        "xi, eps, expected",
        [
            ("1/1000", "1/20", Fraction(3, 10)),
            ("1/25", "1/20", Fraction(4, 5)),
        ],
    )
    def test_slicing_adding(self, xi: str, eps: str, expected: Fraction) -> None:
        """eps' = max(xi/eps, 6 eps)."""
        assert slicing_adding_params(xi, eps, "1/2").eps == expected

    def test_slicing_adding_window_is_open(self) -> None:
        """The density stays strictly within 3 eps of d."""
        window = slicing_adding_params("1/1000", "1/20", "1/2")
        assert not window.contains("7/20")
        assert window.contains("2/5")

    def test_ranges(self) -> None:
        """eps below beta and xi below eps."""
        with pytest.raises(ParameterError, match="eps < beta"):
            slicing_params("1/2", "1/4", "1/2")
        with pytest.raises(ParameterError, match="xi < eps"):
            slicing_adding_params("1/10", "1/20", "1/2")


# ===========================================================================
# Random splits
# ===========================================================================
class TestRandomConformingSplit:
    """Balanced random splits with Z in the first piece."""

    def test_balanced_and_reproducible(self) -> None:
        """Twelve vertices in three pieces of four, Z inside the first."""
        pieces = random_conforming_split(range(12), [0, 1], 3, seed=11)
        assert [len(p) for p in pieces] == [4, 4, 4]
        assert {0, 1} <= set(pieces[0])
        assert sorted(v for p in pieces for v in p) == list(range(12))
        assert random_conforming_split(range(12), [0, 1], 3, seed=11) == pieces

    def test_z_too_large(self) -> None:
        """Z must fit in one piece."""
        with pytest.raises(ParameterError, match="exceed"):
            random_conforming_split(range(12), range(5), 3, seed=0)
