"""Tests for good cliques, pair families and absorber sampling."""

from collections.abc import Callable
from fractions import Fraction

import pytest

from perturbed_factors.absorber import (
    absorber_clique_size,
    build_absorber,
    build_pair_families,
    common_neighbourhood_bound,
    default_target,
    is_good,
    keep_probability,
    pair_goodness,
    sample_absorber,
)
from perturbed_factors.errors import ParameterError, ValidationError
from perturbed_factors.graph import Graph, gen_complete, gen_empty
from perturbed_factors.params import RParams, Variant
from perturbed_factors.validate import validate_absorber

R3 = RParams.from_r_s(3, 2, Variant.ABSORBER)
SINGULAR = RParams.absorber(1, 2, 2)


def _matching(n: int) -> Graph:
    return Graph(n, [(2 * i, 2 * i + 1) for i in range(n // 2)])


# ===========================================================================
# Goodness
# ===========================================================================
class TestGoodness:
    """A clique is good for a vertex missing at most two of it."""

    def test_is_good(self) -> None:
        """One neighbour in a triangle is enough, none is not."""
        g = Graph(5, [(0, 1), (0, 2), (1, 2), (3, 0)])
        assert is_good(g, (0, 1, 2), 3)
        assert not is_good(g, (0, 1, 2), 4)

    def test_is_good_argument_checks(self) -> None:
        """The vertex lies outside a real clique."""
        g = gen_complete(4)
        with pytest.raises(ParameterError, match="lies in the clique"):
            is_good(g, (0, 1), 0)
        with pytest.raises(ParameterError, match="not a clique"):
            is_good(gen_empty(4), (0, 1), 2)

    def test_pair_goodness(self) -> None:
        """Clique vertices never count a clique as good for themselves."""
        counts = pair_goodness(gen_complete(4), [(0, 1)])
        assert counts[(2, 3)] == 1
        assert counts[(0, 2)] == 0

    @pytest.mark.parametrize(
        "params, k, size",
        [
            (R3, 1, 2),
            (SINGULAR, 2, 3),
        ],
    )
    def test_clique_size(self, params: RParams, k: int, size: int) -> None:
        """K_{m+k} with k = 1 + g."""
        assert absorber_clique_size(params, k) == size

    def test_clique_size_rejects_wrong_k(self) -> None:
        """k is fixed by the parameters."""
        with pytest.raises(ParameterError, match="need k = 1"):
            absorber_clique_size(R3, 2)


# ===========================================================================
# Families
# ===========================================================================
class TestPairFamilies:
    """Candidate pools with per-pair goodness."""

    def test_exact_family_of_complete_graph(self) -> None:
        """Every edge of K_6 is a candidate and a pair keeps the six edges avoiding it."""
        families = build_pair_families(gen_complete(6), R3, 1)
        assert len(families) == 15
        assert families.method == "exact"
        assert families.count(0, 1) == 6
        assert all(0 not in c and 1 not in c for c in families.family(0, 1))
        assert families.empty_pairs() == []

    def test_density_hypothesis_is_reported(self) -> None:
        """An edgeless host violates the density hypothesis for k = 2."""
        families = build_pair_families(gen_empty(6), SINGULAR, 2, delta1="1/10")
        assert len(families) == 0
        assert families.hypothesis is not None
        assert "spans 0" in families.hypothesis

    def test_common_neighbourhood_bound(self, extremal: Callable[..., Graph]) -> None:
        """Single vertices of an extremal host see at least t n / r others."""
        bound = common_neighbourhood_bound(extremal(12, "2/3"), R3)
        assert bound.ok
        assert bound.bound == 4
        assert bound.worst_count == 8
        assert bound.method == "exact"
        assert not common_neighbourhood_bound(gen_empty(6), R3).ok

    def test_gadget_parameters_are_refused(self) -> None:
        """Absorbers use the absorber variant."""
        with pytest.raises(ParameterError, match="absorber parameters"):
            build_pair_families(gen_complete(4), RParams.gadget(1, 2, 1), 1)


# ===========================================================================
# Sampling
# ===========================================================================
class TestSampleAbsorber:
    """Keep, prune and count."""

    def test_keep_everything_then_prune(self) -> None:
        """Probability one keeps the lexicographically first disjoint edges."""
        families = build_pair_families(gen_complete(6), R3, 1)
        absorber = sample_absorber(families, 1, seed=0, target=1, probability=1)
        assert absorber.ok
        assert absorber.cliques == [(0, 1), (2, 3), (4, 5)]
        assert absorber.min_count == 1
        assert absorber.pair_counts[(0, 1)] == 2
        assert absorber.attempts == 1
        validate_absorber(absorber)

    def test_unreachable_target(self) -> None:
        """Every retry is spent and the weakest pair is reported."""
        families = build_pair_families(gen_complete(6), R3, 1)
        absorber = sample_absorber(families, 1, target=5, retries=2, probability=1)
        assert absorber.attempts == 2
        assert absorber.failure == "weakest pair keeps 1 good cliques after 2 attempts, target 5"

    def test_empty_pool(self) -> None:
        """No candidates, no absorber."""
        absorber = sample_absorber(build_pair_families(gen_empty(6), R3, 1), "1/2")
        assert absorber.failure == "no candidate cliques"

    @pytest.mark.parametrize(
        "kwargs, message",
        [
            ({"xi": 0}, "xi must lie"),
            ({"xi": 1, "retries": 0}, "retries must be positive"),
            ({"xi": 1, "probability": 2}, "probability must lie"),
        ],
    )
    def test_argument_ranges(self, kwargs: dict, message: str) -> None:
        """xi in (0, 1], at least one attempt, a probability in [0, 1]."""
        families = build_pair_families(gen_complete(6), R3, 1)
        with pytest.raises(ParameterError, match=message):
            sample_absorber(families, **kwargs)

    def test_default_target(self) -> None:
        """xi^2 n / 50 rounded up, never below one."""
        assert default_target("1/10", 100) == 1
        assert default_target(1, 100) == 2

    @pytest.mark.parametrize(
        "xi, n, size, expected",
        [
            (1, 10, 2, Fraction(1, 100)),
            ("1/2", 10, 3, Fraction(1, 2000)),
            (1, 60, 1, Fraction(1, 10)),
        ],
    )
    def test_keep_probability(self, xi: int | str, n: int, size: int, expected: Fraction) -> None:
        """Cliques of size g are kept with probability (xi/10) n^(1-g)."""
        assert keep_probability(xi, n, size) == expected

    def test_default_rate_is_recorded(self) -> None:
        """Edges of K_6 with xi = 1 are kept with probability 1/60 unless overridden."""
        families = build_pair_families(gen_complete(6), R3, 1)
        assert sample_absorber(families, 1, seed=3).probability == Fraction(1, 60)
        assert sample_absorber(families, 1, probability="1/2").probability == Fraction(1, 2)

    def test_keep_probability_arguments(self) -> None:
        """Empty hosts and empty cliques have no rate."""
        with pytest.raises(ParameterError, match="need n >= 1"):
            keep_probability(1, 0, 2)


# ===========================================================================
# Certification
# ===========================================================================
class TestBuildAbsorber:
    """Families, sampling and the certification bounds together."""

    def test_perfect_matching_host_is_certified(self) -> None:
        """Six disjoint edges are all kept and every pair keeps four of them."""
        absorber = build_absorber(_matching(12), R3, 1, xi=1, seed=7, probability=1)
        assert absorber.certified
        assert absorber.covered == 12
        assert absorber.min_count == 4
        assert absorber.delta2 == Fraction(1, 10)
        assert absorber.coverage_bound() == 24
        validate_absorber(absorber)

    def test_tampered_counts_fail_validation(self) -> None:
        """A recount catches edited pair counts."""
        absorber = build_absorber(_matching(12), R3, 1, xi=1, probability=1)
        absorber.pair_counts[(0, 1)] = 99
        with pytest.raises(ValidationError, match="pair counts disagree"):
            validate_absorber(absorber)

    def test_edgeless_host_is_not_certified(self) -> None:
        """Without candidates nothing is certified."""
        absorber = build_absorber(gen_empty(6), R3, 1, xi="1/2")
        assert not absorber.certified
        assert not absorber.ok
