"""Tests for the run-wide experiment knobs."""

from fractions import Fraction

import pytest

from perturbed_factors.errors import ConfigError
from perturbed_factors.params import RParams, Variant
from perturbed_factors.state import ExperimentState


class TestExperimentState:
    """Defaults, range checks and stray keywords."""

    def test_defaults(self) -> None:
        """Every knob has a default."""
        state = ExperimentState()
        assert state.seed == 0
        assert state.threads == 1
        assert state.budget == 200_000
        assert state.beta == Fraction(1, 20)
        assert state.gamma == Fraction(1, 20)
        assert state.c_cap is None
        assert state.gammas is None
        assert state.trials == 200

    def test_fractions_from_strings(self) -> None:
        """Rational knobs accept "p/q" strings."""
        state = ExperimentState(gamma="1/10", gammas=["1/100", "1/50"])
        assert state.gamma == Fraction(1, 10)
        assert state.gammas == [Fraction(1, 100), Fraction(1, 50)]

    @pytest.mark.parametrize(
        "kwargs, message",
        [
            ({"beta": "1/4"}, "beta must lie strictly between 0 and 1/4"),
            ({"gamma": 0}, "gamma must lie"),
            ({"threads": 0}, "threads must be a positive integer"),
            ({"seed": -1}, "seed must be a non-negative integer"),
            ({"seed": True}, "seed must be"),
            ({"budget": 1.5}, "budget must be"),
            ({"gammas": ["1/2", 2]}, r"gammas\[1\]"),
            ({"tolerance": 1.0}, "tolerance"),
            ({"epsilon": "abc"}, "epsilon must be a number"),
        ],
    )
    def test_invalid_values(self, kwargs: dict, message: str) -> None:
        """Out-of-range knobs raise ConfigError naming the knob."""
        with pytest.raises(ConfigError, match=message):
            ExperimentState(**kwargs)

    def test_stray_keyword(self) -> None:
        """Unknown keywords are a TypeError, as for any function call."""
        with pytest.raises(TypeError, match="unexpected keyword argument 'colour'"):
            ExperimentState(colour="blue")  # type: ignore[call-arg]

    def test_partition_constants(self) -> None:
        """Explicit gammas need one value per level."""
        params = RParams.from_r_s(5, 2, Variant.ABSORBER)
        consts = ExperimentState(beta="1/10").partition_constants(params)
        assert consts.beta == Fraction(1, 10)
        assert consts.gammas == (Fraction(1, 100), Fraction(1, 50))
        with pytest.raises(ConfigError, match="gammas needs 2 values"):
            ExperimentState(gammas=["1/10"]).partition_constants(params)
