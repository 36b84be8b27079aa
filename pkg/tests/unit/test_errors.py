"""Tests for the exception hierarchy and its messages."""

import pytest

from perturbed_factors.errors import (
    BracketError,
    ConfigError,
    ExecutionError,
    FactorsError,
    FitError,
    GraphFormatError,
    ParameterError,
    SizeError,
    ValidationError,
)


class TestErrors:
    """Every error derives from FactorsError and carries its data."""

    @pytest.mark.parametrize(
        "cls",
        [ParameterError, GraphFormatError, ConfigError, FitError],
    )
    def test_hierarchy(self, cls: type[FactorsError]) -> None:
        """Plain errors are FactorsErrors."""
        assert issubclass(cls, FactorsError)

    def test_argument_errors_are_value_errors(self) -> None:
        """Callers catching ValueError still see bad arguments."""
        assert issubclass(ParameterError, ValueError)
        assert issubclass(GraphFormatError, ParameterError)
        assert issubclass(ConfigError, ValueError)

    def test_size_error(self) -> None:
        """Size and limit are kept."""
        e = SizeError("pool", 40, 24)
        assert str(e) == "pool has size 40, exact search is capped at 24"
        assert (e.size, e.limit) == (40, 24)

    def test_execution_error(self) -> None:
        """The failing move index prefixes the message."""
        e = ExecutionError("part 2 would become -1", 3)
        assert str(e) == "move 3: part 2 would become -1"
        assert e.move_index == 3

    def test_bracket_error(self) -> None:
        """Both end probabilities are reported."""
        e = BracketError(0.5, 0.0, 0.25)
        assert "does not bracket 0.5" in str(e)
        assert "p_high end gives 0.250" in str(e)
        assert e.high_prob == 0.25

    def test_validation_error(self) -> None:
        """One bullet per problem."""
        e = ValidationError("P-factor", ["a", "b"])
        assert str(e) == "Unable to certify P-factor due to previous errors:\n  - a\n  - b"
        assert e.problems == ["a", "b"]
