"""Tests for the closed-form threshold functions and the threshold table."""

import math
from fractions import Fraction

import pytest

from perturbed_factors.errors import ParameterError
from perturbed_factors.harness import expected_slope, find_row, host_for, p_s, phi, row_by_name, threshold_table
from perturbed_factors.harness.table import resolve_row
from perturbed_factors.harness.trials import HostKind


# ===========================================================================
# Closed forms
# ===========================================================================
class TestClosedForms:
    """phi(s) and p_s(n)."""

    @pytest.mark.parametrize(
        "s, expected",
        [
            (2, Fraction(1)),
            (3, Fraction(3, 5)),
            (4, Fraction(4, 9)),
        ],
    )
    def test_phi(self, s: int, expected: Fraction) -> None:
        """2s / ((s-1)(s+2))."""
        assert phi(s) == expected

    def test_p_s(self) -> None:
        """log n / n at s = 2, a pure power above."""
        assert p_s(100, 2) == pytest.approx(math.log(100) / 100)
        assert p_s(8, 3) == pytest.approx(8 ** -0.6)

    def test_ranges(self) -> None:
        """s at least 2 and n at least 3."""
        with pytest.raises(ParameterError, match="s >= 2"):
            phi(1)
        with pytest.raises(ParameterError, match="n >= 3"):
            p_s(2, 2)


# ===========================================================================
# Table
# ===========================================================================
class TestThresholdTable:
    """Rows of the K_4 table in increasing alpha."""

    def test_row_names(self) -> None:
        """Points at 1 - s/r for s < r, open ranges between them."""
        names = [row.name for row in threshold_table(4)]
        assert names == ["0", "(0,1/4)", "1/4", "(1/4,1/2)", "1/2", "(1/2,3/4)", "[3/4,1]"]

    def test_exponents(self) -> None:
        """-2/s inside a range, -phi(s) at a point, log n at s = 2."""
        rows = {row.name: row for row in threshold_table(4)}
        assert rows["(1/4,1/2)"].exponent == Fraction(-2, 3)
        assert rows["1/4"].exponent == Fraction(-3, 5)
        assert rows["1/2"].expression == "n^(-1) log n"
        assert rows["0"].log_power == Fraction(1, 6)
        assert rows["[3/4,1]"].exponent is None
        assert rows["[3/4,1]"].evaluate(100) == 0.0

    @pytest.mark.parametrize(
        "alpha, name",
        [
            (0, "0"),
            ("1/8", "(0,1/4)"),
            ("1/4", "1/4"),
            ("1/3", "(1/4,1/2)"),
            (1, "[3/4,1]"),
        ],
    )
    def test_find_row(self, alpha: str | int, name: str) -> None:
        """Open ranges exclude their endpoints."""
        assert find_row(alpha).name == name

    def test_lookup_errors(self) -> None:
        """Unknown names and alpha outside [0, 1]."""
        with pytest.raises(ParameterError, match="alpha must lie"):
            find_row(2)
        with pytest.raises(ParameterError, match="unknown row 'x'"):
            row_by_name("x")
        with pytest.raises(ParameterError, match="at least 2"):
            threshold_table(1)

    def test_representative_alpha(self) -> None:
        """Midpoint of an open range, the point itself otherwise."""
        assert row_by_name("(1/4,1/2)").representative_alpha() == Fraction(3, 8)
        assert row_by_name("1/4").representative_alpha() == Fraction(1, 4)
        assert row_by_name("[3/4,1]").representative_alpha() == Fraction(3, 4)

    def test_resolve_row(self) -> None:
        """Names win over values, values fall back to containment."""
        assert resolve_row("1/4", 4).name == "1/4"
        assert resolve_row("3/8", 4).name == "(1/4,1/2)"
        assert resolve_row(Fraction(5, 8), 4).name == "(1/2,3/4)"


# ===========================================================================
# Row helpers
# ===========================================================================
class TestRowHelpers:
    """Hosts and predicted slopes of a row."""

    def test_host_for(self) -> None:
        """Extremal in the middle, empty and complete at the ends."""
        host = host_for(Fraction(3, 8), 16)
        assert host.kind is HostKind.EXTREMAL
        assert host.alpha == Fraction(3, 8)
        assert host_for(Fraction(0), 8).kind is HostKind.EMPTY
        assert host_for(Fraction(1), 8).kind is HostKind.COMPLETE

    def test_expected_slope(self) -> None:
        """The log factor shifts the local slope by 1 / mean(log n)."""
        assert expected_slope(row_by_name("(1/4,1/2)"), [16, 32]) == pytest.approx(-2 / 3)
        assert expected_slope(row_by_name("1/2"), [100]) == pytest.approx(-1 + 1 / math.log(100))
        assert expected_slope(row_by_name("[3/4,1]"), [16]) is None
