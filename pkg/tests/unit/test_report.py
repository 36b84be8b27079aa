"""Tests for the text reports."""

from fractions import Fraction

import jinja2 as jj
import pytest

from perturbed_factors.graph import gen_complete
from perturbed_factors.harness import row_by_name
from perturbed_factors.harness.table import TableRowReport
from perturbed_factors.params import RParams, Variant
from perturbed_factors.partitioner import find_partition
from perturbed_factors.report import render, render_dichotomy, render_partition, render_table_row
from perturbed_factors.tiling import run_dichotomy


class TestReports:
    """Templates render every report kind."""

    def test_dichotomy(self) -> None:
        """Header line with the branch, then the stage report."""
        out = render_dichotomy(run_dichotomy(gen_complete(6), RParams.gadget(1, 2, 1)))
        assert out.startswith("Dichotomy on 6 vertices (r=3, m=1, s=2, t=1, gadget): cover")
        assert "leftover in small cliques: 0" in out

    def test_partition(self) -> None:
        """Parts, trace and properties."""
        out = render_partition(find_partition(gen_complete(6), RParams.from_r_s(3, 2, Variant.ABSORBER)))
        assert "A_1: 6 vertices, 15 inside edges" in out
        assert "gammas = 1/50" in out
        assert "certified: yes" in out

    def test_table_row_without_points(self) -> None:
        """An empty report still names the row and its verdict."""
        report = TableRowReport(row_by_name("(1/4,1/2)"), 4, Fraction(3, 8))
        out = render_table_row(report)
        assert out.startswith("Threshold row (1/4,1/2) (r = 4, alpha = 3/8)")
        assert "expected threshold: n^(-2/3)" in out
        assert "verdict: undetermined" in out
        assert "fitted slope" not in out

    def test_missing_context_is_an_error(self) -> None:
        """Undefined template variables are not silently blank."""
        with pytest.raises(jj.UndefinedError):
            render("table_row.txt.j2")
