from __future__ import annotations

import functools
import io
from pathlib import Path
from typing import TYPE_CHECKING, Any

import jinja2 as jj

from .utils import format_fraction

if TYPE_CHECKING:
    from .harness.table import TableRowReport
    from .partitioner import PartitionSearch
    from .tiling import Dichotomy


@functools.lru_cache(maxsize=1)
def _environment() -> jj.Environment:
    env = jj.Environment(
        loader=jj.FileSystemLoader(Path(__file__).parent / "templates"),
        undefined=jj.StrictUndefined,
        keep_trailing_newline=True,
    )
    env.filters["frac"] = format_fraction
    return env


def render(template_name: str, **context: Any) -> str:
    template = _environment().get_template(template_name)
    buf = io.StringIO()
    template.stream(context).dump(buf)
    return buf.getvalue()


def render_table_row(report: TableRowReport) -> str:
    return render("table_row.txt.j2", report=report)


def render_partition(search: PartitionSearch) -> str:
    return render("partition.txt.j2", search=search, edges=search.partition.inside_edges())


def render_dichotomy(result: Dichotomy) -> str:
    return render("dichotomy.txt.j2", result=result)
