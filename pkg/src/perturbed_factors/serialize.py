"""
JSON and CSV forms of graphs, packing certificates and sweep tables.

Every JSON document is written with sorted keys and a trailing newline, so
two runs with the same inputs produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Mapping
from fractions import Fraction
from pathlib import Path
from typing import Any, TextIO

from .errors import GraphFormatError
from .gadgets.packing import PackedPiece, PackingCert
from .gadgets.weighted import WeightedGraph
from .graph import Graph
from .utils import format_fraction

SWEEP_COLUMNS = ("n", "p", "successes", "trials", "indeterminates")


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def write_text(text: str, path: str | Path | None, stream: TextIO | None = None) -> None:
    """Write to ``path``, or to ``stream`` when no path is given."""
    if path is None:
        if stream is None:
            raise ValueError("either a path or a stream is required")
        stream.write(text)
        return
    Path(path).write_text(text, encoding="utf-8")


# ------------------------
# Graphs
# ------------------------
def graph_to_json(g: Graph) -> dict[str, object]:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def graph_from_json(doc: object) -> Graph:
    """
    Parse ``{"n": int, "edges": [[u, v], ...]}``. Self-loops, repeated edges
    and endpoints outside ``[0, n)`` are rejected with :class:`GraphFormatError`.
    """
    if not isinstance(doc, Mapping) or "n" not in doc or "edges" not in doc:
        raise GraphFormatError('a graph is an object with keys "n" and "edges"')
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphFormatError(f'"n" must be a non-negative integer, got {n!r}')
    seen: set[tuple[int, int]] = set()
    for i, edge in enumerate(doc["edges"]):
        if not isinstance(edge, list | tuple) or len(edge) != 2 or not all(isinstance(x, int) for x in edge):
            raise GraphFormatError(f"edge {i} is not a pair of integers: {edge!r}")
        u, v = edge
        if u == v:
            raise GraphFormatError(f"edge {i} is a self-loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge {i} ({u}, {v}) has an endpoint outside [0, {n})")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"edge {i} ({u}, {v}) is repeated")
        seen.add(key)
    return Graph(n, sorted(seen))


def read_graph(path: str | Path) -> Graph:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"{path}: not valid JSON ({e})") from e
    return graph_from_json(doc)


def write_graph(g: Graph, path: str | Path) -> None:
    write_text(dumps(graph_to_json(g)), path)


def read_vertex_list(path: str | Path) -> list[int]:
    """A JSON list of vertex labels, as used for conforming sets."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(doc, list) or not all(isinstance(v, int) for v in doc):
        raise GraphFormatError(f"{path}: expected a JSON list of integers")
    return doc


# ------------------------
# Packing certificates
# ------------------------
def cert_to_json(cert: PackingCert) -> dict[str, object]:
    return {
        "host": graph_to_json(cert.host),
        "pieces": [
            {
                "graph": graph_to_json(p.piece.graph),
                "weights": [format_fraction(w) for w in p.piece.weights],
                "embedding": list(p.embedding),
                "group": list(p.group),
            }
            for p in cert.pieces
        ],
    }


def _parse_weight(text: object) -> Fraction:
    if not isinstance(text, str):
        raise GraphFormatError(f'weights are "p/q" strings, got {text!r}')
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise GraphFormatError(f"bad weight {text!r}") from e


def cert_from_json(doc: object) -> PackingCert:
    if not isinstance(doc, Mapping) or "host" not in doc or "pieces" not in doc:
        raise GraphFormatError('a certificate is an object with keys "host" and "pieces"')
    cert = PackingCert(graph_from_json(doc["host"]))
    for i, raw in enumerate(doc["pieces"]):
        if not isinstance(raw, Mapping):
            raise GraphFormatError(f"piece {i} is not an object")
        graph = graph_from_json(raw.get("graph"))
        weights = tuple(_parse_weight(w) for w in raw.get("weights", []))
        cert.pieces.append(
            PackedPiece(
                WeightedGraph(graph, weights),
                tuple(int(v) for v in raw.get("embedding", [])),
                tuple(int(x) for x in raw.get("group", [])),
            )
        )
    return cert


def read_cert(path: str | Path) -> PackingCert:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"{path}: not valid JSON ({e})") from e
    return cert_from_json(doc)


# ------------------------
# Sweep tables
# ------------------------
def sweep_csv(rows: Iterable[Mapping[str, object]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: repr(row[k]) if isinstance(row[k], float) else row[k] for k in SWEEP_COLUMNS})
    return buf.getvalue()
