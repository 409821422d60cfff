"""Text and JSON encodings of graphs, patterns, matrices and matchings."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from zfc.graph_model import DirectedGraph, GraphKind, Pattern, RationalMatrix, check_kind


class FormatError(ValueError):
    """Malformed input document."""


def graph_to_dict(g: DirectedGraph, kind: GraphKind = GraphKind.LOOP) -> dict[str, Any]:
    return {"n": g.n, "kind": kind.value, "edges": [list(e) for e in g.sorted_edges()]}


def graph_from_dict(doc: Any) -> tuple[DirectedGraph, GraphKind]:
    if not isinstance(doc, dict):
        raise FormatError("graph document must be a JSON object")
    try:
        n = doc["n"]
        edges = doc.get("edges", [])
        kind = GraphKind(doc.get("kind", GraphKind.LOOP.value))
    except KeyError as exc:
        raise FormatError(f"graph document is missing {exc}") from None
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    if not isinstance(n, int) or isinstance(n, bool):
        raise FormatError("'n' must be an integer")
    if not isinstance(edges, list) or not all(
        isinstance(e, list) and len(e) == 2 and all(type(x) is int for x in e) for e in edges
    ):
        raise FormatError("'edges' must be a list of [from, to] integer pairs")
    try:
        g = DirectedGraph(n, [tuple(e) for e in edges])
        check_kind(g, kind)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return g, kind


def dumps_graph(g: DirectedGraph, kind: GraphKind = GraphKind.LOOP) -> str:
    return json.dumps(graph_to_dict(g, kind))


def loads_graph(text: str) -> tuple[DirectedGraph, GraphKind]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid graph JSON: {exc}") from None
    return graph_from_dict(doc)


def loads_pattern(text: str) -> Pattern:
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if not lines:
        return Pattern(0, 0, ())
    width = len(lines[0])
    if any(len(line) != width for line in lines):
        raise FormatError("pattern rows have different lengths")
    bad = {c for line in lines for c in line} - {"*", "0", "?"}
    if bad:
        raise FormatError(f"unexpected pattern characters {sorted(bad)}")
    return Pattern.from_rows([list(line) for line in lines], width)


def dumps_pattern(p: Pattern) -> str:
    return p.to_text()


def loads_matrix(text: str) -> RationalMatrix:
    rows = [line.split() for line in text.strip().splitlines() if line.strip()]
    if not rows:
        return RationalMatrix(0, 0, ())
    if any(len(r) != len(rows[0]) for r in rows):
        raise FormatError("matrix rows have different lengths")
    try:
        return RationalMatrix.from_rows([[Fraction(x) for x in r] for r in rows])
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad matrix entry: {exc}") from None


def dumps_matrix(m: RationalMatrix) -> str:
    return m.to_text()


def matching_to_dict(matching, constrained: bool) -> dict[str, Any]:
    return {"edges": [list(e) for e in sorted(matching)], "constrained": constrained}


def matching_from_dict(doc: Any) -> tuple[frozenset, bool]:
    try:
        edges = frozenset((int(i), int(j)) for i, j in doc["edges"])
        return edges, bool(doc["constrained"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad matching document: {exc}") from None
