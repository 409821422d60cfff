"""Constrained matchings in bipartite graphs.

A matching is constrained when no other matching of the same size covers
the same rows and columns, i.e. it is the unique perfect matching of the
subgraph induced by its matched vertices.  Equivalently its pairs admit an
ordering ``(r_1, c_1), ..., (r_t, c_t)`` with ``(r_k, c_l)`` never an edge
for ``l < k``.  Matchings are frozensets of ``(row, column)`` pairs.
"""

from __future__ import annotations

import graphlib
from typing import Iterable, Iterator, Optional

from zfc.graph_model import (
    BipartiteGraph,
    DirectedGraph,
    GraphKind,
    graph_bipartite,
)
from zfc.zero_forcing import validate_force_list

Pair = tuple[int, int]


def check_matching(b: BipartiteGraph, m: Iterable[Pair]) -> frozenset:
    m = frozenset(tuple(p) for p in m)
    rows = [r for r, _ in m]
    cols = [c for _, c in m]
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise ValueError("pairs share an endpoint; not a matching")
    missing = sorted(m - b.edges)
    if missing:
        raise ValueError(f"pairs {missing} are not edges of the bipartite graph")
    return m


def peel_certificate(b: BipartiteGraph, m: frozenset) -> Optional[list[Pair]]:
    """Triangular ordering of ``m`` built by repeatedly removing a matched
    column adjacent to a single remaining matched row (smallest column first).
    Returns ``None`` when peeling gets stuck.
    """
    partner = {c: r for r, c in m}
    rows = {r for r, _ in m}
    col_rows = {c: {r for r, cc in b.edges if cc == c and r in rows} for c in partner}
    order = []
    while col_rows:
        c = min((c for c, rs in col_rows.items() if len(rs) == 1), default=None)
        if c is None:
            return None
        r = partner[c]
        assert col_rows[c] == {r}
        order.append((r, c))
        del col_rows[c]
        for rs in col_rows.values():
            rs.discard(r)
    return order


def has_alternating_cycle(b: BipartiteGraph, m: frozenset) -> bool:
    """True iff the matched-vertex subgraph has a second perfect matching."""
    partner = {c: r for r, c in m}
    rows = {r for r, _ in m}
    deps: dict = {("r", r): set() for r in rows}
    for c, r in partner.items():
        deps[("c", c)] = {("r", r)}
    # row -> column along non-matching edges, column -> its matched row
    for r, c in b.edges:
        if r in rows and c in partner and partner[c] != r:
            deps[("r", r)].add(("c", c))
    try:
        tuple(graphlib.TopologicalSorter(deps).static_order())
    except graphlib.CycleError:
        return True
    return False


def is_constrained(b: BipartiteGraph, m: Iterable[Pair]) -> tuple[bool, Optional[list[Pair]]]:
    """Decide constrainedness by peeling and by alternating-cycle search.

    The two methods must agree; the peeling order is returned as the
    certificate when the matching is constrained.
    """
    m = check_matching(b, m)
    cert = peel_certificate(b, m)
    unique = not has_alternating_cycle(b, m)
    if (cert is not None) != unique:
        raise AssertionError(f"constrainedness checks disagree on {sorted(m)}")
    return unique, cert


def satisfies_ordering(b: BipartiteGraph, order: list[Pair]) -> bool:
    return all((order[k][0], order[l][1]) not in b.edges for k in range(len(order)) for l in range(k))


def all_matchings(b: BipartiteGraph, size: Optional[int] = None) -> Iterator[frozenset]:
    """Every matching of ``b`` (optionally only those of a given size)."""
    edges = sorted(b.edges)

    def rec(k, chosen, rows, cols):
        if size is None or len(chosen) == size:
            yield frozenset(chosen)
            if size is not None:
                return
        for idx in range(k, len(edges)):
            r, c = edges[idx]
            if r in rows or c in cols:
                continue
            chosen.append((r, c))
            yield from rec(idx + 1, chosen, rows | {r}, cols | {c})
            chosen.pop()

    yield from rec(0, [], frozenset(), frozenset())


def _max_matching_size(adj: dict[int, list[int]]) -> int:
    # augmenting paths; adj maps row -> candidate columns
    match_col: dict[int, int] = {}

    def augment(r, seen):
        for c in adj[r]:
            if c in seen:
                continue
            seen.add(c)
            if c not in match_col or augment(match_col[c], seen):
                match_col[c] = r
                return True
        return False

    return sum(1 for r in adj if augment(r, set()))


def max_constrained_matching(
    b: BipartiteGraph,
    forbidden_diagonal: Iterable[int] = (),
    *,
    forbidden_edges: Iterable[Pair] = (),
    target: Optional[int] = None,
) -> tuple[int, frozenset]:
    """Exact maximum constrained matching avoiding the given edges.

    Pairs ``(i, i)`` for ``i`` in ``forbidden_diagonal`` (and any pair in
    ``forbidden_edges``) may not be used, but they still count as edges when
    deciding constrainedness.  Branch and bound over edges in lexicographic
    order: a partial matching that is not constrained is abandoned (sub-
    matchings of constrained matchings are constrained), and a branch is
    cut when an unconstrained maximum matching of the remaining edges cannot
    beat the incumbent.  The search stops early once ``target`` is reached.
    """
    banned = {(i, i) for i in forbidden_diagonal} | {tuple(e) for e in forbidden_edges}
    edges = [e for e in sorted(b.edges) if e not in banned]
    ceiling = min(b.row_count, b.col_count, len({r for r, _ in edges}), len({c for _, c in edges}))
    if target is not None:
        ceiling = min(ceiling, target)
    best: list = [0, frozenset()]

    def bound(k, rows, cols):
        adj: dict[int, list[int]] = {}
        for r, c in edges[k:]:
            if r not in rows and c not in cols:
                adj.setdefault(r, []).append(c)
        return _max_matching_size(adj)

    def rec(k, chosen, rows, cols):
        if len(chosen) > best[0]:
            best[0], best[1] = len(chosen), frozenset(chosen)
        if best[0] >= ceiling or k == len(edges):
            return
        if len(chosen) + bound(k, rows, cols) <= best[0]:
            return
        for idx in range(k, len(edges)):
            r, c = edges[idx]
            if r in rows or c in cols:
                continue
            chosen.append((r, c))
            if peel_certificate(b, frozenset(chosen)) is not None:
                rec(idx + 1, chosen, rows | {r}, cols | {c})
            chosen.pop()
            if best[0] >= ceiling:
                return
            if len(chosen) + bound(idx + 1, rows, cols) <= best[0]:
                return

    rec(0, [], frozenset(), frozenset())
    return best[0], best[1]


def triangle_number(g: DirectedGraph) -> int:
    size, _ = max_constrained_matching(graph_bipartite(g))
    return size


def matching_to_zfs(g: DirectedGraph, m: Iterable[Pair]) -> tuple[frozenset, tuple]:
    """Zero forcing set and chronological forces read off a constrained matching.

    Unmatched rows stay black; the certificate pair ``(row, col)`` becomes
    the force ``col -> row``.
    """
    b = graph_bipartite(g)
    ok, cert = is_constrained(b, m)
    if not ok:
        raise ValueError("matching is not constrained")
    matched_rows = {r for r, _ in cert}
    s = frozenset(v for v in g.vertices if v not in matched_rows)
    forces = tuple((c, r) for r, c in cert)
    assert validate_force_list(g, GraphKind.LOOP, s, forces)
    return s, forces


def zfs_to_matching(g: DirectedGraph, s: Iterable[int], forces: Iterable[Pair]) -> frozenset:
    forces = list(forces)
    if not validate_force_list(g, GraphKind.LOOP, s, forces):
        raise ValueError("not a complete chronological list of forces under the loop rule")
    m = frozenset((y, x) for x, y in forces)
    ok, _ = is_constrained(graph_bipartite(g), m)
    assert ok
    return m

