"""Directed graphs, zero-nonzero patterns and their bipartite graphs.

Vertices are the integers ``1..n``. A :class:`Pattern` entry ``(i, j)`` is a
star exactly when the graph has an edge from ``j`` to ``i``, so column ``j``
of a pattern lists the out-neighbors of vertex ``j``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class GraphKind(enum.Enum):
    SIMPLE = "simple-directed"
    LOOP = "loop-directed"


class Entry(str, enum.Enum):
    ZERO = "0"
    STAR = "*"
    FREE = "?"


@dataclass(frozen=True)
class DirectedGraph:
    """Directed graph on vertices ``1..n``; loops ``(u, u)`` are allowed.

    Duplicate edges are rejected rather than merged.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        edges = [tuple(e) for e in self.edges]
        for e in edges:
            if len(e) != 2:
                raise ValueError(f"edge {e!r} is not a pair")
            u, v = e
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge {e!r} has an endpoint outside 1..{self.n}")
        frozen = frozenset(edges)
        if len(frozen) != len(edges):
            raise ValueError("duplicate edges in input")
        object.__setattr__(self, "edges", frozen)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def loop_vertices(self) -> frozenset:
        return frozenset(u for u, v in self.edges if u == v)

    def out_neighbors(self) -> dict[int, list[int]]:
        out = {v: [] for v in self.vertices}
        for u, v in sorted(self.edges):
            out[u].append(v)
        return out

    def in_neighbors(self) -> dict[int, list[int]]:
        inn = {v: [] for v in self.vertices}
        for u, v in sorted(self.edges):
            inn[v].append(u)
        return inn

    def is_self_damped(self) -> bool:
        return len(self.loop_vertices()) == self.n

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def check_kind(g: DirectedGraph, kind: GraphKind) -> None:
    """Raise ``ValueError`` if ``g`` cannot carry ``kind``."""
    if kind is GraphKind.SIMPLE and g.loop_vertices():
        raise ValueError(
            f"simple directed graph cannot have loops (found on {sorted(g.loop_vertices())})"
        )


def strip_loops(g: DirectedGraph) -> DirectedGraph:
    return DirectedGraph(g.n, frozenset(e for e in g.edges if e[0] != e[1]))


def add_all_loops(g: DirectedGraph) -> DirectedGraph:
    return DirectedGraph(g.n, g.edges | {(v, v) for v in g.vertices})


@dataclass(frozen=True)
class Pattern:
    """Rectangular grid over :class:`Entry`."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(tuple(Entry(x) for x in row) for row in self.entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise ValueError(f"pattern entries do not form a {self.rows}x{self.cols} grid")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Pattern":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    def __getitem__(self, ij: tuple[int, int]) -> Entry:
        i, j = ij
        return self.entries[i - 1][j - 1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def has_free(self) -> bool:
        return any(x is Entry.FREE for row in self.entries for x in row)

    def stars(self) -> list[tuple[int, int]]:
        return [
            (i + 1, j + 1)
            for i, row in enumerate(self.entries)
            for j, x in enumerate(row)
            if x is Entry.STAR
        ]

    def to_text(self) -> str:
        return "\n".join("".join(x.value for x in row) for row in self.entries)

    def __str__(self) -> str:
        return self.to_text()


def to_pattern(g: DirectedGraph) -> Pattern:
    grid = [[Entry.ZERO] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        grid[v - 1][u - 1] = Entry.STAR
    return Pattern.from_rows(grid, g.n)


def to_simple_pattern(g: DirectedGraph) -> Pattern:
    """Pattern with a free diagonal; any loops of ``g`` are ignored."""
    grid = [[Entry.ZERO] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        if u != v:
            grid[v - 1][u - 1] = Entry.STAR
    for i in range(g.n):
        grid[i][i] = Entry.FREE
    return Pattern.from_rows(grid, g.n)


def pattern_to_graph(p: Pattern) -> DirectedGraph:
    """Inverse of :func:`to_pattern` for square patterns without free entries."""
    if not p.is_square:
        raise ValueError("only square patterns describe a graph")
    if p.has_free():
        raise ValueError("pattern with free entries does not describe a loop directed graph")
    return DirectedGraph(p.rows, frozenset((j, i) for i, j in p.stars()))


def star_diagonal(p: Pattern) -> Pattern:
    if not p.is_square:
        raise ValueError("star_diagonal needs a square pattern")
    grid = [list(r) for r in p.entries]
    for i in range(p.rows):
        grid[i][i] = Entry.STAR
    return Pattern.from_rows(grid, p.cols)


def delete_rows(p: Pattern, rows: Iterable[int]) -> Pattern:
    """Drop the (1-based) ``rows`` from ``p``, keeping the others in order."""
    rows = set(rows)
    bad = [r for r in rows if not 1 <= r <= p.rows]
    if bad:
        raise IndexError(f"rows {sorted(bad)} outside 1..{p.rows}")
    kept = [r for i, r in enumerate(p.entries, start=1) if i not in rows]
    return Pattern.from_rows(kept, p.cols)


@dataclass(frozen=True)
class BipartiteGraph:
    """Row bank ``1..row_count`` and column bank ``1..col_count``."""

    row_count: int
    col_count: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        edges = [tuple(e) for e in self.edges]
        for i, j in edges:
            if not (1 <= i <= self.row_count and 1 <= j <= self.col_count):
                raise ValueError(f"edge {(i, j)!r} outside the vertex banks")
        frozen = frozenset(edges)
        if len(frozen) != len(edges):
            raise ValueError("duplicate edges in input")
        object.__setattr__(self, "edges", frozen)

    def row_adjacency(self) -> dict[int, list[int]]:
        adj = {i: [] for i in range(1, self.row_count + 1)}
        for i, j in sorted(self.edges):
            adj[i].append(j)
        return adj


def to_bipartite(p: Pattern) -> BipartiteGraph:
    """Bipartite graph with an edge ``(i, j)`` for every star of ``p``.

    Patterns containing free entries are rejected: a free cell is neither an
    edge nor a non-edge.
    """
    if p.has_free():
        raise ValueError("cannot build a bipartite graph from a pattern with free entries")
    return BipartiteGraph(p.rows, p.cols, frozenset(p.stars()))


def graph_bipartite(g: DirectedGraph) -> BipartiteGraph:
    """Edge ``(i, j)`` iff ``g`` has the edge ``j -> i``."""
    return BipartiteGraph(g.n, g.n, frozenset((v, u) for u, v in g.edges))


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise ValueError(f"matrix entries do not form a {self.rows}x{self.cols} grid")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i - 1][j - 1]

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)


def is_realization(m: RationalMatrix, p: Pattern) -> bool:
    if (m.rows, m.cols) != (p.rows, p.cols):
        raise ValueError(f"shape mismatch: matrix {m.rows}x{m.cols}, pattern {p.rows}x{p.cols}")
    for mrow, prow in zip(m.entries, p.entries):
        for x, e in zip(mrow, prow):
            if e is Entry.STAR and x == 0:
                return False
            if e is Entry.ZERO and x != 0:
                return False
    return True
