"""Zero forcing under the loop and simple color change rules.

Loop rule: any vertex, black or white, whose only white out-neighbor is
``j`` (``j`` may be the vertex itself) turns ``j`` black.  Simple rule: the
forcing vertex must itself be black.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from zfc.graph_model import DirectedGraph, GraphKind, check_kind

Force = tuple[int, int]


@dataclass(frozen=True)
class PropagationResult:
    final_black: frozenset
    forces: tuple
    is_complete: bool

    def to_dict(self) -> dict:
        return {
            "complete": self.is_complete,
            "black": sorted(self.final_black),
            "forces": [list(f) for f in self.forces],
        }


def _as_vertex_set(g: DirectedGraph, vertices: Iterable[int]) -> frozenset:
    s = frozenset(vertices)
    bad = [v for v in s if not 1 <= v <= g.n]
    if bad:
        raise ValueError(f"vertices {sorted(bad)} outside 1..{g.n}")
    return s


def propagate(g: DirectedGraph, kind: GraphKind, initial_black: Iterable[int]) -> PropagationResult:
    """Apply the color change rule until nothing changes.

    The forcer is always the smallest-numbered vertex able to force, which
    is what rescanning from vertex 1 after every force would pick.
    """
    check_kind(g, kind)
    black = set(_as_vertex_set(g, initial_black))
    start = len(black)
    out = g.out_neighbors()
    inn = g.in_neighbors()
    white_count = {v: sum(1 for w in out[v] if w not in black) for v in g.vertices}
    simple = kind is GraphKind.SIMPLE

    def can_force(v: int) -> bool:
        return white_count[v] == 1 and (not simple or v in black)

    heap = [v for v in g.vertices if can_force(v)]
    heapq.heapify(heap)
    forces = []
    while heap:
        x = heapq.heappop(heap)
        if not can_force(x):
            continue
        y = next(w for w in out[x] if w not in black)
        black.add(y)
        forces.append((x, y))
        for w in inn[y]:
            white_count[w] -= 1
            if can_force(w):
                heapq.heappush(heap, w)
        if simple and can_force(y):
            heapq.heappush(heap, y)

    assert len(forces) == len(black) - start
    return PropagationResult(frozenset(black), tuple(forces), len(black) == g.n)


def is_zero_forcing_set(g: DirectedGraph, kind: GraphKind, s: Iterable[int]) -> bool:
    return propagate(g, kind, s).is_complete


def validate_force_list(
    g: DirectedGraph,
    kind: GraphKind,
    initial_black: Iterable[int],
    forces: Iterable[Force],
    require_complete: bool = True,
) -> bool:
    """Replay ``forces`` step by step and report whether each one is legal."""
    check_kind(g, kind)
    black = set(_as_vertex_set(g, initial_black))
    out = g.out_neighbors()
    for x, y in forces:
        if not (1 <= x <= g.n and 1 <= y <= g.n) or y in black:
            return False
        if kind is GraphKind.SIMPLE and x not in black:
            return False
        if [w for w in out[x] if w not in black] != [y]:
            return False
        black.add(y)
    return len(black) == g.n or not require_complete


def zero_forcing_number(g: DirectedGraph, kind: GraphKind) -> tuple[int, frozenset]:
    """Exact zero forcing number by subset enumeration.

    Subsets are tried by increasing size and lexicographically within a
    size, so the witness is the lexicographically first minimum set.
    """
    check_kind(g, kind)
    for k in range(g.n + 1):
        for s in combinations(g.vertices, k):
            if is_zero_forcing_set(g, kind, s):
                return k, frozenset(s)
    raise AssertionError("the full vertex set is always a zero forcing set")


def _applicable_forces(g, out, simple, black, forbidden) -> list[Force]:
    found = []
    for x in g.vertices:
        if simple and x not in black:
            continue
        white = [w for w in out[x] if w not in black]
        if len(white) == 1 and not (white[0] == x and x in forbidden):
            found.append((x, white[0]))
    return found


def find_force_list_avoiding(
    g: DirectedGraph,
    kind: GraphKind,
    s: Iterable[int],
    forbidden: Iterable[int],
) -> Optional[tuple]:
    """Complete chronological list of forces from ``s`` with no self-force ``i -> i``
    for ``i`` in ``forbidden``, or ``None`` if no such list exists.

    Depth-first search over every applicable force at each step; black sets
    already shown to be dead ends are memoized.
    """
    check_kind(g, kind)
    start = _as_vertex_set(g, s)
    forbidden = _as_vertex_set(g, forbidden)
    if not is_zero_forcing_set(g, kind, start):
        return None
    out = g.out_neighbors()
    simple = kind is GraphKind.SIMPLE

    failed = set()
    path: list[Force] = []
    stack = [(start, iter(_applicable_forces(g, out, simple, start, forbidden)))]
    while stack:
        black, options = stack[-1]
        if len(black) == g.n:
            return tuple(path)
        step = next(options, None)
        if step is None:
            failed.add(black)
            stack.pop()
            if path:
                path.pop()
            continue
        nxt = black | {step[1]}
        if nxt in failed:
            continue
        path.append(step)
        stack.append((nxt, iter(_applicable_forces(g, out, simple, nxt, forbidden))))
    return None


def _undirected_tree_adjacency(t: DirectedGraph) -> dict[int, list[int]]:
    if t.loop_vertices():
        raise ValueError("tree must not carry loops")
    for u, v in t.edges:
        if (v, u) not in t.edges:
            raise ValueError(f"edge {(u, v)} has no reverse; only symmetric trees are supported")
    if t.n and len(t.edges) != 2 * (t.n - 1):
        raise ValueError("graph is not a tree (wrong edge count)")
    adj = t.out_neighbors()
    if t.n:
        seen = {1}
        stack = [1]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != t.n:
            raise ValueError("graph is not a tree (disconnected)")
    return adj


def tree_path_cover(t: DirectedGraph) -> list[tuple[int, int]]:
    """Minimum path cover of a symmetric tree as a list of path endpoint pairs.

    Leaves-up greedy: a vertex continues the single open path of a child,
    joins two open child paths into one closed path, or starts a new path.
    """
    adj = _undirected_tree_adjacency(t)
    if t.n == 0:
        return []
    parent = {1: 0}
    order = [1]
    for v in order:
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)

    # far_end[v]: other endpoint of the open path ending at v, if v's path is open
    far_end: dict[int, int] = {}
    open_children: dict[int, list[int]] = {v: [] for v in t.vertices}
    paths = []
    for v in reversed(order):
        kids = sorted(open_children[v])
        if not kids:
            far_end[v] = v
        elif len(kids) == 1:
            far_end[v] = far_end[kids[0]]
        else:
            a, b = kids[0], kids[1]
            paths.append((far_end[a], far_end[b]))
            for c in kids[2:]:
                paths.append((far_end[c], c))
        if v in far_end and parent[v]:
            open_children[parent[v]].append(v)
        elif v in far_end:
            paths.append((far_end[v], v))
    return paths


def tree_min_zero_forcing_set(t: DirectedGraph) -> tuple[int, frozenset]:
    """Minimum zero forcing set of a symmetric simple tree in linear time.

    One endpoint (the smaller label) of every path in a minimum path cover.
    """
    paths = tree_path_cover(t)
    witness = frozenset(min(a, b) for a, b in paths)
    return len(witness), witness


def tree_min_rank(t: DirectedGraph) -> int:
    z, _ = tree_min_zero_forcing_set(t)
    return t.n - z
