import itertools
import random

import pytest

from zfc.graph_model import DirectedGraph, GraphKind

# a looped 3-vertex graph and its loop-free version (also used as an undamped system)
G_STAR_EDGES = {(1, 1), (2, 1), (1, 2), (1, 3), (2, 3)}
G_TRI_EDGES = {(2, 1), (1, 2), (1, 3), (2, 3)}


@pytest.fixture
def g_star():
    return DirectedGraph(3, G_STAR_EDGES)


@pytest.fixture
def g_star_simple():
    return DirectedGraph(3, G_TRI_EDGES)


@pytest.fixture
def g_tri():
    return DirectedGraph(3, G_TRI_EDGES)


def random_digraph(rng, n, p=None, loops=True):
    p = rng.random() if p is None else p
    return DirectedGraph(
        n,
        {(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if (loops or u != v) and rng.random() < p},
    )


def random_tree(rng, n):
    edges = set()
    for v in range(2, n + 1):
        u = rng.randint(1, v - 1)
        edges |= {(u, v), (v, u)}
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return DirectedGraph(n, {(perm[u - 1], perm[v - 1]) for u, v in edges})


def subsets(n):
    for k in range(n + 1):
        yield from itertools.combinations(range(1, n + 1), k)


def brute_propagate(g, kind, black):
    """Naive rescan-from-vertex-1 propagation."""
    black = set(black)
    forces = []
    changed = True
    while changed:
        changed = False
        for x in range(1, g.n + 1):
            if kind is GraphKind.SIMPLE and x not in black:
                continue
            white = [w for (u, w) in sorted(g.edges) if u == x and w not in black]
            if len(white) == 1:
                black.add(white[0])
                forces.append((x, white[0]))
                changed = True
                break
    return black, forces


def brute_zf_number(g, kind):
    for s in subsets(g.n):
        if len(brute_propagate(g, kind, s)[0]) == g.n:
            return len(s)


def unique_perfect(edges, m):
    """Count perfect matchings on the matched vertices of ``m`` by permutations."""
    rows = sorted(r for r, _ in m)
    cols = sorted(c for _, c in m)
    count = 0
    for perm in itertools.permutations(cols):
        if all((r, c) in edges for r, c in zip(rows, perm)):
            count += 1
    return count == 1


def brute_matchings(edges, forbidden=()):
    edges = sorted(e for e in edges if e not in set(forbidden))
    for k in range(len(edges) + 1):
        for combo in itertools.combinations(edges, k):
            if len({r for r, _ in combo}) == k and len({c for _, c in combo}) == k:
                yield frozenset(combo)


def brute_max_constrained(edges, forbidden=()):
    best = 0
    for m in brute_matchings(edges, forbidden):
        if len(m) > best and unique_perfect(edges, m):
            best = len(m)
    return best


@pytest.fixture
def rng():
    return random.Random(20240611)
