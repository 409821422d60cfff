import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zfc.graph_model import (
    BipartiteGraph,
    DirectedGraph,
    Entry,
    GraphKind,
    Pattern,
    RationalMatrix,
    add_all_loops,
    check_kind,
    delete_rows,
    graph_bipartite,
    is_realization,
    pattern_to_graph,
    star_diagonal,
    strip_loops,
    to_bipartite,
    to_pattern,
    to_simple_pattern,
)
from zfc.controllability import sample_realization
from zfc.formats import loads_pattern


def P(text):
    return loads_pattern(text)


@st.composite
def digraphs(draw, max_n=6):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1)]
    edges = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return DirectedGraph(n, edges)


def test_to_pattern_looped(g_star):
    assert to_pattern(g_star) == P("**0\n*00\n**0")


def test_to_pattern_trivial():
    assert to_pattern(DirectedGraph(1, set())) == P("0")


def test_to_pattern_undamped(g_tri):
    assert to_pattern(g_tri) == P("0*0\n*00\n**0")


def test_simple_pattern(g_star, g_star_simple):
    expected = P("?*0\n*?0\n**?")
    assert to_simple_pattern(g_star_simple) == expected
    assert to_simple_pattern(g_star) == expected
    assert to_simple_pattern(DirectedGraph(1, set())) == P("?")


def test_loop_transforms(g_star, g_tri):
    assert strip_loops(g_star).edges == {(2, 1), (1, 2), (1, 3), (2, 3)}
    assert add_all_loops(g_tri).edges == g_tri.edges | {(1, 1), (2, 2), (3, 3)}
    full = add_all_loops(g_tri)
    assert add_all_loops(full) == full


def test_star_diagonal_and_delete_rows(g_tri):
    a = to_pattern(g_tri)
    assert star_diagonal(a) == P("**0\n**0\n***")
    assert delete_rows(a, {1}) == P("*00\n**0")
    assert delete_rows(a, set()) == a
    with pytest.raises(IndexError):
        delete_rows(a, {4})
    with pytest.raises(ValueError):
        star_diagonal(delete_rows(a, {1}))


def test_to_bipartite(g_star, g_tri):
    assert to_bipartite(star_diagonal(to_pattern(g_tri))).edges == {
        (1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)
    }
    assert to_bipartite(P("00\n00")).edges == frozenset()
    assert to_bipartite(to_pattern(g_star)).edges == {(1, 1), (1, 2), (2, 1), (3, 1), (3, 2)}
    with pytest.raises(ValueError):
        to_bipartite(P("?*\n*?"))


A1 = RationalMatrix.from_rows([[-3, 1, 0], [9, 0, 0], [-5, -4, 0]])
A2 = RationalMatrix.from_rows([[0, 1, 0], [2, -3, 0], [1, -4, 8]])


def test_is_realization(g_star, g_star_simple):
    a_s, a = to_simple_pattern(g_star_simple), to_pattern(g_star)
    assert is_realization(A1, a_s) and is_realization(A1, a)
    assert is_realization(A2, a_s) and not is_realization(A2, a)
    assert is_realization(RationalMatrix.from_rows([[0, 0], [0, 0]]), P("??\n??"))
    with pytest.raises(ValueError):
        is_realization(A1, P("??\n??"))


def test_rational_matrix_is_exact():
    m = RationalMatrix.from_rows([["1/3", 2]])
    assert m[1, 1] == Fraction(1, 3) and isinstance(m[1, 2], Fraction)


def test_graph_validation():
    with pytest.raises(ValueError):
        DirectedGraph(2, [(1, 2), (1, 2)])
    with pytest.raises(ValueError):
        DirectedGraph(2, [(1, 3)])
    with pytest.raises(ValueError):
        check_kind(DirectedGraph(1, [(1, 1)]), GraphKind.SIMPLE)
    check_kind(DirectedGraph(2, [(1, 2)]), GraphKind.SIMPLE)
    assert DirectedGraph(0, []).vertices == range(1, 1)
    with pytest.raises(ValueError):
        BipartiteGraph(2, 1, [(1, 2)])


def test_loop_vertices_are_derived(g_star):
    assert g_star.loop_vertices() == {1}
    assert not g_star.is_self_damped()
    assert add_all_loops(g_star).is_self_damped()


@given(digraphs())
def test_pattern_round_trip(g):
    p = to_pattern(g)
    assert not p.has_free()
    assert pattern_to_graph(p) == g


@given(digraphs())
def test_bipartite_matches_graph_definition(g):
    assert to_bipartite(to_pattern(g)) == graph_bipartite(g)
    assert all((u, v) in g.edges for v, u in graph_bipartite(g).edges)


@given(digraphs())
def test_loop_transforms_idempotent(g):
    assert strip_loops(strip_loops(g)) == strip_loops(g)
    assert add_all_loops(add_all_loops(g)) == add_all_loops(g)
    assert strip_loops(add_all_loops(g)) == strip_loops(g)


@given(digraphs(), st.data())
def test_delete_rows_shape(g, data):
    p = to_pattern(g)
    rows = data.draw(st.sets(st.sampled_from(range(1, g.n + 1)))) if g.n else set()
    q = delete_rows(p, rows)
    assert q.cols == p.cols and q.rows == p.rows - len(rows)


@given(digraphs(), st.integers(0, 10**6))
def test_loop_realizations_fit_simple_pattern(g, seed):
    a = sample_realization(to_pattern(g), seed)
    assert is_realization(a, to_pattern(g))
    assert is_realization(a, to_simple_pattern(g))


def test_pattern_entries_enum():
    p = Pattern.from_rows([["*", "0", "?"]])
    assert p[1, 1] is Entry.STAR and p[1, 3] is Entry.FREE
    assert str(p) == "*0?"
