import pytest
from hypothesis import given
from hypothesis import strategies as st

from digdef import gadgets as gd
from digdef.canon import canonicalize, is_isomorphic
from digdef.digraph import (
    Digraph,
    DigraphFormatError,
    component_vertex_sets,
    disjoint_union,
    format_digraph,
    parse_digraph,
    saturate_loops,
    strip_loops,
    to_dot,
    transpose,
)

from conftest import digraphs


def test_edges_outside_range_rejected():
    with pytest.raises(ValueError):
        Digraph.from_edges(2, [(1, 3)])


def test_empty_digraph_rejected():
    with pytest.raises(ValueError):
        Digraph(0, ())


def test_transpose_of_a():
    assert transpose(gd.A).edges == ((3, 1), (3, 2))


@given(digraphs())
def test_transpose_involution(g):
    assert transpose(transpose(g)) == g


@pytest.mark.parametrize("n", [2, 3, 5])
def test_transpose_of_cycle_is_cycle(n):
    assert is_isomorphic(transpose(gd.cycle(n)), gd.cycle(n))


def test_disjoint_union_examples():
    assert is_isomorphic(disjoint_union(gd.empty(1), gd.empty(1)), gd.empty(2))
    assert is_isomorphic(disjoint_union(gd.cycle(2), gd.cycle(2)), gd.cycle_pair(2))


@given(digraphs(max_n=3), digraphs(max_n=3))
def test_disjoint_union_counts(g, h):
    u = disjoint_union(g, h)
    assert u.n == g.n + h.n
    assert u.edge_count == g.edge_count + h.edge_count


@pytest.mark.parametrize("n", [1, 2, 4])
def test_loop_operators_on_named(n):
    assert strip_loops(gd.loops(n)) == gd.empty(n)
    assert saturate_loops(gd.empty(n)) == gd.loops(n)
    assert strip_loops(gd.full(n)).edge_count == n * (n - 1)


@given(digraphs())
def test_loop_operator_laws(g):
    assert strip_loops(saturate_loops(g)) == strip_loops(g)
    assert saturate_loops(saturate_loops(g)) == saturate_loops(g)
    assert strip_loops(g).loop_count == 0
    assert saturate_loops(g).loop_count == g.n


@given(digraphs())
def test_components_partition_vertices(g):
    sets = component_vertex_sets(g)
    assert sorted(v for s in sets for v in s) == list(g.vertices)
    where = {v: k for k, s in enumerate(sets) for v in s}
    assert all(where[u] == where[v] for u, v in g.edges)


@given(digraphs())
def test_text_round_trip(g):
    assert parse_digraph(format_digraph(g, "c")) == g


def test_parse_reports_line_numbers():
    with pytest.raises(DigraphFormatError) as e:
        parse_digraph("# header\n3\n1 2\n1 9\n")
    assert e.value.line == 4
    with pytest.raises(DigraphFormatError) as e:
        parse_digraph("3\n1 x\n")
    assert e.value.line == 2
    with pytest.raises(DigraphFormatError):
        parse_digraph("# only a comment\n")
    with pytest.raises(DigraphFormatError) as e:
        parse_digraph("0\n")
    assert e.value.line == 1


def test_dot_marks_loops():
    text = to_dot(Digraph.from_edges(2, [(1, 1), (1, 2)]))
    assert "fillcolor" in text.splitlines()[1]
    assert "fillcolor" not in text.splitlines()[2]


@given(digraphs(max_n=5), st.randoms())
def test_relabel_preserves_type(g, rnd):
    perm = list(g.vertices)
    rnd.shuffle(perm)
    assert canonicalize(g.relabel(perm)).key == canonicalize(g).key
