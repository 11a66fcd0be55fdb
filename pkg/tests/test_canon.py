from itertools import permutations

import pytest
from hypothesis import given

from digdef import gadgets as gd
from digdef.canon import canonicalize, key_hex
from digdef.digraph import Digraph

from conftest import digraphs


def test_cycle_relabelings_share_key():
    c = gd.cycle(3)
    keys = {canonicalize(c.relabel(p)).key for p in permutations(c.vertices)}
    assert len(keys) == 1


def test_named_distinctions():
    assert canonicalize(gd.A).key != canonicalize(gd.A_T).key
    assert canonicalize(gd.empty(2)).key != canonicalize(gd.path(2)).key


@given(digraphs(max_n=5))
def test_idempotent(g):
    c = canonicalize(g)
    assert canonicalize(c.canonical).canonical == c.canonical


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_orbit_constant(n):
    g = Digraph.from_edges(n, [(1, 1)] + [(i, i + 1) for i in range(1, n)])
    keys = {canonicalize(g.relabel(p)).key for p in permutations(g.vertices)}
    assert len(keys) == 1


def test_key_rendering_includes_vertex_count():
    c = canonicalize(gd.loops(1))
    assert c.hex == "1:80"
    assert key_hex(c.key) == c.hex
    assert canonicalize(gd.empty(1)).hex != canonicalize(gd.empty(2)).hex


def test_large_digraphs_by_components():
    g = gd.star(3)
    h = g.relabel(list(reversed(g.vertices)))
    assert canonicalize(g).key == canonicalize(h).key
    assert canonicalize(g).key != canonicalize(gd.star(3, looped=True)).key
