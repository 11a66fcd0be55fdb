from collections import deque

import pytest
from hypothesis import given
from hypothesis import strategies as st

from digdef import gadgets as gd
from digdef.canon import canonicalize
from digdef.digraph import strip_loops
from digdef.embed import embeds


def shortest_cycle(g):
    """Length of the shortest directed cycle, loops counting as length 1."""
    best = None
    for s in g.vertices:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.vertices:
                if not g.has_edge(v, w):
                    continue
                if w == s:
                    d = dist[v] + 1
                    best = d if best is None else min(best, d)
                elif w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
    return best


def test_basic_edge_sets():
    assert gd.path(2).edges == ((1, 2),)
    assert gd.full(1).edges == ((1, 1),)
    assert set(gd.cycle(2).edges) == {(1, 2), (2, 1)}
    assert gd.full(3).edge_count == 9
    with pytest.raises(gd.GadgetError):
        gd.cycle(1)


def test_cycle_variants():
    assert set(gd.cycle_loop(3).edges) == {(1, 2), (2, 3), (3, 1), (1, 1)}
    p = gd.cycle_pair(2)
    assert (p.n, p.edge_count) == (4, 4)
    c = gd.cycle_to_cycle(2, 3)
    assert (c.n, c.edge_count) == (5, 6) and c.has_edge(1, 3)


def test_cycle_extensions():
    # six candidate edges on O_3, three already present, all remaining chords alike
    assert len(gd.cycle_extensions(3)) == 1
    assert len(gd.cycle_extensions(2)) == 0
    assert len(gd.cycle_extensions(4)) == 2
    for n in (3, 4, 5):
        for t in gd.cycle_extensions(n):
            assert embeds(gd.cycle(n), t.canonical) and t.n == n
            assert t.canonical.edge_count == n + 1


def test_flag_counts():
    m6 = gd.flag(6)
    assert (m6.n, m6.edge_count) == (7, 7)
    m6l = gd.flag(6, looped=True)
    assert m6l.edge_count == 8 and strip_loops(m6l) == m6
    pl = gd.flag_pair_loop(2, 3)
    assert (pl.n, pl.edge_count) == (6, 8)
    with pytest.raises(gd.GadgetError):
        gd.flag_pair_loop(2, 2)
    with pytest.raises(gd.GadgetError):
        gd.flag_pair_loop(1, 3)
    with pytest.raises(gd.GadgetError):
        gd.flag(1)


@pytest.mark.parametrize("i,j", [(2, 3), (3, 2), (2, 2), (4, 3)])
def test_flag_to_flag_contains_both(i, j):
    g = gd.flag_to_flag(i, j)
    assert embeds(gd.flag(i), g) and embeds(gd.flag(j), g)
    assert g.n == i + j + 2 and g.edge_count == i + j + 3


def test_loop_arrow():
    g = gd.flag_loop_arrow(3)
    assert (g.n, g.edge_count, g.loop_count) == (5, 7, 2)


@pytest.mark.parametrize("n", range(1, 6))
def test_star_sizes(n):
    s = gd.star(n)
    assert s.n == n * n + n * (n + 1) // 2 == gd.star_size(n)
    assert s.edge_count == s.n
    ls = gd.star(n, looped=True)
    assert ls.edge_count == s.n + n and ls.loop_count == n


def test_small_star_examples():
    assert gd.star(2).n == 7
    s = gd.star(1, looped=True)
    assert (s.n, s.edge_count) == (2, 3)
    assert canonicalize(s).key == canonicalize(gd.cycle_loop(2)).key


@pytest.mark.parametrize("n", [1, 2, 3])
def test_star_shortest_cycle(n):
    assert shortest_cycle(gd.star(n)) == n + 1


def test_f_alpha_counts():
    f = gd.f_alpha(1, 1, (1,))
    assert (f.n, f.edge_count) == (4, 6)


@pytest.mark.parametrize("n,m", [(1, 2), (2, 2), (2, 3), (3, 1)])
def test_f_alpha_anchors_joined(n, m):
    for alpha in gd.all_maps(n, m):
        f = gd.f_alpha(n, m, alpha)
        for i, a in enumerate(alpha, start=1):
            assert embeds(gd.cycle_to_cycle(n + i, m + a), f)


def test_f_alpha_identity_vs_constant():
    assert canonicalize(gd.f_alpha(2, 2, (1, 2))).key != canonicalize(gd.f_alpha(2, 2, (1, 1))).key


@pytest.mark.parametrize("n,m", [(n, m) for n in (1, 2, 3) for m in (1, 2, 3)])
def test_f_family_membership_exact(n, m):
    maps = gd.all_maps(n, m)
    # distinct maps give distinct types, so membership recovers the map itself
    assert len(gd.f_family(n, m)) == len(maps)
    for a in maps:
        assert gd.f_family_member(gd.f_alpha(n, m, a), n, m) == a
    assert gd.f_family_member(gd.star(n), n, m) is None
    other = gd.f_alpha(n, m, maps[0]).add_edges([(1, 1)])
    assert gd.f_family_member(other, n, m) is None


def test_f_alpha_rejects_bad_maps():
    with pytest.raises(gd.GadgetError):
        gd.f_alpha(2, 2, (1,))
    with pytest.raises(gd.GadgetError):
        gd.f_alpha(2, 2, (1, 3))


def test_anchor():
    g = gd.anchor(gd.empty(2), (1, 2))
    assert g.n == 9
    assert canonicalize(g).key == canonicalize(gd.anchor(gd.empty(2), (2, 1))).key
    with pytest.raises(gd.GadgetError):
        gd.anchor(gd.empty(2), (1, 1))
    path = gd.path(2)
    assert canonicalize(gd.anchor(path, (1, 2))).key != canonicalize(gd.anchor(path, (2, 1))).key


def test_constants():
    assert (gd.A.n, gd.A.edge_count, gd.A.loop_count) == (3, 2, 0)
    assert (gd.I_DOUBLE.n, gd.I_DOUBLE.edge_count, gd.I_DOUBLE.loop_count) == (2, 3, 2)
    assert set(gd.small_constants("FStar", 2).edges) == {(1, 2), (2, 1), (1, 1)}
    assert set(gd.I_STAR.edges) == {(2, 2), (3, 3), (1, 2), (2, 3)}
    consts = [gd.I2, gd.L1, gd.E2, gd.A, gd.A_T, gd.I_DOUBLE, gd.I_STAR]
    assert len({canonicalize(c).key for c in consts}) == len(consts)
    assert all(c.n <= 9 for c in consts)


@given(st.integers(2, 6), st.integers(2, 6))
def test_deterministic(i, j):
    assert gd.flag_to_flag(i, j) == gd.flag_to_flag(i, j)
    if i != j:
        assert gd.flag_pair_loop(i, j) == gd.flag_pair_loop(i, j)


@pytest.mark.parametrize("spec,n", [("O:5", 5), ("Ostar:3", 15), ("male_L:4", 5), ("A", 3),
                                    ("Falpha:2,3:[1,3]", 22), ("Fstar:2", 2), ("Oto:2,3", 5)])
def test_spec_grammar(spec, n):
    g = gd.make(spec)
    assert g.n == n
    assert str(gd.parse_gadget(spec)) == spec


@pytest.mark.parametrize("spec", ["O", "O:1", "nope:3", "Falpha:2,2", "O:3:[1]", "Falpha:2,2:[1,5]", "anchor"])
def test_spec_errors(spec):
    with pytest.raises(gd.GadgetError):
        gd.make(spec)
