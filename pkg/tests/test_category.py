from itertools import permutations, product

import pytest

from digdef import gadgets as gd
from digdef.canon import is_isomorphic
from digdef.category import (
    F1_MOR,
    F2_MOR,
    CategoryError,
    MorphismTriple,
    ShapeError,
    compose,
    composition_conditions,
    decode_object,
    encode_morphism,
    encode_object,
    hom_conditions,
    hom_maps,
    identity,
    identity_conditions,
    is_epi,
    is_epi_categorical,
    is_homomorphism,
    is_mono,
    is_mono_categorical,
    point,
    reconstruct,
    represent_relation,
    represent_subset,
    so_not_weakly_connected,
)
from digdef.digraph import Digraph, disjoint_union
from digdef.universe import enumerate_types


def small_objects(k):
    """Every labeled digraph on ``k`` vertices."""
    return [Digraph(k, rows) for rows in product(range(1 << k), repeat=k)]


def test_triple_validation():
    with pytest.raises(CategoryError):
        MorphismTriple(gd.I2, (1, 1), gd.E1)
    with pytest.raises(CategoryError):
        MorphismTriple(gd.I2, (1,), gd.I2)
    f = MorphismTriple(gd.I2, (1, 1), gd.L1)
    assert MorphismTriple.from_json(f.to_json()) == f
    assert f.to_json() == {"src": {"n": 2, "edges": [[1, 2]]}, "map": [1, 1], "dst": {"n": 1, "edges": [[1, 1]]}}


def test_compose_examples():
    x = gd.cycle(3)
    h = MorphismTriple(gd.I2, (2, 3), x)
    assert compose(F1_MOR, h) == MorphismTriple(gd.E1, (2,), x)
    assert compose(F2_MOR, h) == MorphismTriple(gd.E1, (3,), x)
    assert compose(h, identity(x)) == h and compose(identity(gd.I2), h) == h
    with pytest.raises(CategoryError):
        compose(h, identity(gd.cycle(2)))


def test_associativity_small():
    objs = small_objects(1) + small_objects(2)
    for a, b, c, d in [(gd.E2, gd.I2, gd.L1, gd.I_DOUBLE), (gd.E1, gd.E2, gd.cycle(2), gd.full(2))]:
        for f in hom_maps(a, b):
            for g in hom_maps(b, c):
                for hm in hom_maps(c, d):
                    F, G, H = MorphismTriple(a, f, b), MorphismTriple(b, g, c), MorphismTriple(c, hm, d)
                    assert compose(compose(F, G), H) == compose(F, compose(G, H))
    assert len(objs) == 2 + 16


def test_hom_maps_match_brute_force():
    for a in small_objects(2):
        for b in small_objects(2):
            want = [m for m in product((1, 2), repeat=2) if is_homomorphism(a, b, m)]
            assert hom_maps(a, b) == want


def test_mono_epi_examples():
    i = identity(gd.cycle(3))
    assert is_mono(i) and is_epi(i) and is_mono_categorical(i) and is_epi_categorical(i)
    assert is_mono(F1_MOR) and not is_epi(F1_MOR)
    assert is_mono_categorical(F1_MOR) and not is_epi_categorical(F1_MOR)
    c = MorphismTriple(gd.I2, (1, 1), gd.full(1))
    assert is_epi(c) and not is_mono(c)
    assert is_epi_categorical(c) and not is_mono_categorical(c)


def test_mono_epi_two_ways_small():
    objs = small_objects(1) + small_objects(2)
    tests = [t.canonical for t in enumerate_types(3)]
    for a in objs:
        for b in objs:
            for m in hom_maps(a, b):
                f = MorphismTriple(a, m, b)
                assert is_mono(f) == is_mono_categorical(f, tests)
                assert is_epi(f) == is_epi_categorical(f, tests)


@pytest.mark.parametrize("x", [gd.I2, gd.L1, gd.empty(3), gd.cycle(3), gd.A, gd.I_STAR])
def test_reconstruct_examples(x):
    assert is_isomorphic(reconstruct(x), x)


def test_reconstruct_edgeless_has_no_edges():
    assert reconstruct(gd.empty(3)).edge_count == 0


def test_encode_examples():
    enc = encode_object(gd.E1, (1,))
    assert (enc.encoded.n, enc.encoded.edge_count) == (3, 3)
    with pytest.raises(ShapeError):
        decode_object(gd.cycle(5))
    with pytest.raises(ShapeError):
        decode_object(gd.empty(9))


def test_decode_round_trip_small():
    for k in (1, 2):
        for g in small_objects(k):
            for order in permutations(g.vertices):
                back = decode_object(encode_object(g, order).encoded)
                assert back.plain == g and back.order == order


def test_decode_rejects_broken_anchor():
    enc = encode_object(gd.E2, (1, 2))
    # redirect the first anchor onto the second plain vertex
    x = enc.encoded.remove_edges([(3, 1)]).add_edges([(3, 2)])
    with pytest.raises(ShapeError):
        decode_object(x)
    with pytest.raises(ShapeError):
        decode_object(enc.encoded.add_edges([(3, 5)]))


def test_encode_morphism():
    one = encode_object(gd.E1, (1,))
    assert encode_morphism(one, (1,), one) == gd.f_alpha(1, 1, (1,))
    loop = encode_object(gd.L1, (1,))
    two = encode_object(gd.I2, (1, 2))
    assert encode_morphism(two, (1, 1), loop) == gd.f_alpha(2, 1, (1, 1))
    with pytest.raises(CategoryError):
        encode_morphism(two, (1, 1), one)


def test_hom_conditions_examples():
    src = encode_object(gd.I2, (1, 2))
    dst = encode_object(gd.E2, (1, 2))
    ok = encode_object(gd.L1, (1,))
    assert hom_conditions(src.encoded, gd.f_alpha(2, 1, (1, 1)), ok.encoded, 2, 1)
    assert not hom_conditions(src.encoded, gd.f_alpha(2, 2, (1, 2)), dst.encoded, 2, 2)
    assert not hom_conditions(src.encoded, gd.star(2), dst.encoded, 2, 2)


def test_identity_and_composition_conditions():
    assert identity_conditions(gd.f_alpha(2, 2, (1, 2)), 2)
    assert not identity_conditions(gd.f_alpha(2, 2, (2, 1)), 2)
    a, b = gd.f_alpha(2, 2, (2, 1)), gd.f_alpha(2, 1, (1, 1))
    assert composition_conditions(a, b, gd.f_alpha(2, 1, (1, 1)), 2, 2, 1)
    swap = gd.f_alpha(2, 2, (2, 1))
    assert composition_conditions(swap, swap, gd.f_alpha(2, 2, (1, 2)), 2, 2, 2)
    assert not composition_conditions(swap, swap, swap, 2, 2, 2)


def test_subset_representation():
    a = gd.cycle(3)
    rep = represent_subset(a, {1, 2, 3})
    assert sorted(rep.p.map) == [1, 2, 3]
    one = represent_subset(a, {2})
    assert [v for v in a.vertices if one.contains(point(a, v))] == [2]
    empty = represent_subset(a, ())
    assert empty.p is None and not any(empty.contains(point(a, v)) for v in a.vertices)
    with pytest.raises(CategoryError):
        represent_subset(a, {4})


def test_all_relations_on_i2():
    a = gd.I2
    pairs = [(x, y) for x in a.vertices for y in a.vertices]
    for mask in range(16):
        r = {p for k, p in enumerate(pairs) if mask >> k & 1}
        rep = represent_relation([a, a], r)
        got = {(x, y) for x, y in pairs if rep.contains([point(a, x), point(a, y)])}
        assert got == r
        assert rep.tuples == frozenset(r)


def test_singleton_relation():
    rep = represent_relation([gd.cycle(3)], [(2,)])
    x = gd.cycle(3)
    assert [v for v in x.vertices if rep.contains([point(x, v)])] == [2]
    with pytest.raises(CategoryError):
        represent_relation([x], [(4,)])


def test_not_weakly_connected_examples():
    assert so_not_weakly_connected(gd.E2)
    assert not so_not_weakly_connected(gd.cycle(3))
    assert so_not_weakly_connected(disjoint_union(gd.I2, gd.L1), exhaustive=True)
    assert not so_not_weakly_connected(gd.E1)
