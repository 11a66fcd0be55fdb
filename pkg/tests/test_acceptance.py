"""One test per acceptance criterion; each records a single PASS/FAIL line,
shown in the terminal summary (and on stdout with ``-s``)."""

import time
from itertools import permutations, product

import pytest

from digdef import gadgets as gd
from digdef.canon import canonicalize, is_isomorphic
from digdef.category import (
    composition_conditions,
    decode_object,
    encode_object,
    hom_conditions,
    is_homomorphism,
    reconstruct,
    so_not_weakly_connected,
)
from digdef.counting import count_binary_relations
from digdef.digraph import Digraph, component_vertex_sets, transpose
from digdef.embed import is_embeddable
from digdef.universe import get_universe
from digdef.verifier import registry
from digdef.verifier.properties import (
    LOOP_PAIR_G,
    LOOP_PAIR_G2,
    check_loop_pair,
    loop_pair_preconditions,
    verify_loop_addition,
    verify_raising,
)
from digdef.verifier.report import FAIL, PASS, PASS_WITH_CAVEAT, render


def brute_embeds(g, h):
    if g.n > h.n:
        return False
    return any(all(h.has_edge(p[u - 1], p[v - 1]) for u, v in g.edges) for p in permutations(h.vertices, g.n))


def labeled(k):
    return [Digraph(k, rows) for rows in product(range(1 << k), repeat=k)]


@pytest.fixture(scope="module")
def u3_reports(u3):
    return registry.verify_all(u3, threads=1)


def test_embedding_oracle(u3, accept):
    graphs = [t.canonical for t in u3.types]
    start = time.perf_counter()
    bad = [(a.n, b.n) for a in graphs for b in graphs if (is_embeddable(a, b) is not None) != brute_embeds(a, b)]
    secs = time.perf_counter() - start
    # the universe's order, built by closure, must agree as well
    order_bad = sum(u3.leq(i, j) != brute_embeds(a, b) for i, a in enumerate(graphs) for j, b in enumerate(graphs))
    pairs = len(graphs) ** 2
    ok = pairs == 13456 and not bad and not order_bad and secs < 60
    assert accept("embedding-oracle", ok, f"pairs={pairs} disagreements={len(bad)} order={order_bad} {secs:.1f}s")


def test_universe_counts(u4, accept):
    got = u4.count_by_n()
    want = {n: count_binary_relations(n) for n in range(1, 5)}
    ok = got == want and list(want.values()) == [2, 10, 104, 3044]
    assert accept("universe-counts", ok, f"got={list(got.values())} oracle={list(want.values())}")


def test_poset_laws(u3, accept):
    size = len(u3)
    r = range(size)
    refl = all(u3.leq(i, i) for i in r)
    anti = all(i == j or not (u3.leq(i, j) and u3.leq(j, i)) for i in r for j in r)
    trans = all(not (u3.leq(i, j) and u3.leq(j, k)) or u3.leq(i, k) for i in r for j in r for k in r)
    covers = all(
        u3.covers(i, j) == (i != j and u3.leq(i, j) and not any(k not in (i, j) and u3.leq(i, k) and u3.leq(k, j) for k in r))
        for i in r for j in r
    )
    t = [u3.index_of(canonicalize(transpose(u3.graph(i))).canonical) for i in r]
    auto = sorted(t) == list(r) and all(u3.leq(i, j) == u3.leq(t[i], t[j]) for i in r for j in r)
    ok = refl and anti and trans and covers and auto
    assert accept("poset-laws", ok, f"reflexive={refl} antisymmetric={anti} transitive={trans} covers={covers} transpose={auto}")


def _suite(reports, N):
    bad = [r.id for r in reports if r.status not in (PASS, PASS_WITH_CAVEAT) and registry.entry(r.id).min_n <= N]
    fails = [r.id for r in reports if r.status == FAIL]
    return bad, fails


def test_lemma_suite_u3(u3_reports, accept):
    bad, fails = _suite(u3_reports, 3)
    ok = not bad and not fails and len(u3_reports) == len(registry.ids())
    assert accept("lemma-suite-U3", ok, f"entries={len(u3_reports)} not-passing={bad} fail={fails}")


@pytest.mark.slow
def test_lemma_suite_u4(u4, accept):
    start = time.perf_counter()
    reports = registry.verify_all(u4, threads=1)
    bad, fails = _suite(reports, 4)
    ok = not bad and not fails
    assert accept("lemma-suite-U4", ok, f"entries={len(reports)} not-passing={bad} {time.perf_counter() - start:.0f}s")


def test_loop_addition(accept):
    pre = loop_pair_preconditions()
    assert all(pre.values()), f"loop pair preconditions: {pre}"
    counts, wrong, distinct3 = {}, 0, 0
    for n in (2, 3):
        res = verify_loop_addition(n)
        counts[n] = len(res)
        wrong += sum(r.criterion != r.distinct for r in res)
        if n == 3:
            distinct3 = sum(r.distinct and r.criterion for r in res)
    pair = check_loop_pair(LOOP_PAIR_G, LOOP_PAIR_G2, 3)
    ok = wrong == 0 and distinct3 >= 1 and pair.distinct and pair.criterion and all(counts.values())
    assert accept("loop-addition", ok, f"pairs={counts} wrong={wrong} distinct-at-3={distinct3} named-pair={pair.criterion}")


def test_raising(accept):
    r = verify_raising(3)
    ok = not r.violations and r.embeddings > 0
    assert accept("raising", ok, f"pairs={r.pairs} embeddings={r.embeddings} raised={r.raised} violations={len(r.violations)}")


def test_category_model(u4, accept):
    recon = sum(not is_isomorphic(reconstruct(u4.graph(i)), u4.graph(i)) for i in range(len(u4)))

    trips = 0
    trip_bad = 0
    for k in (1, 2, 3):
        for g in labeled(k):
            for order in permutations(g.vertices):
                trips += 1
                back = decode_object(encode_object(g, order).encoded)
                trip_bad += back.plain != g or back.order != order

    hom_checked = hom_bad = 0
    for n, m in product((1, 2), repeat=2):
        for g in labeled(n):
            for h in labeled(m):
                for vo in permutations(g.vertices):
                    for wo in permutations(h.vertices):
                        x, y = encode_object(g, vo), encode_object(h, wo)
                        for alpha in gd.all_maps(n, m):
                            hom_checked += 1
                            want = is_homomorphism(x.cd_object, y.cd_object, alpha)
                            got = hom_conditions(x.encoded, gd.f_alpha(n, m, alpha), y.encoded, n, m)
                            hom_bad += want != got

    comp_checked = comp_bad = 0
    for n, m, l in product((1, 2), repeat=3):
        for a in gd.all_maps(n, m):
            for b in gd.all_maps(m, l):
                for c in gd.all_maps(n, l):
                    if composition_conditions(gd.f_alpha(n, m, a), gd.f_alpha(m, l, b), gd.f_alpha(n, l, c), n, m, l):
                        comp_checked += 1
                        comp_bad += c != tuple(b[x - 1] for x in a)

    # one satisfying γ per (α, β) means the conditions also pick out β∘α exactly
    pairs = sum(m ** n * l ** m for n, m, l in product((1, 2), repeat=3))
    ok = recon == 0 and trip_bad == 0 and hom_bad == 0 and comp_bad == 0 and comp_checked == pairs
    assert accept("category-model", ok, f"reconstruct={len(u4)}/{recon} round-trips={trips}/{trip_bad} "
                  f"hom={hom_checked}/{hom_bad} compose={comp_checked}/{comp_bad}")


def test_second_order_connectivity(u4, accept):
    bad = [u4.types[i].hex for i in range(len(u4))
           if so_not_weakly_connected(u4.graph(i)) != (len(component_vertex_sets(u4.graph(i))) > 1)]
    ok = len(u4) == 3160 and not bad
    assert accept("weak-connectivity", ok, f"types={len(u4)} disagreements={len(bad)}")


def test_determinism(u3, u3_reports, accept):
    first = render(u3_reports, timing=False)
    again = render(registry.verify_all(u3, threads=1), timing=False)
    wide = render(registry.verify_all(u3, threads=8), timing=False)
    ok = first == again == wide
    assert accept("determinism", ok, f"bytes={len(first)} rerun-equal={first == again} threads8-equal={first == wide}")
