from digdef import gadgets as gd
from digdef.digraph import disjoint_union
from digdef.embed import iter_embeddings
from digdef.verifier import explicit as ex
from digdef.verifier.properties import (
    LOOP_PAIR_G,
    LOOP_PAIR_G2,
    LOOP_PAIR_WITNESS,
    check_loop_pair,
    check_raising_pair,
    loop_pair_preconditions,
    loop_pair_witness_works,
    qualifying_loop_pairs,
    verify_loop_addition,
    verify_raising,
)


def test_raising_small():
    r = verify_raising(2)
    assert not r.violations and r.embeddings > 0


def test_raising_edgeless_pair():
    embeddings, raised, bad = check_raising_pair(gd.E2, gd.E2, 2)
    assert embeddings > 0 and not bad


def test_raising_loop_pair_embeddings():
    embeddings, raised, bad = check_raising_pair(LOOP_PAIR_G, LOOP_PAIR_G2, 3)
    assert embeddings > 0 and not bad
    assert list(iter_embeddings(LOOP_PAIR_G, disjoint_union(LOOP_PAIR_G2, gd.star(3))))


def test_loop_identity_pairs_fail_criterion():
    for n in (1, 2, 3):
        for r in verify_loop_addition(n):
            if not r.distinct:
                assert not r.criterion


def test_loop_biconditional_two():
    res = verify_loop_addition(2)
    assert res and all(r.criterion == r.distinct for r in res)


def test_loop_pair_counterexample():
    pre = loop_pair_preconditions()
    assert all(pre.values()), pre
    r = check_loop_pair(LOOP_PAIR_G, LOOP_PAIR_G2, 3)
    assert r.distinct and r.criterion
    assert loop_pair_witness_works()
    assert ex.leq(LOOP_PAIR_G, LOOP_PAIR_WITNESS) and ex.same_strip(LOOP_PAIR_G, LOOP_PAIR_WITNESS)


def test_qualifying_pairs_have_equal_loop_counts():
    for g, h in qualifying_loop_pairs(3):
        assert g.loop_count == h.loop_count and ex.same_strip(g, h)
