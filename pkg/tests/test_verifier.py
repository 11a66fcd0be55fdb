import json

import pytest

from digdef import gadgets as gd
from digdef.canon import canonicalize
from digdef.digraph import disjoint_union, strip_loops
from digdef.universe import get_universe
from digdef.verifier import registry
from digdef.verifier.context import FormulaContext, bits
from digdef.verifier.entry import first_failed
from digdef.verifier.report import FAIL, PASS, PASS_WITH_CAVEAT, SKIPPED, Mismatch, outcome, render


def keys_of(u, mask):
    return {u.types[i].key for i in bits(mask)}


def keyset(*graphs):
    return {canonicalize(g).key for g in graphs}


def test_registry_ids():
    ids = registry.ids()
    assert len(ids) == len(set(ids)) == 22
    assert ids[0] == "L4.2-E-set" and ids[-1] == "L4.27-hom"
    for e in registry.REGISTRY:
        assert e.parts and all(p.name for p in e.parts)
        assert all("male" not in e.id for e in registry.REGISTRY)


def test_unknown_id(u3):
    with pytest.raises(registry.RegistryError, match="unknown lemma id"):
        registry.verify("L9.9-nothing", u3)


def test_below_minimum():
    u1 = get_universe(1)
    with pytest.raises(registry.RegistryError, match="N below minimum"):
        registry.verify("L4.3-O-set", u1)
    by_id = {r.id: r for r in registry.verify_all(u1)}
    assert by_id["L4.3-O-set"].status == SKIPPED
    assert all(r.status != FAIL for r in by_id.values())


def test_formula_sets_u3(u3):
    c = FormulaContext(u3)
    assert keys_of(u3, c.e_set) == keyset(*(gd.empty(k) for k in (1, 2, 3)))
    assert keys_of(u3, c.l_set) == keyset(*(gd.loops(k) for k in (1, 2, 3)))
    assert [u3.types[i].key for i in c.e_plus_q(1, 2)] == [canonicalize(disjoint_union(gd.L1, strip_loops(gd.full(2)))).key]


def test_formula_o_set_u4(u4):
    c = FormulaContext(u4)
    want = keyset(gd.cycle(2), gd.cycle(3), gd.cycle(4), gd.cycle_pair(2))
    assert keys_of(u4, c.o_set) == want


def test_e_set_report(u3):
    r = registry.verify("L4.2-E-set", u3)
    assert r.status == PASS and r.checked == len(u3) and not r.mismatches


def test_l_set_caveat(u3):
    r = registry.verify("L4.2-L-set", u3)
    # L_3 is maximal only within the three-vertex truncation
    assert r.status == PASS_WITH_CAVEAT and r.caveats == 1


def test_skipped_parts_on_u2(u2):
    reports = registry.verify_all(u2)
    assert [r.id for r in reports] == registry.ids()
    assert all(r.status != FAIL for r in reports)
    parts = {(r.id, p.name): p for r in reports for p in r.parts}
    # universe-mode parts that need three or more vertices are skipped ...
    for key in [("L4.5-Eplus", "Q-witness"), ("L4.11-bundle", "flag-rel"), ("L4.13-Oij", "cycle-arrow-rel"),
                ("L4.22-Oii", "double-cycle-rel")]:
        assert parts[key].status == SKIPPED and parts[key].note.startswith("needs N >= ")
    # ... while parts that do not read the universe still run
    assert parts[("L4.13-Oij", "cycle-arrow-soundness")].status == PASS
    assert parts[("L4.5-Eplus", "E-plus")].status == PASS


def test_report_json(u3):
    r = registry.verify("L4.7-interval", u3)
    obj = json.loads(render([r]))[0]
    assert list(obj)[:7] == ["id", "status", "N", "checked", "mismatches", "caveats", "millis"]
    assert "millis" not in json.loads(render([r], timing=False))[0]
    assert obj["parts"][0]["mode"] == "universe"


def test_report_aggregation():
    bad = outcome("p", "universe", 3, [Mismatch(["1:00"], "formula-only", 2)])
    good = outcome("q", "universe", 2, [], caveats=1)
    assert bad.status == FAIL and good.status == PASS_WITH_CAVEAT
    r = registry.VerificationReport.aggregate("x", 3, [bad, good], 0)
    assert r.status == FAIL and r.checked == 5 and r.caveats == 1
    assert r.mismatches[0].to_json() == {"tuple": ["1:00"], "side": "formula-only", "clause": 2}


def test_first_failed():
    assert first_failed([lambda: True, lambda: False, lambda: 1 / 0]) == 2
    assert first_failed([lambda: True]) is None


@pytest.mark.parametrize("lemma_id", ["L4.4-bundle", "L4.9-Oarrow", "L4.22-Oii", "L4.26-identity", "L4.27-hom"])
def test_single_entries_u3(u3, lemma_id):
    assert registry.verify(lemma_id, u3).status in (PASS, PASS_WITH_CAVEAT)


def test_explicit_parts_carry_bounds(u3):
    r = registry.verify("L4.18-anchored", u3)
    assert r.status == PASS
    assert all(p.mode == "explicit" and p.justification for p in r.parts)
