import json

import pytest

from digdef.verifier import audits

# witness keys frozen from the first confirmed run; each is re-derivable with
# `digdef embed check` on the rendered digraphs
FROZEN = {
    "cycle-arrow-reverse-chord": {"5:0890c800"},
    "pair-loop-chords": {"6:0422107200", "6:0422123200"},
    "side-by-side-chords": {"7:020880840b2000", "7:02088084432000"},
    "arrow-extra-covers": {"7:02088084032880", "7:0208808403a800"},
    "loop-arrow-extra": {"4:142b", "5:0a090380"},
    "anchored-borrowed-cycle": {"9:101020080008200c180300"},
    "loop-addition-literal": {"3:0a00|3:0180", "3:0a00|3:0480"},
}


@pytest.fixture(scope="module")
def findings(u3):
    return {f.id: f for f in audits.run_audits(u3)}


def test_all_confirmed(findings):
    assert len(findings) == len(audits.AUDITS) + 1
    assert all(f.confirmed for f in findings.values()), [f.id for f in findings.values() if not f.confirmed]


@pytest.mark.parametrize("finding_id", sorted(FROZEN))
def test_frozen_witnesses(findings, finding_id):
    assert FROZEN[finding_id] <= set(findings[finding_id].witnesses)


def test_sizes(findings):
    assert findings["arrow-family-sizes"].witnesses == ["O_2: 0", "O_3: 1"]
    assert findings["eplus-void-at-one"].witnesses == []


def test_rendering(findings):
    text = audits.render_audits(list(findings.values()))
    assert "NOT-CONFIRMED" not in text
    data = json.loads(audits.audits_json(list(findings.values())))
    assert {d["id"] for d in data} == set(findings)
