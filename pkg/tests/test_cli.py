import json

import pytest

from digdef import gadgets as gd
from digdef.cli import run
from digdef.digraph import format_digraph, parse_digraph


@pytest.fixture()
def here(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("DIGDEF_CACHE", str(tmp_path / "cache"))
    return tmp_path


def write(path, g):
    path.write_text(format_digraph(g))
    return str(path)


@pytest.fixture(scope="module")
def u3_file(tmp_path_factory):
    out = tmp_path_factory.mktemp("u") / "u3.bin"
    assert run(["universe", "build", "--n", "3", "--out", str(out)]) == 0
    return str(out)


def test_universe_build_and_info(here, capsys):
    assert run(["universe", "build", "--n", "3", "--out", "u3.bin"]) == 0
    out, err = capsys.readouterr()
    assert out == "types=116\n" and "wrote u3.bin" in err
    assert run(["universe", "info", "--universe", "u3.bin"]) == 0
    assert capsys.readouterr().out == "N=3 types=116 per_vertex=2,10,104\n"


def test_universe_default_cache(here, capsys):
    assert run(["universe", "build", "--n", "2"]) == 0
    assert (here / "cache" / "universe-N2-v1.bin").exists()


def test_embed_check(here, capsys):
    g, h = write(here / "g.dg", gd.path(2)), write(here / "h.dg", gd.cycle(3))
    assert run(["embed", "check", g, h, "--json", "e.json"]) == 0
    out = capsys.readouterr().out.strip()
    pairs = dict(p.split("->") for p in out.split())
    assert set(pairs) == {"1", "2"}
    assert gd.cycle(3).has_edge(int(pairs["1"]), int(pairs["2"]))
    assert json.loads((here / "e.json").read_text())["embeddable"] is True
    loop = write(here / "l.dg", gd.L1)
    assert run(["embed", "check", loop, h]) == 0
    assert capsys.readouterr().out == "NOT-EMBEDDABLE\n"


def test_malformed_input(here, capsys):
    (here / "bad.dg").write_text("3\n1 2\n2 7\n")
    good = write(here / "g.dg", gd.E1)
    assert run(["embed", "check", "bad.dg", good]) == 2
    assert "line 3" in capsys.readouterr().err
    assert run(["embed", "check", "missing.dg", good]) == 2


def test_gadget_make(here, capsys):
    assert run(["gadget", "make", "O:5", "--out", "o5.dg"]) == 0
    assert parse_digraph((here / "o5.dg").read_text()) == gd.cycle(5)
    assert run(["gadget", "make", "Oarrow:4"]) == 0
    assert capsys.readouterr().out.count("key=") == 2
    assert run(["gadget", "make", "male_L:3", "--dot"]) == 0
    assert capsys.readouterr().out.startswith("digraph")
    assert run(["gadget", "make", "O:1"]) == 2
    assert run(["gadget", "make", "bogus"]) == 2


def test_gadget_then_embed_reproduces_cover_note(here, capsys):
    assert run(["gadget", "make", "O:3", "--out", "o3.dg"]) == 0
    assert run(["gadget", "make", "Oarrow:3", "--out", "x.dg"]) == 0
    assert run(["embed", "check", "o3.dg", "x.dg"]) == 0
    assert "NOT-EMBEDDABLE" not in capsys.readouterr().out


def test_encode_decode(here, capsys):
    g = write(here / "g.dg", gd.path(2))
    assert run(["encode", g, "--order", "2,1", "--out", "x.dg"]) == 0
    assert parse_digraph((here / "x.dg").read_text()).n == 9
    assert run(["decode", "x.dg"]) == 0
    out = capsys.readouterr().out
    assert "order=2,1" in out and parse_digraph(out) == gd.path(2)
    assert run(["encode", g, "--order", "1,1"]) == 2
    bad = write(here / "o5.dg", gd.cycle(5))
    assert run(["decode", bad]) == 2
    assert "shape error" in capsys.readouterr().err


def test_verify_single_and_list(u3_file, here, capsys):
    assert run(["verify", "list"]) == 0
    assert capsys.readouterr().out.count("\n") == 22
    assert run(["verify", "L4.2-E-set", "--universe", u3_file, "--json", "r.json"]) == 0
    rep = json.loads((here / "r.json").read_text())
    assert rep[0]["id"] == "L4.2-E-set" and rep[0]["status"] == "PASS"
    assert run(["verify", "L0-none", "--universe", u3_file]) == 2
    assert run(["verify", "L4.2-E-set"]) == 2


def test_verify_all(u3_file, here, capsys):
    assert run(["verify", "all", "--universe", u3_file, "--json", "report.json", "--threads", "4"]) == 0
    data = json.loads((here / "report.json").read_text())
    assert len(data) == 22 and all(r["status"] != "FAIL" for r in data)


def test_verify_audits(here, capsys):
    assert run(["verify", "audits", "--json", "a.json"]) == 0
    assert "NOT-CONFIRMED" not in capsys.readouterr().out
    assert all(f["confirmed"] for f in json.loads((here / "a.json").read_text()))


def test_export(u3_file, here, capsys):
    assert run(["export", "json", "--universe", u3_file, "--max-vertices", "2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["N"] == 3 and len(data["types"]) == 12
    assert run(["export", "hasse", "--universe", u3_file, "--max-vertices", "1", "--out", "h.dot"]) == 0
    assert (here / "h.dot").read_text().count("->") == 1
    g = write(here / "a.dg", gd.A)
    assert run(["export", "dot", g]) == 0
    assert "digraph" in capsys.readouterr().out
    assert run(["export", "pdf", "--universe", u3_file]) == 2


@pytest.mark.parametrize("argv", [[], ["fly"], ["universe"], ["universe", "build"], ["universe", "build", "--n", "0"],
                                  ["universe", "build", "--n", "7"], ["verify", "all", "--n", "2", "--universe", "x"]])
def test_usage_errors(here, argv, capsys):
    assert run(argv) == 2
    out, err = capsys.readouterr()
    assert out == "" and err.startswith("digdef: ")
