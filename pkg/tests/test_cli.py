import json

import pytest

from multichess.cli import dispatch
from multichess.fixtures import FIXTURES, report_paper_fixtures


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_and_homology(tmp_path, capsys):
    f = tmp_path / "k.json"
    assert dispatch(["gen", "--family", "multi", "--m", "4", "--n", "2", "--row-caps", "2,2",
                     "--out", str(f)]) == 0
    obj = json.loads(f.read_text())
    assert obj["ground"] == list(range(8)) and len(obj["coords"]) == 8
    code, out, _ = run(capsys, "homology", str(f), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1
    assert doc["homology"]["betti"]["2"] == 1
    assert doc["manifest"]["command"] == "homology"


def test_gen_families(tmp_path, capsys):
    for argv in (["--family", "uniform", "--m", "3", "--n", "2", "--p", "2", "--q", "2"],
                 ["--family", "two-one-j", "--m", "4", "--n", "2", "--j", "1"],
                 ["--family", "bier", "--m", "5", "--p", "2"],
                 ["--family", "multipartite", "--parts", "2,2,2"]):
        code, out, _ = run(capsys, "gen", *argv)
        assert code == 0 and json.loads(out)["facets"]


def test_gen_general_from_spec_file(tmp_path, capsys):
    spec = tmp_path / "g.json"
    spec.write_text(json.dumps({"rows": [[[0, 1], [1, 2], [0, 2]], [[0], [1], [2]]],
                                "cols": [[[0], [1]]] * 3}))
    code, out, _ = run(capsys, "gen", "--family", "general", "--m", "3", "--n", "2",
                       "--spec-file", str(spec))
    assert code == 0 and len(json.loads(out)["facets"]) == 3


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "homology", "--bogus", "x")[0] == 2
    assert run(capsys, "gen", "--family", "multi")[0] == 2
    assert run(capsys, "shell", "--spec", "4:2,2")[0] == 2
    assert run(capsys)[0] == 2


def test_lex_order_fails_verification(tmp_path, capsys):
    k, o = tmp_path / "k.json", tmp_path / "o.json"
    dispatch(["gen", "--family", "multi", "--m", "4", "--n", "2", "--out", str(k)])
    dispatch(["shell", "--spec", "4:1,1", "--order", "lex", "--out", str(o)])
    code, out, _ = run(capsys, "verify-shelling", str(k), str(o), "--json")
    assert code == 1
    v = json.loads(out)["violation"]
    assert v["B"] == [[2, 1], [1, 2]] and v["intersection"] == []


def test_shelling_order_verifies(tmp_path, capsys):
    k, o = tmp_path / "k.json", tmp_path / "o.json"
    dispatch(["gen", "--family", "multi", "--m", "5", "--n", "2", "--row-caps", "2,2", "--out", str(k)])
    dispatch(["shell", "--spec", "5:2,2", "--out", str(o)])
    code, out, _ = run(capsys, "verify-shelling", str(k), str(o))
    assert code == 0 and "1 spanning" in out


def test_connectivity(tmp_path, capsys):
    k = tmp_path / "k.json"
    dispatch(["gen", "--family", "uniform", "--m", "3", "--n", "2", "--p", "2", "--out", str(k)])
    code, out, _ = run(capsys, "connectivity", str(k))
    assert code == 0 and out.startswith("hconn 0")


def test_bounds_scan(tmp_path, capsys):
    out = tmp_path / "r.tsv"
    code = dispatch(["bounds", "scan", "--grid", "m=4..5", "n=2", "caps=1..2", "--out", str(out)])
    rows = out.read_text().splitlines()
    assert code == 0
    assert rows[0].split("\t")[:2] == ["spec", "mu_3.2"]
    assert len(rows) == 1 + 2 * 3


def test_tverberg_points_file(tmp_path, capsys):
    pts = tmp_path / "p.json"
    pts.write_text(json.dumps({"colors": [[[[0, 1], [0, 1]], [[2, 1], [2, 1]], [[0, 1], [2, 1]],
                                           [[2, 1], [0, 1]], [[1, 1], [5, 1]]]]}))
    code, out, _ = run(capsys, "tverberg", "--d", "2", "--k", "1", "--r", "2", "--p", "2",
                       "--points", str(pts), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "found"
    assert doc["certificate"]["witness"] == [[1, 1], [1, 1]]


def test_tverberg_runs_are_byte_identical(capsys):
    argv = ["tverberg", "--d", "2", "--k", "3", "--r", "2", "--p", "1", "--trials", "5",
            "--seed", "7", "--json"]
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b and json.loads(a)["stats"]["successes"] == 5


def test_fixture_names_unique():
    names = [f[0] for f in FIXTURES]
    assert len(names) == len(set(names))


def test_report_subset(capsys):
    code, out, _ = run(capsys, "report", "--only", "cylinder-3x2", "lex-violation-4x2")
    assert code == 0 and out.count("PASS") == 2


@pytest.mark.parametrize("name", ["sphere-4x2", "bier-5-2", "shelling-5x2-caps2"])
def test_single_fixtures_pass(name):
    (res,) = report_paper_fixtures([name])
    assert res.passed
