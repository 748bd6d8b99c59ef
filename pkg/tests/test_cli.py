import json

import pytest

from cremona.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("nks,line", [((6, 2, 3), "15 3 15 3 OK"), ((8, 2, 4), "28 15 105 4 OK")])
def test_params(capsys, nks, line):
    code, out, _ = run(capsys, "params", *nks)
    assert code == 0 and out.strip() == line


def test_params_error(capsys):
    code, _, err = run(capsys, "params", 4, 2, 3)
    assert code == 2 and "n >= k*s" in err


def test_params_csv(capsys, tmp_path):
    path = tmp_path / "p.csv"
    assert run(capsys, "params", 6, 2, 3, "--csv", path)[0] == 0
    assert "15" in path.read_text().splitlines()[1]


def test_build_json_and_dot(capsys, tmp_path):
    js, dot = tmp_path / "cr623.json", tmp_path / "cr623.dot"
    code, out, _ = run(capsys, "build", 6, 2, 3, "--json", js, "--dot", dot)
    assert code == 0 and out.strip() == "points 15 blocks 15"
    data = json.loads(js.read_text())
    assert len(data["points"]) == 15 and len(data["blocks"]) == 15
    assert dot.read_text().count(" -- ") == 45


def test_build_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "build", 7, 2, 3, "--json", a)
    run(capsys, "build", 7, 2, 3, "--json", b)
    assert a.read_bytes() == b.read_bytes()


def test_build_small_and_invalid(capsys):
    assert run(capsys, "build", 5, 1, 3)[1].strip() == "points 10 blocks 10"
    assert run(capsys, "build", 70, 1, 3)[0] == 2


def test_check_weak_chain(capsys):
    code, out, _ = run(capsys, "check", 8, 2, 4, "--weak-chain")
    assert code == 0 and out.strip() == "weak-chain: PASS (3/3 properties hold)"


def test_check_gamma_and_neighborhood(capsys):
    code, out, _ = run(capsys, "check", 6, 2, 3, "--gamma", "--neighborhood")
    assert code == 0
    assert "gamma: PASS (0 discrepancies over 105 pairs)" in out
    assert "neighborhood: PASS (15/15" in out


def test_check_defaults_run_applicable_suites(capsys):
    code, out, _ = run(capsys, "check", 7, 2, 3)
    assert code == 0 and out.startswith("axioms: PASS") and "gamma" not in out
    assert run(capsys, "check", 7, 2, 3, "--gamma")[0] == 2


@pytest.mark.parametrize(
    "argv,line",
    [
        (("embed", 7, 2, 3, "--field", "p:2"), "EMBEDDING"),
        (("embed", 7, 2, 3, "--field", "q"), "NOT-AN-EMBEDDING (char 0 ∤ 2)"),
        (("embed", 6, 2, 3, "--field", "q"), "EMBEDDING"),
    ],
)
def test_embed(capsys, argv, line):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == line


def test_embed_report(capsys, tmp_path):
    path = tmp_path / "r.json"
    run(capsys, "embed", 9, 2, 4, "--field", "p:3", "--report", path)
    data = json.loads(path.read_text())
    assert data["verdict"] == "embedding" and data["characteristic"]["divides"]


def test_embed_bad_field(capsys):
    code, _, err = run(capsys, "embed", 6, 2, 3, "--field", "p:4")
    assert code == 2 and "not prime" in err


def test_lines_rationals(capsys, tmp_path):
    dot = tmp_path / "d.dot"
    code, out, _ = run(capsys, "lines", 5, "--field", "q", "--dot", dot)
    assert code == 0
    assert "counts 3:25" in out
    assert "line ranks |a|=1:[7] |a|=2:[4]" in out
    assert dot.read_text().count("shape=box") == 25


def test_lines_gf2_has_more(capsys):
    out = run(capsys, "lines", 5, "--field", "p:2", "--desargues")[1]
    assert "counts 3:35" in out
    assert "desargues 0" not in out and "desargues" in out


def test_lines_quadruples(capsys):
    out = run(capsys, "lines", 5, "--field", "q", "--max-size", 4)[1]
    counts = dict(kv.split(":") for kv in out.split("counts ")[1].splitlines()[0].split())
    assert counts["3"] == "25" and int(counts["4"]) > 0
    printed = {frozenset(line.split()) for line in out.splitlines()}
    assert frozenset({"01", "12", "02", "34"}) in printed


def test_aut(capsys):
    code, out, _ = run(capsys, "aut", 6, 2, 3)
    assert code == 0 and out.startswith("order 720 ")
    out = run(capsys, "aut", 7, 2, 3)[1]
    assert out.startswith("order 40320 ")
    assert "non-induced automorphism" in out


def test_aut_budget(capsys):
    code, _, err = run(capsys, "aut", 7, 2, 3, "--budget", 5)
    assert code == 2 and "budget" in err


def test_lines_automorphisms(capsys):
    out = run(capsys, "lines", 5, "--field", "q", "--aut")[1]
    assert "automorphism order 120 (|S_5| = 120)" in out
    out = run(capsys, "lines", 5, "--field", "p:2", "--aut")[1]
    # over GF(2) the 15 points and 35 triples form PG(3,2)
    assert "automorphism order 20160 " in out
