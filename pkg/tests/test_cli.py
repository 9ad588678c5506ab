from __future__ import annotations

import json

import pytest

from nldim import graph as G
from nldim.cli import main
from nldim.io import emit_edgelist, emit_graph6


@pytest.fixture
def k23(tmp_path):
    p = tmp_path / "k23.txt"
    p.write_text(emit_edgelist(G.complete_bipartite(2, 3)))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_compute_k23_certificate(capsys, k23):
    code, out = run(capsys, "compute", "--input", k23, "--format", "edgelist", "--mode", "nonlocal",
                    "--certificate", "--json")
    assert code == 0
    rec = json.loads(out.out)
    assert rec["value"] == 3 and len(rec["basis"]) == 3
    assert {"invariant", "value", "basis", "theorem_refs", "elapsed_ms"} <= set(rec)
    assert "prop52" in rec["theorem_refs"]


def test_compute_graph6_lines(capsys, tmp_path):
    p = tmp_path / "g.g6"
    p.write_text(emit_graph6(G.cycle(9)) + "\n" + emit_graph6(G.petersen()) + "\n")
    code, out = run(capsys, "compute", "--input", str(p), "--mode", "full")
    assert code == 0
    assert out.out.splitlines() == ["dim = 2", "dim = 3"]


def test_compute_all_bases(capsys, tmp_path):
    p = tmp_path / "c4.g6"
    p.write_text(emit_graph6(G.cycle(4)))
    code, out = run(capsys, "compute", "--input", str(p), "--all-bases", "10", "--json")
    rec = json.loads(out.out)
    assert code == 0 and rec["bases"] == [[0, 1], [0, 3], [1, 2], [2, 3]] and rec["complete"]


def test_family_wheel_basis(capsys):
    code, out = run(capsys, "family", "wheel", "13", "--basis")
    assert code == 0
    assert out.out.splitlines() == ["value: 5", "basis: {0,5,7,10,12}"]


def test_family_json_and_solver_fallback(capsys):
    code, out = run(capsys, "family", "cycle", "9", "--json")
    rec = json.loads(out.out)
    assert code == 0 and rec["value"] == 2 and rec["theorem_refs"] == []
    code, out = run(capsys, "family", "random_tree", "12", "--seed", "4", "--basis")
    assert code == 0 and out.out.startswith("value: ")


def test_verify_pass_and_fail(capsys):
    code, out = run(capsys, "verify", "thm61", "--max-n", "10", "--samples", "50")
    assert code == 0 and "pass" in out.out
    code, out = run(capsys, "verify", "thm33", "--samples", "5", "--json")
    rec = json.loads(out.out)
    assert code == 1 and rec["schema"] == 1 and rec["status"] == "fail"


def test_embed(capsys, tmp_path):
    p = tmp_path / "pet.g6"
    p.write_text(emit_graph6(G.petersen()))
    code, out = run(capsys, "embed", "--input", str(p), "--solve", "--json")
    rec = json.loads(out.out)
    assert code == 0 and rec["s"] == 5 and rec["k"] == 3 and rec["order"] == 13 and rec["value"] <= 3


def test_enumerate(capsys):
    code, out = run(capsys, "enumerate", "--n", "4")
    assert code == 0 and len(out.out.split()) == 38
    code, out = run(capsys, "enumerate", "--n", "5", "--canonical")
    assert len(out.out.split()) == 21
    code, out = run(capsys, "enumerate", "--n", "5", "--check", "eq1,prop21,prop51,prop52")
    assert code == 0 and "pass" in out.out


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "nope"],
        ["verify", "eq1", "--max-n", "50"],
        ["enumerate", "--n", "12"],
        ["enumerate", "--n", "4", "--check", "bogus"],
        ["compute", "--input", "/does/not/exist"],
        ["family", "wheel", "two"],
        ["family", "wheel", "2"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 2 and "error" in out.err


def test_bad_input_file(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("0 0\n")
    code, _ = run(capsys, "compute", "--input", str(p), "--format", "edgelist")
    assert code == 2


def test_disconnected_input(capsys, tmp_path):
    p = tmp_path / "dis.txt"
    p.write_text("0 1\n2 3\n")
    code, out = run(capsys, "compute", "--input", str(p), "--format", "edgelist")
    assert code == 2 and "connected" in out.err


def test_argparse_usage_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compute"])
    assert exc.value.code == 2


def test_budget_exit(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("NLDIM_BUDGET", "1")
    p = tmp_path / "w.g6"
    p.write_text(emit_graph6(G.wheel(25)))
    code, out = run(capsys, "compute", "--input", str(p))
    assert code == 1 and "budget" in out.err
