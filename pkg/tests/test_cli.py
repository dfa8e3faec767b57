from __future__ import annotations

import json

import pytest

from pealab.cli import EnvError, main, resolve_binding
from pealab.seqalg import SetAlgebra


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_axioms_command(capsys):
    code, out, _ = run(capsys, "axioms", "--alpha", "2", "--base", "2", "--samples", "10", "--seed", "4")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["checks"]) == 14
    assert doc["config"]["seed"] == 4


def test_axioms_lucas(capsys):
    code, out, _ = run(capsys, "axioms", "--alpha", "2", "--base", "2", "--samples", "5",
                       "--fragment", "lucas")
    assert code == 0 and len(json.loads(out)["checks"]) == 7


def test_timing_free_output_is_stable(capsys):
    args = ("pigozzi", "--alpha", "2", "--base", "3", "--samples", "20", "--seed", "2", "--no-timing")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    assert "millis" not in first


def test_witness_command(capsys):
    code, out, _ = run(capsys, "witness", "--alpha", "4", "--gamma", "0,1,2")
    pack = json.loads(out)
    assert code == 0
    assert pack["base"] == 5 and pack["sigma"] == [0, 2, 3, 4] and pack["tau"] == [1, 2, 3, 4]


def test_gamma_is_normalized(capsys):
    _, out, _ = run(capsys, "p7", "--alpha", "3", "--base", "3", "--gamma", "2")
    doc = json.loads(out)
    assert doc["checks"][0]["config"]["gamma"] == [0, 1, 2]


def test_witness_and_emptiness_commands(capsys):
    code, out, _ = run(capsys, "p6", "--alpha", "2", "--base", "3", "--gamma", "0,1")
    assert code == 0 and json.loads(out)["checks"][0]["verdict"] == "holds-exhaustive"
    code, out, _ = run(capsys, "p7", "--alpha", "3", "--base", "3", "--all-gammas")
    checks = json.loads(out)["checks"]
    assert code == 0 and len(checks) == 2
    assert all(c["verdict"] == "holds-exhaustive" for c in checks)


def test_exclusion_command_exit_status(capsys):
    code, out, _ = run(capsys, "exclusion", "--alpha", "3", "--base", "3", "--gamma", "0,1")
    assert code == 1
    assert json.loads(out)["summary"]["fails"] == 1
    code, _, _ = run(capsys, "exclusion", "--alpha", "3", "--base", "4", "--gamma", "0,1")
    assert code == 0


def test_eval_command(capsys, tmp_path):
    env = tmp_path / "env.json"
    env.write_text(json.dumps({"x": "X_Id", "y": [[0, 2, 3, 4]], "e": "d(0,1)", "g": "c_gamma_of_iota",
                               "n": [0, 5], "u": "1"}))
    terms = tmp_path / "terms.txt"
    terms.write_text("# demo\nx * e\nc(0) (x * c(1) y) * c(0) (x * -c(1) y)\ng * u\nn\n")
    code, out, _ = run(capsys, "eval", "--alpha", "4", "--base", "5", "--env", str(env),
                       "--term", str(terms), "--output", str(tmp_path / "out.json"))
    assert code == 0 and out == ""
    checks = json.loads((tmp_path / "out.json").read_text())["checks"]
    sizes = {c["name"]: c["observation"]["size"] for c in checks}
    assert sizes == {"eval-line-2": 0, "eval-line-3": 10, "eval-line-4": 25, "eval-line-5": 2}


def test_eval_errors(capsys, tmp_path):
    env = tmp_path / "env.json"
    env.write_text("{}")
    terms = tmp_path / "terms.txt"
    terms.write_text("x +\n")
    code, _, err = run(capsys, "eval", "--alpha", "2", "--base", "2", "--env", str(env), "--term", str(terms))
    assert code == 2 and "1:4" in err
    terms.write_text("x\n")
    code, _, err = run(capsys, "eval", "--alpha", "2", "--base", "2", "--env", str(env), "--term", str(terms))
    assert code == 2 and "x" in err


def test_bad_gamma(capsys):
    code, _, err = run(capsys, "witness", "--alpha", "3", "--gamma", "0,7")
    assert code == 2 and "out of range" in err
    with pytest.raises(SystemExit):
        main(["witness", "--alpha", "3", "--gamma", "a,b"])


def test_resolve_binding():
    A = SetAlgebra.of(3, 3)
    assert resolve_binding(A, "0") == A.zero
    assert resolve_binding(A, "d(0,2)") == A.diag_pair(0, 2)
    assert resolve_binding(A, [[0, 1, 2]]) == A.from_sequences([(0, 1, 2)])
    assert len(resolve_binding(A, "c_gamma_of_iota(0,1,2)")) == 27
    with pytest.raises(EnvError):
        resolve_binding(A, "nope")
    with pytest.raises(EnvError):
        resolve_binding(A, [1, [0, 1, 2]])
