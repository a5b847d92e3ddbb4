import json
import subprocess
import sys

import pytest

from ror2cnf.cli import main

from conftest import FIXTURES


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def fx(name):
    return FIXTURES / name


def test_sat_unsat(capsys):
    assert run(capsys, "sat", fx("contradiction.cnf"))[:2] == (20, "UNSAT\n")


def test_sat_model(capsys, tmp_path):
    p = tmp_path / "f.cnf"
    p.write_text("p cnf 3 2\n1 -2 0\n2 0\n")
    code, out, _ = run(capsys, "sat", p)
    assert code == 10
    # the model lists every variable that occurs
    assert out == "SAT\nv 1 2 0\n"


def test_structured_output(capsys):
    code, out, _ = run(capsys, "--format", "structured", "sat", fx("crossed_pairs.cnf"))
    assert code == 20
    assert json.loads(out) == {"status": "UNSAT", "witness": 1}


def test_refute_not_in_class(capsys):
    code, out, _ = run(capsys, "refute", "--mode", "ror", fx("crossed_pairs.cnf"))
    assert (code, out) == (1, "NOT-IN-CLASS\n")


def test_refute_inconclusive(capsys):
    code, out, _ = run(capsys, "refute", "--mode", "ror", "--budget", "1", fx("diamond.cnf"))
    assert (code, out) == (3, "INCONCLUSIVE\n")


def test_check_fixture_proofs(capsys):
    assert run(capsys, "check", "--mode", "read-once", fx("diamond.cnf"), fx("diamond.proof"))[:2] == (0, "VALID\n")
    assert run(capsys, "check", "--mode", "read-once", fx("seven.cnf"), fx("seven.proof"))[:2] == (0, "VALID\n")
    code, out, _ = run(capsys, "check", "--mode", "var-once", fx("seven.cnf"), fx("seven.proof"))
    assert code == 1 and out.startswith("INVALID ")


@pytest.mark.parametrize("name", ["contradiction.cnf", "full_square.cnf", "crossed_pairs.cnf", "diamond.cnf", "seven.cnf"])
@pytest.mark.parametrize("mode, check_mode", [("copy2", "copy:2"), ("ror", "read-once"), ("var-ror", "var-once")])
def test_refute_pipes_into_check(capsys, tmp_path, name, mode, check_mode):
    code, out, _ = run(capsys, "refute", "--mode", mode, fx(name))
    if code != 0:
        assert code == 1
        return
    proof = tmp_path / "p.proof"
    proof.write_text(out)
    assert run(capsys, "check", "--mode", check_mode, fx(name), proof)[:2] == (0, "VALID\n")


def test_analyze(capsys):
    assert run(capsys, "analyze", "--what", "deficiency", fx("seven.cnf"))[1] == "3\n"
    assert run(capsys, "analyze", "--what", "mu", fx("seven.cnf"))[1] == "NOT-MU\n"
    assert run(capsys, "analyze", "--what", "mu-k", fx("crossed_pairs.cnf"))[1] == "MU(2)\n"
    assert run(capsys, "analyze", "--what", "tree", fx("crossed_pairs.cnf"))[1] == "NO-DISJUNCTIVE-TREE\n"
    out = run(capsys, "analyze", "--what", "split:1", fx("crossed_pairs.cnf"))[1]
    assert out.splitlines() == ["var 1", "pos 1 2 5 6", "neg 2 3 4", "shared 2", "disjunctive no"]
    assert run(capsys, "analyze", "--what", "unit-shape", fx("contradiction.cnf"))[1] == "two-unit-chain\nchain 1 2\n"


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "cycle", fx("square_cycle.graph"))
    assert code == 0
    assert "p cnf 3 4" in out and "c edge 1 3 clause 1" in out
    code, out, _ = run(capsys, "reduce", "dpp", fx("s1t1s2t2.graph"))
    assert code == 0 and out.startswith("d 6\n")


def test_gen_requires_seed(capsys):
    code, _, err = run(capsys, "gen", "mu1", "4")
    assert code == 2 and "seed" in err
    a = run(capsys, "--seed", "4", "gen", "mu1", "6")[1]
    b = run(capsys, "gen", "mu1", "6", "--seed", "4")[1]
    assert a == b and a.startswith("p cnf 6 7")


@pytest.mark.parametrize(
    "argv",
    [
        ["sat", "missing.cnf"],
        ["refute", "--mode", "bogus", "x"],
        ["check", "--mode", "copy:x", str(FIXTURES / "diamond.cnf"), str(FIXTURES / "diamond.proof")],
        ["analyze", "--what", "split:q", str(FIXTURES / "diamond.cnf")],
        ["check", str(FIXTURES / "diamond.cnf"), str(FIXTURES / "seven.proof")],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ror2cnf", "sat", str(FIXTURES / "contradiction.cnf")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 20 and proc.stdout == "UNSAT\n"


def test_deterministic_output(capsys):
    first = run(capsys, "refute", "--mode", "ror", fx("diamond.cnf"))[1]
    assert run(capsys, "refute", "--mode", "ror", fx("diamond.cnf"))[1] == first
