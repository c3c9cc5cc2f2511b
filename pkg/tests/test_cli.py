from __future__ import annotations

import json
import subprocess
import sys

import pytest

from mackeyflags.cli import main

SHIFT1 = {"window": None, "tail_shift": 1, "matrix": []}
IDENTITY = {"window": None, "tail_shift": 0, "matrix": []}
UPPER = {"window": [-1, 1], "tail_shift": 0, "matrix": [["1", "1", "0"], ["0", "1", "0"], ["0", "0", "1"]]}
SWAP = {"window": [-1, 1], "tail_shift": 0, "matrix": [["0", "1"], ["1", "0"]]}


@pytest.fixture
def docs(tmp_path):
    out = {}
    for name, doc in {"shift1": SHIFT1, "identity": IDENTITY, "upper": UPPER, "swap": SWAP}.items():
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(doc))
        out[name] = str(p)
    return out


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def test_degree_of_shift(docs, capsys):
    code, rep = run(["degree", "--scenario", "sato", "--op", docs["shift1"]], capsys)
    assert code == 0 and rep["per_cut"] == {"-1": 1}


def test_member_eventually_identity(docs, capsys):
    code, rep = run(["member", "--group", "eventually-identity", "--scenario", "sato",
                     "--op", docs["identity"]], capsys)
    assert code == 0 and rep["member"] is True


def test_member_false_exits_one(docs, capsys):
    code, rep = run(["member", "--group", "eligible", "--scenario", "sato", "--op", docs["shift1"]], capsys)
    assert code == 1 and rep["member"] is False


@pytest.mark.parametrize("group,expected", [
    ("mackey", True), ("w-aligned", True), ("eligible", True), ("stabilizer", False),
    ("orthogonal", True), ("symplectic", False),
])
def test_member_groups_for_swap(docs, capsys, group, expected):
    code, rep = run(["member", "--group", group, "--scenario", "sato", "--op", docs["swap"]], capsys)
    assert rep["member"] is expected and code == (0 if expected else 1)


def test_act_upper_triangular_fixes_reference(docs, capsys):
    code, rep = run(["act", "--scenario", "ex2_3", "--op", docs["upper"], "--point", "reference"], capsys)
    code2, ref = run(["validate", "--scenario", "ex2_3", "--point", "reference"], capsys)
    assert code == code2 == 0
    assert rep["point"] == ref["point"]


def test_act_direct_and_negative_window(docs, capsys, tmp_path):
    argv = ["act", "--scenario", "sato", "--op", docs["swap"], "--point", "reference", "--window", "-2:2"]
    _, a = run(argv, capsys)
    _, b = run(argv + ["--direct"], capsys)
    assert a == b
    assert a["point"]["chain"][0]["basis"] == [["1", "0", "0", "0"], ["0", "0", "1", "0"]]
    out = tmp_path / "r.json"
    assert main(argv + ["--out", str(out)]) == 0
    assert json.loads(out.read_text()) == a


def test_dual_and_symmetric(capsys):
    code, rep = run(["dual", "--scenario", "sato", "--point", "reference"], capsys)
    assert code == 0 and rep["relative_position"] == {"-1": 0}
    assert run(["symmetric", "--scenario", "ex2_3"], capsys) == (0, {"symmetric": True})
    assert run(["symmetric", "--scenario", "ex2_2"], capsys) == (1, {"symmetric": False})
    code, _ = run(["dual", "--scenario", "ex2_2", "--point", "reference"], capsys)
    assert code == 2


def test_malformed_inputs_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"window": [-1, 1], "matrix": [[0.5, 1], [1, 0]]}')
    assert main(["member", "--group", "mackey", "--scenario", "sato", "--op", str(bad)]) == 2
    bad.write_text("{not json")
    assert main(["degree", "--scenario", "sato", "--op", str(bad)]) == 2
    assert main(["degree", "--scenario", "sato", "--op", str(tmp_path / "missing.json")]) == 2
    assert main(["degree", "--scenario", "sato"]) == 2
    assert main(["verify", "no-such-suite"]) == 2
    capsys.readouterr()


def test_verify_is_deterministic(capsys):
    argv = ["verify", "degree-additivity", "--seed", "7", "--trials", "20"]
    code1, r1 = run(argv, capsys)
    code2, r2 = run(argv, capsys)
    assert code1 == code2 == 0 and r1 == r2 and r1["passed"]


def test_console_entry_point(docs):
    proc = subprocess.run([sys.executable, "-m", "mackeyflags", "degree", "--scenario", "sato",
                           "--op", docs["shift1"]], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["per_cut"] == {"-1": 1}
