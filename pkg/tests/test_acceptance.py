"""Acceptance criteria, each run at its stated trial count.

Every test prints one ``ACCEPTANCE <n> PASS|FAIL`` line (also visible under
pytest's output capture) and fails with the first counterexample.
"""

from __future__ import annotations

import json
import time

import pytest

from mackeyflags.verify import run_suite

CRITERIA = [
    (1, "degree additivity, 1000 pairs on Sato and integer-chain windows <= 12", "degree-additivity", 1000),
    (2, "shift degree k in [-5, 5] and component of the shifted reference", "shift-degree", 11),
    (3, "eligible operators: normality, products, inverses (500 trials)", "eligibility-normality", 500),
    (4, "action well-defined: 500 eligible operators x 20 points per schema", "action-well-defined", 500),
    (5, "act = act_direct for 500 eventually-identity operators", "oracle-equivalence", 500),
    (6, "worked-example golden predicates, 200 operators each", "example-2-scenarios", 200),
    (7, "symmetry detection (T, F, T, T, T)", "symmetry-detection", 100),
    (8, "form preservation <=> antidiagonal reflection, 500 per form kind", "isotropic-equivalence", 500),
    (9, "rank C = rank C^T and via bar_op, 500 operators", "rank-transpose", 500),
    (10, "block-upper-triangular operators: degree 0 and stabilize W, 500 trials", "stabilizer-degree", 500),
]


@pytest.mark.parametrize("number,title,suite,trials", CRITERIA, ids=[c[2] for c in CRITERIA])
def test_acceptance(number, title, suite, trials, capsys):
    start = time.perf_counter()
    report = run_suite(suite, seed=0, trials=trials)
    elapsed = time.perf_counter() - start
    counts = ", ".join(f"{p['trials'] - p['failures']}/{p['trials']}" for p in report["properties"])
    status = "PASS" if report["passed"] else "FAIL"
    with capsys.disabled():
        print(f"\nACCEPTANCE {number:2d} {status}  {title}  [{counts}] {elapsed:.1f}s")
    failing = [p for p in report["properties"] if not p["passed"]]
    assert not failing, json.dumps(failing, indent=2)


def test_symmetry_values_exact():
    report = run_suite("symmetry-detection", seed=0, trials=1)
    detect = report["properties"][0]
    assert detect["trials"] == 5 and detect["passed"]
