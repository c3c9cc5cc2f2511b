from __future__ import annotations

import random

import pytest

from mackeyflags.operators import shift_op, window_swap
from mackeyflags.scenarios import SCENARIOS, get_scenario, library_predicate


def test_names():
    assert sorted(SCENARIOS) == ["ex2_1", "ex2_2", "ex2_3", "ex2_4", "ex2_5", "sato"]
    with pytest.raises(KeyError):
        get_scenario("ex2_6")


def test_shift_is_rejected_by_golden_predicates():
    for name in ("ex2_1", "ex2_3"):
        sc = SCENARIOS[name]
        assert not sc.golden(shift_op(sc.schema, 1))
        assert not sc.golden(shift_op(sc.schema, -2))


def test_swap_is_accepted_everywhere():
    for name, sc in SCENARIOS.items():
        i, j = (1, 2) if name == "ex2_2" else (-1, 1)
        f = window_swap(sc.schema, i, j)
        assert sc.golden(f) and library_predicate(f)


@pytest.mark.parametrize("name", sorted(SCENARIOS))
def test_golden_agrees_on_a_sample(name):
    sc = SCENARIOS[name]
    rng = random.Random(name)
    for _ in range(25):
        f = sc.random_operator(rng)
        assert sc.golden(f) == library_predicate(f)
