from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mackeyflags.action import act
from mackeyflags.linalg import Subspace
from mackeyflags.operators import shift_op
from mackeyflags.points import (
    FlagPoint,
    PointError,
    enlarge_window,
    is_commensurable,
    random_point,
    reference_point,
    relative_position,
    same_flag,
    shifted_reference_point,
)
from mackeyflags.scenarios import SCENARIOS
from mackeyflags.schemas import truncate_type


def sato_point(vectors, window=(-1, 1), offset=0):
    sato = SCENARIOS["sato"].schema
    n = len(sato.index.window_indices(window))
    return FlagPoint(sato, window, (-1,), (Subspace.span(vectors, n),), (offset,))


def test_reference_point_examples(sato, ex23):
    p = reference_point(sato, (-2, 2))
    assert p.chain == (Subspace.coordinate([0, 1], 4),)
    q = reference_point(ex23, (-1, 1))
    assert q.cuts == (-1, 0)
    assert q.chain == (Subspace.coordinate([0], 3), Subspace.coordinate([0, 1], 3))
    assert reference_point(sato, (1, 3)).chain == ()


def test_enlarge_examples(sato):
    p = reference_point(sato, (-1, 1))
    assert same_flag(enlarge_window(p, (-2, 2)), reference_point(sato, (-2, 2)))
    assert enlarge_window(p, (-2, 2)) == reference_point(sato, (-2, 2))
    q = sato_point([[0, 1]])
    big = enlarge_window(q, (-2, 2))
    assert big.chain == (Subspace.coordinate([0, 2], 4),)
    assert enlarge_window(enlarge_window(q, (-2, 2)), (-3, 3)) == enlarge_window(q, (-3, 3))
    assert enlarge_window(q, q.window) is q
    with pytest.raises(PointError):
        enlarge_window(big, (-1, 1))


def test_commensurability_examples(sato):
    w = reference_point(sato, (-2, 2))
    swapped = sato_point([[1, 0, 0, 0], [0, 0, 1, 0]], (-2, 2))
    assert is_commensurable(w, w)
    assert is_commensurable(w, swapped)
    assert not is_commensurable(w, shifted_reference_point(sato, 1))


def test_relative_position_of_shifts(sato):
    ref = reference_point(sato, (-1, 1))
    assert relative_position(ref) == {-1: 0}
    assert relative_position(act(shift_op(sato, 1), ref)) == {-1: 1}
    assert relative_position(act(shift_op(sato, -1), ref)) == {-1: -1}


def test_shifted_reference_points(sato):
    assert shifted_reference_point(sato, 0) == reference_point(sato, (-1, 1))
    up = shifted_reference_point(sato, 2)
    assert up.chain[0].dim == sato.lower_count(-1, up.indices) + 2
    down = shifted_reference_point(sato, -2)
    assert down.window == (-3, 3)
    assert down.chain == (Subspace.coordinate([0], 6),)


def test_invalid_points(sato):
    with pytest.raises(PointError):
        sato_point([[1, 0], [0, 1]])  # wrong dimension for offset 0
    with pytest.raises(PointError):
        FlagPoint(sato, (-1, 1), (), (), ())


def test_nested_chain_required(ex23):
    with pytest.raises(PointError):
        FlagPoint(ex23, (-1, 1), (-1, 0),
                  (Subspace.span([[1, 0, 0]], 3), Subspace.span([[0, 1, 0], [0, 0, 1]], 3)), (0, 0))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["ex2_1", "ex2_2", "ex2_3", "ex2_4", "ex2_5"]), st.integers(0, 10 ** 6))
def test_commensurability_is_an_equivalence(name, seed):
    schema = SCENARIOS[name].schema
    rng = random.Random(seed)
    lo = 1 if name == "ex2_2" else -3
    p, q, r = (random_point(schema, rng, (lo, lo + rng.randint(1, 5))) for _ in range(3))
    assert is_commensurable(p, p)
    assert is_commensurable(p, q) == is_commensurable(q, p)
    if is_commensurable(p, q) and is_commensurable(q, r):
        assert is_commensurable(p, r)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["ex2_1", "ex2_3", "ex2_4", "ex2_5"]), st.integers(0, 10 ** 6))
def test_enlargement_preserves_position_and_type(name, seed):
    schema = SCENARIOS[name].schema
    rng = random.Random(seed)
    p = random_point(schema, rng, (-2, 2))
    big = enlarge_window(p, (-4, 5))
    assert is_commensurable(p, big)
    assert relative_position(big) == {a: 0 for a in schema.evaluated_cuts(big.window)}
    assert big.dims() == tuple(t + o for t, o in zip(truncate_type(schema, big.window), big.offsets))
