from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mackeyflags.action import ActionError, act, act_direct, duality_map, in_stabilizer
from mackeyflags.linalg import DenseMatrix, Subspace
from mackeyflags.operators import (
    StructuredOperator,
    compose,
    degree_at_cut,
    identity_op,
    is_eligible,
    shift_op,
    window_swap,
)
from mackeyflags.points import (
    FlagPoint,
    is_commensurable,
    random_point,
    reference_point,
    relative_position,
    same_flag,
    shifted_reference_point,
)
from mackeyflags.scenarios import SCENARIOS
from mackeyflags.schemas import SchemaError


def upper(schema):
    return StructuredOperator(schema, (-1, 1), 0, DenseMatrix.from_rows([[1, 1], [0, 1]]))


def test_identity_action(sato):
    p = random_point(sato, random.Random(0), (-2, 2))
    assert same_flag(act(identity_op(sato), p), p)
    assert same_flag(act_direct(identity_op(sato), p), p)


def test_shift_moves_reference_to_next_component(sato):
    ref = reference_point(sato, (-1, 1))
    image = act(shift_op(sato, 1), ref)
    assert same_flag(image, shifted_reference_point(sato, 1))
    assert relative_position(image) == {-1: 1}


def test_swap_action(sato):
    ref = reference_point(sato, (-2, 2))
    f = window_swap(sato, -1, 1)
    expected = FlagPoint(sato, (-2, 2), (-1,), (Subspace.coordinate([0, 2], 4),), (0,))
    assert same_flag(act(f, ref), expected)
    assert same_flag(act_direct(f, ref), expected)
    assert is_commensurable(act(f, ref), ref)
    assert not in_stabilizer(f, ref)


def test_upper_triangular_stabilizes(sato):
    ref = reference_point(sato, (-1, 1))
    assert in_stabilizer(upper(sato), ref)
    assert same_flag(act_direct(upper(sato), ref), ref)
    assert in_stabilizer(identity_op(sato), ref)


def test_direct_action_needs_identity_tail(sato):
    with pytest.raises(ActionError):
        act_direct(shift_op(sato, 1), reference_point(sato, (-1, 1)))


def test_shift_on_every_position_is_rejected(ex23):
    with pytest.raises(ActionError):
        act(shift_op(ex23, 1), reference_point(ex23, (-1, 1)))


def test_duality_examples(sato):
    ref = reference_point(sato, (-2, 2))
    assert same_flag(duality_map(ref), ref)
    with pytest.raises(SchemaError):
        duality_map(reference_point(SCENARIOS["ex2_2"].schema, (1, 3)))


def test_duality_negates_offsets(sato):
    p = shifted_reference_point(sato, 2)
    assert relative_position(duality_map(p)) == {-1: -2}


SYMMETRIC = ["ex2_1", "ex2_3", "ex2_4", "ex2_5"]
ALL = ["ex2_1", "ex2_2", "ex2_3", "ex2_4", "ex2_5"]


def _point(name, rng):
    lo = 1 if name == "ex2_2" else rng.randint(-4, 1)
    return random_point(SCENARIOS[name].schema, rng, (lo, lo + rng.randint(1, 4)))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ALL), st.integers(0, 10 ** 6))
def test_oracle_equivalence(name, seed):
    rng = random.Random(seed)
    f = SCENARIOS[name].random_operator(rng, 4)
    if f.tail_shift:
        return
    p = _point(name, rng)
    assert same_flag(act(f, p), act_direct(f, p))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["sato"] + ALL[1:]), st.integers(0, 10 ** 6))
def test_action_law(name, seed):
    rng = random.Random(seed)
    sc = SCENARIOS[name]
    f, g = sc.random_operator(rng, 4), sc.random_operator(rng, 4)
    p = _point("ex2_1" if name == "sato" else name, rng)
    if not sc.schema.finite and (f.tail_shift or g.tail_shift):
        return
    assert same_flag(act(compose(f, g), p), act(f, act(g, p)))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_component_shift_by_degree(seed):
    rng = random.Random(seed)
    sc = SCENARIOS["sato"]
    f = sc.random_operator(rng, 4)
    p = _point("ex2_1", rng)
    q = act(f, p)
    assert relative_position(q) == {-1: degree_at_cut(f, -1)}
    assert is_commensurable(q, p) == is_eligible(f)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SYMMETRIC), st.integers(0, 10 ** 6))
def test_duality_is_an_involution(name, seed):
    p = _point(name, random.Random(seed))
    assert same_flag(duality_map(duality_map(p)), p)
