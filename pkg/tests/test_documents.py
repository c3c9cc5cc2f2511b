from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mackeyflags.documents import (
    DocumentError,
    dump_operator,
    dump_point,
    dump_schema,
    normalize,
    parse_operator,
    parse_point,
    parse_rational,
    parse_schema,
)
from mackeyflags.operators import operators_equal
from mackeyflags.points import random_point
from mackeyflags.scenarios import SCENARIOS

SATO_DOC = {"index": {"kind": "SatoSplit", "paired": True}, "cuts": {"type": "finite", "positions": [-1]}}


def test_rationals():
    assert parse_rational("3/6") == parse_rational(1) / 2
    assert parse_rational(-4) == -4
    for bad in (0.5, "1.5", "1e3", "x", True, None, "1/0"):
        with pytest.raises(DocumentError):
            parse_rational(bad)


def test_schema_round_trip():
    s = parse_schema(SATO_DOC)
    assert s == SCENARIOS["sato"].schema
    assert dump_schema(s) == SATO_DOC
    every = {"index": {"kind": "AllInts"}, "cuts": {"type": "every"}}
    assert normalize(every, "schema") == {"index": {"kind": "AllInts", "paired": False},
                                          "cuts": {"type": "every"}}


@pytest.mark.parametrize("doc", [
    {"index": {"kind": "Reals"}, "cuts": {"type": "every"}},
    {"index": {"kind": "AllInts"}, "cuts": {"type": "finite", "positions": [1, 1]}},
    {"index": {"kind": "AllInts"}, "cuts": {"type": "sometimes"}},
    {"index": {"kind": "PositiveInts", "paired": True}, "cuts": {"type": "every"}},
    {"cuts": {"type": "every"}},
])
def test_bad_schemas(doc):
    with pytest.raises(DocumentError):
        parse_schema(doc)


def test_operator_normalization():
    s = parse_schema(SATO_DOC)
    doc = {"window": [-1, 1], "matrix": [[0, 1], ["2/2", 0]]}
    assert normalize(doc, "operator", s) == {"window": [-1, 1], "tail_shift": 0,
                                             "matrix": [["0", "1"], ["1", "0"]]}


@pytest.mark.parametrize("doc", [
    {"window": [-1, 1], "matrix": [[1, 1], [1, 1]]},
    {"window": [-1, 1], "matrix": [[1]]},
    {"window": [0, 1], "matrix": [[1]]},
    {"window": [2, 1], "matrix": []},
    {"window": [-1, 1], "matrix": [[1, 0], [0, 1.0]]},
])
def test_bad_operators(doc):
    with pytest.raises(DocumentError):
        parse_operator(doc, parse_schema(SATO_DOC))


def test_point_needs_a_schema():
    with pytest.raises(DocumentError):
        parse_point({"window": [-1, 1], "chain": []})


def test_point_schema_conflict():
    doc = {"schema": SATO_DOC, "window": [-1, 1], "chain": [{"cut": -1, "basis": [["1", "0"]]}]}
    with pytest.raises(DocumentError):
        parse_point(doc, SCENARIOS["ex2_3"].schema)
    assert normalize(doc, "point")["chain"][0]["offset"] == 0


def test_dependent_basis_rejected():
    doc = {"window": [-1, 1], "chain": [{"cut": -1, "offset": 1, "basis": [[1, 0], [2, 0]]}]}
    with pytest.raises(DocumentError):
        parse_point(doc, parse_schema(SATO_DOC))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(SCENARIOS)), st.integers(0, 10 ** 6))
def test_operator_round_trip(name, seed):
    sc = SCENARIOS[name]
    f = sc.random_operator(random.Random(seed))
    doc = dump_operator(f, with_schema=True)
    g = parse_operator(doc)
    assert operators_equal(f, g)
    assert dump_operator(g, with_schema=True) == normalize(doc, "operator")


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["ex2_1", "ex2_3", "ex2_4", "ex2_5"]), st.integers(0, 10 ** 6))
def test_point_round_trip(name, seed):
    schema = SCENARIOS[name].schema
    p = random_point(schema, random.Random(seed), (-2, 3))
    doc = dump_point(p, with_schema=True)
    assert parse_point(doc) == p
    assert normalize(doc, "point") == doc
