from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mackeyflags.linalg import (
    DenseMatrix,
    SingularMatrixError,
    Subspace,
    annihilator,
    intersect,
    invert,
    nullspace,
    rank,
    rref,
    to_fraction,
)


def M(rows, ncols=None):
    return DenseMatrix.from_rows(rows, ncols)


def matrices(max_rows=5, max_cols=5, lo=-3, hi=3):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r).map(lambda rows: M(rows, c))))


def test_rref_examples():
    assert rref(M([[2, 4], [1, 2]])) == M([[1, 2], [0, 0]])
    assert rref(DenseMatrix.identity(3)) == DenseMatrix.identity(3)
    assert rref(M([[0, 1], [1, 0]])) == DenseMatrix.identity(2)


def test_rank_examples():
    assert rank(DenseMatrix.zeros(3, 3)) == 0
    assert rank(DenseMatrix.identity(4)) == 4
    assert rank(M([[1, 2], [2, 4], [3, 6]])) == 1


def test_annihilator_examples():
    assert annihilator(Subspace.span([[1, 0, 0]], 3)) == Subspace.coordinate([1, 2], 3)
    assert annihilator(Subspace.full(4)) == Subspace.zero(4)
    assert annihilator(Subspace.span([[1, 1]], 2)) == Subspace.span([[1, -1]], 2)


def test_intersect_examples():
    a = Subspace.span([[1, 0, 0], [0, 1, 0]], 3)
    b = Subspace.span([[0, 1, 0], [0, 0, 1]], 3)
    assert intersect(a, b) == Subspace.span([[0, 1, 0]], 3)
    assert intersect(a, a) == a
    assert intersect(Subspace.span([[1, 0]], 2), Subspace.span([[0, 1]], 2)) == Subspace.zero(2)


def test_intersect_dimension_mismatch():
    with pytest.raises(ValueError):
        intersect(Subspace.zero(2), Subspace.zero(3))


def test_invert_examples():
    assert invert(DenseMatrix.identity(5)) == DenseMatrix.identity(5)
    assert invert(M([[0, 1], [1, 0]])) == M([[0, 1], [1, 0]])
    assert invert(M([[1, 1], [0, 1]])) == M([[1, -1], [0, 1]])


def test_invert_singular():
    with pytest.raises(SingularMatrixError):
        invert(M([[1, 2], [2, 4]]))


def test_floats_rejected():
    with pytest.raises(TypeError):
        to_fraction(0.5)
    assert to_fraction("3/6") == Fraction(1, 2)


def test_empty_shapes():
    z = DenseMatrix((), 3)
    assert z.transpose().shape == (3, 0)
    assert rank(z) == 0


@given(matrices())
def test_rref_idempotent(m):
    assert rref(rref(m)) == rref(m)


@given(matrices())
def test_rank_of_transpose(m):
    assert rank(m) == rank(m.transpose())


@given(matrices())
def test_nullspace_is_kernel(m):
    basis = nullspace(m)
    assert len(basis) == m.ncols - rank(m)
    for v in basis:
        assert not any(m.apply(v))


@given(matrices())
def test_annihilator_involution(m):
    s = Subspace.span(m.rows, m.ncols)
    ann = annihilator(s)
    assert ann.dim == m.ncols - s.dim
    assert annihilator(ann) == s


@given(matrices(4, 4), matrices(4, 4))
def test_annihilator_reverses_order(a, b):
    if a.ncols != b.ncols:
        return
    s = Subspace.span(a.rows, a.ncols)
    t = s + Subspace.span(b.rows, b.ncols)
    assert annihilator(t) <= annihilator(s)


@given(matrices(4, 4), matrices(4, 4))
def test_intersection_dimension_formula(a, b):
    if a.ncols != b.ncols:
        return
    s, t = Subspace.span(a.rows, a.ncols), Subspace.span(b.rows, b.ncols)
    assert s.dim + t.dim == intersect(s, t).dim + (s + t).dim


@settings(max_examples=60)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(
    st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_invert_round_trip(rows):
    m = M(rows)
    if rank(m) < m.nrows:
        return
    inv = invert(m)
    assert m @ inv == DenseMatrix.identity(m.nrows)
    assert invert(inv) == m
