"""Exact linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries. Elimination is
done fraction-free on integer rows (row contents are divided out after each
step) and only converted back to fractions when a reduced echelon form is
returned, which keeps the small dense problems used by the rest of the package
fast enough for property testing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "DenseMatrix",
    "SingularMatrixError",
    "Subspace",
    "annihilator",
    "intersect",
    "invert",
    "nullspace",
    "rank",
    "rref",
    "to_fraction",
]


class SingularMatrixError(ValueError):
    """Raised when inverting a matrix that is not invertible."""


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


@dataclass(frozen=True)
class DenseMatrix:
    """Immutable row-major matrix of fractions.

    ``ncols`` is stored explicitly so that matrices with no rows still know
    their width.
    """

    rows: tuple[tuple[Fraction, ...], ...]
    ncols: int

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], ncols: int | None = None) -> DenseMatrix:
        data = tuple(tuple(to_fraction(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols required for a matrix without rows")
            ncols = len(data[0])
        return cls(data, ncols)

    @classmethod
    def identity(cls, n: int) -> DenseMatrix:
        one, zero = Fraction(1), Fraction(0)
        return cls(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, m: int, n: int) -> DenseMatrix:
        zero = Fraction(0)
        return cls(tuple((zero,) * n for _ in range(m)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(x for r in self.rows for x in r)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> DenseMatrix:
        if not self.rows:
            return DenseMatrix.zeros(self.ncols, 0)
        return DenseMatrix(tuple(zip(*self.rows)), len(self.rows))

    @property
    def T(self) -> DenseMatrix:
        return self.transpose()

    def __matmul__(self, other: DenseMatrix) -> DenseMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append(tuple(sum((a * c[k] for k, a in nz), Fraction(0)) for c in cols))
        return DenseMatrix(tuple(out), other.ncols)

    def __neg__(self) -> DenseMatrix:
        return DenseMatrix(tuple(tuple(-x for x in r) for r in self.rows), self.ncols)

    def __add__(self, other: DenseMatrix) -> DenseMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return DenseMatrix(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __sub__(self, other: DenseMatrix) -> DenseMatrix:
        return self + (-other)

    def scale(self, c) -> DenseMatrix:
        c = to_fraction(c)
        return DenseMatrix(tuple(tuple(c * x for x in r) for r in self.rows), self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> DenseMatrix:
        return DenseMatrix(tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))

    def apply(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(sum((a * x for a, x in zip(r, v) if a), Fraction(0)) for r in self.rows)

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"DenseMatrix({self.nrows}x{self.ncols}: [{body}])"


# -- fraction-free elimination kernel ---------------------------------------


def _integer_rows(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        r = [to_fraction(x) for x in r]
        den = reduce(lcm, (x.denominator for x in r), 1)
        ints = [x.numerator * (den // x.denominator) for x in r]
        if any(ints):
            out.append(ints)
    return out


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Gauss-Jordan on integer rows; returns (pivot rows, pivot columns).

    Each returned row has zeros in every other pivot column, so dividing a row
    by its pivot entry yields the reduced row-echelon form.
    """
    rows = [r[:] for r in rows]
    pivots: list[int] = []
    top = 0
    for c in range(ncols):
        p = None
        for i in range(top, len(rows)):
            if rows[i][c]:
                p = i
                break
        if p is None:
            continue
        rows[top], rows[p] = rows[p], rows[top]
        prow = rows[top]
        pv = prow[c]
        for i in range(len(rows)):
            if i == top:
                continue
            x = rows[i][c]
            if x:
                r = rows[i]
                rows[i] = _primitive([pv * a - x * b for a, b in zip(r, prow)])
        pivots.append(c)
        top += 1
        if top == len(rows):
            break
    return rows[:top], pivots


def _rref_rows(rows: Iterable[Sequence[Fraction]], ncols: int):
    ints, pivots = _echelon(_integer_rows(rows), ncols)
    out = []
    for r, c in zip(ints, pivots):
        pv = r[c]
        out.append(tuple(Fraction(x, pv) for x in r))
    return out, pivots


def rref(m: DenseMatrix) -> DenseMatrix:
    """Reduced row-echelon form, same shape as ``m`` (zero rows at the bottom)."""
    rows, _ = _rref_rows(m.rows, m.ncols)
    zero = (Fraction(0),) * m.ncols
    rows.extend([zero] * (m.nrows - len(rows)))
    return DenseMatrix(tuple(rows), m.ncols)


def rank(m: DenseMatrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    _, pivots = _echelon(_integer_rows(m.rows), m.ncols)
    return len(pivots)


def nullspace(m: DenseMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel ``{x : m x = 0}``, one vector per free column."""
    n = m.ncols
    rows, pivots = _rref_rows(m.rows, n)
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, c in zip(rows, pivots):
            if r[f]:
                v[c] = -r[f]
        basis.append(tuple(v))
    return basis


def invert(m: DenseMatrix) -> DenseMatrix:
    n = m.nrows
    if m.ncols != n:
        raise ValueError(f"cannot invert a non-square {m.shape} matrix")
    if n == 0:
        return m
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows)]
    rows, pivots = _rref_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return DenseMatrix(tuple(tuple(r[n:]) for r in rows[:n]), n)


# -- subspaces ---------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``Q^ambient_dim`` stored by its canonical RREF basis.

    Two subspaces are equal exactly when their dataclass fields are equal.
    Use :meth:`span` rather than the constructor.
    """

    ambient_dim: int
    basis: DenseMatrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        rows, _ = _rref_rows(vectors, ambient_dim)
        return cls(ambient_dim, DenseMatrix(tuple(rows), ambient_dim))

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, DenseMatrix((), n))

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, DenseMatrix.identity(n))

    @classmethod
    def coordinate(cls, coords: Iterable[int], n: int) -> Subspace:
        coords = sorted(set(coords))
        one, zero = Fraction(1), Fraction(0)
        rows = tuple(tuple(one if j == c else zero for j in range(n)) for c in coords)
        return cls(n, DenseMatrix(rows, n))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def vectors(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.basis.rows

    def __add__(self, other: Subspace) -> Subspace:
        _check_same_ambient(self, other)
        return Subspace.span(self.vectors + other.vectors, self.ambient_dim)

    def contains(self, v: Sequence) -> bool:
        return Subspace.span(self.vectors + (tuple(v),), self.ambient_dim).dim == self.dim

    def __le__(self, other: Subspace) -> bool:
        _check_same_ambient(self, other)
        return (self + other).dim == other.dim

    def image(self, m: DenseMatrix) -> Subspace:
        """Image under ``m`` acting on column vectors."""
        if m.ncols != self.ambient_dim:
            raise ValueError("dimension mismatch")
        return Subspace.span((m.apply(v) for v in self.vectors), m.nrows)

    def embed(self, positions: Sequence[int], n: int) -> Subspace:
        """Re-express in ``Q^n`` where coordinate ``k`` goes to ``positions[k]``."""
        zero = Fraction(0)
        out = []
        for v in self.vectors:
            w = [zero] * n
            for k, x in enumerate(v):
                w[positions[k]] = x
            out.append(w)
        return Subspace.span(out, n)


def _check_same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimension mismatch: {a.ambient_dim} != {b.ambient_dim}")


def annihilator(s: Subspace) -> Subspace:
    """Functionals (in dual coordinates) vanishing on ``s``."""
    if s.dim == 0:
        return Subspace.full(s.ambient_dim)
    return Subspace.span(nullspace(s.basis), s.ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_same_ambient(a, b)
    return annihilator(annihilator(a) + annihilator(b))
