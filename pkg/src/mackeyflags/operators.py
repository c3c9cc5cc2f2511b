"""Mackey-group elements as window matrices with a translation tail.

An operator is stored as ``f = Sh^d o g`` where ``Sh`` is the successor
translation of the index order and ``g`` is the identity outside a finite
window, acting there by an invertible matrix. So ``f(e_j) = e_{succ^d(j)}``
off the window, and on it ``f(e_j) = sum_i M[i, j] e_{succ^d(i)}``.

Everything that needs a larger window (composition, block splittings,
degrees) absorbs the operator first; absorption never changes the operator.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .linalg import DenseMatrix, SingularMatrixError, invert, rank
from .schemas import (
    CutId,
    FlagSchema,
    SchemaError,
    Window,
    contains_window,
    hull,
)

__all__ = [
    "CutSplitting",
    "DegreeReport",
    "OperatorError",
    "StructuredOperator",
    "absorb",
    "apply_to_vector",
    "bar_op",
    "compose",
    "degree_at_cut",
    "degree_report",
    "identity_op",
    "in_japanese_form",
    "invert_op",
    "make_operator",
    "is_eligible",
    "is_eventually_identity",
    "is_mackey",
    "is_w_aligned",
    "matrix_block",
    "operators_equal",
    "pairing",
    "projectively_equal",
    "random_block_upper",
    "random_invertible",
    "random_operator",
    "shift_op",
    "splitting_at_cut",
    "window_swap",
]

Vector = Mapping[int, Fraction]


class OperatorError(ValueError):
    """Malformed operator data."""


@dataclass(frozen=True)
class StructuredOperator:
    schema: FlagSchema
    window: Window | None
    tail_shift: int
    matrix: DenseMatrix = field(repr=False)

    def __post_init__(self):
        ix = self.schema.index
        w = ix.normalize_window(self.window)
        n = len(ix.window_indices(w))
        if self.matrix.shape != (n, n):
            raise OperatorError(f"window {self.window} has {n} indices, matrix is {self.matrix.shape}")
        if self.tail_shift and not ix.translatable:
            raise OperatorError(f"tail shifts are not available on {ix.kind.value}")
        object.__setattr__(self, "window", w)

    @property
    def indices(self) -> tuple[int, ...]:
        return self.schema.index.window_indices(self.window)

    def __call__(self, v: Vector) -> dict[int, Fraction]:
        return apply_to_vector(self, v)


def _check_invertible(m: DenseMatrix) -> None:
    if rank(m) != m.nrows:
        raise OperatorError("window matrix is not invertible")


def make_operator(schema: FlagSchema, window: Window | None, tail_shift: int,
                  matrix: DenseMatrix) -> StructuredOperator:
    """Validated constructor (checks invertibility)."""
    op = StructuredOperator(schema, window, tail_shift, matrix)
    _check_invertible(op.matrix)
    return op


def identity_op(schema: FlagSchema) -> StructuredOperator:
    return StructuredOperator(schema, None, 0, DenseMatrix((), 0))


def shift_op(schema: FlagSchema, k: int) -> StructuredOperator:
    if not schema.index.translatable:
        raise SchemaError(f"no shift operator on {schema.index.kind.value}")
    return StructuredOperator(schema, None, k, DenseMatrix((), 0))


def window_swap(schema: FlagSchema, i: int, j: int) -> StructuredOperator:
    """The permutation operator exchanging ``e_i`` and ``e_j``."""
    w = (min(i, j), max(i, j))
    idx = schema.index.window_indices(w)
    n = len(idx)
    pi, pj = idx.index(i), idx.index(j)
    perm = list(range(n))
    perm[pi], perm[pj] = pj, pi
    rows = [[int(perm[c] == r) for c in range(n)] for r in range(n)]
    return StructuredOperator(schema, w, 0, DenseMatrix.from_rows(rows, n))


def apply_to_vector(f: StructuredOperator, v: Vector) -> dict[int, Fraction]:
    """``f(v)`` for a finitely supported vector ``{label: coefficient}``."""
    ix = f.schema.index
    idx = f.indices
    pos = {i: k for k, i in enumerate(idx)}
    out: dict[int, Fraction] = {}
    inside = [Fraction(0)] * len(idx)
    for j, x in v.items():
        if not x:
            continue
        if j in pos:
            inside[pos[j]] += x
        else:
            t = ix.shift(j, f.tail_shift)
            out[t] = out.get(t, Fraction(0)) + x
    for r, y in zip(idx, f.matrix.apply(inside)):
        if y:
            t = ix.shift(r, f.tail_shift)
            out[t] = out.get(t, Fraction(0)) + y
    return {k: x for k, x in out.items() if x}


def pairing(y: Vector, x: Vector) -> Fraction:
    """Canonical pairing of a dual vector (coefficients of ``e_i^*``) with a vector."""
    return sum((c * x[i] for i, c in y.items() if i in x), Fraction(0))


def absorb(f: StructuredOperator, new_window: Window | None) -> StructuredOperator:
    """Same operator, with its window enlarged to ``new_window``."""
    ix = f.schema.index
    new_window = ix.normalize_window(new_window)
    if not contains_window(new_window, f.window):
        raise OperatorError(f"window {new_window} does not contain {f.window}")
    if new_window == f.window:
        return f
    new_idx = ix.window_indices(new_window)
    pos = {i: k for k, i in enumerate(new_idx)}
    old = [pos[i] for i in f.indices]
    n = len(new_idx)
    rows = [list(r) for r in DenseMatrix.identity(n).rows]
    for a, ra in enumerate(old):
        for b, cb in enumerate(old):
            rows[ra][cb] = f.matrix[a, b]
    return StructuredOperator(f.schema, new_window, f.tail_shift, DenseMatrix.from_rows(rows, n))


def _conjugate(f: StructuredOperator, s: int) -> StructuredOperator:
    """``Sh^s o g o Sh^-s`` for the identity-tail part ``g`` of ``f``."""
    ix = f.schema.index
    return StructuredOperator(f.schema, ix.shift_window(f.window, s), 0, f.matrix)


def compose(f: StructuredOperator, g: StructuredOperator) -> StructuredOperator:
    """``f o g``."""
    if f.schema != g.schema:
        raise OperatorError("operators belong to different schemas")
    # Sh^a F Sh^b G = Sh^(a+b) (Sh^-b F Sh^b) G
    f0 = _conjugate(f, -g.tail_shift)
    g0 = StructuredOperator(g.schema, g.window, 0, g.matrix)
    w = hull(f0.window, g0.window)
    fa, ga = absorb(f0, w), absorb(g0, w)
    return StructuredOperator(f.schema, w, f.tail_shift + g.tail_shift, fa.matrix @ ga.matrix)


def invert_op(f: StructuredOperator) -> StructuredOperator:
    # (Sh^d G)^-1 = G^-1 Sh^-d = Sh^-d (Sh^d G^-1 Sh^-d)
    try:
        minv = invert(f.matrix)
    except SingularMatrixError as exc:  # pragma: no cover - excluded by construction
        raise OperatorError("operator is not invertible") from exc
    d = f.tail_shift
    ix = f.schema.index
    return StructuredOperator(f.schema, ix.shift_window(f.window, d), -d, minv)


def bar_op(f: StructuredOperator) -> StructuredOperator:
    """The dual operator restricted to the span of the dual basis.

    Acts on dual vectors written in the coordinates ``e_i^*`` (same labels);
    ``pairing(bar_op(f)(y), x) == pairing(y, f(x))``.
    """
    # bar(Sh^d G) = bar(G) bar(Sh^d) = G^T Sh^-d = Sh^-d (Sh^d G^T Sh^-d)
    d = f.tail_shift
    ix = f.schema.index
    return StructuredOperator(f.schema, ix.shift_window(f.window, d), -d, f.matrix.transpose())


def operators_equal(f: StructuredOperator, g: StructuredOperator) -> bool:
    if f.schema != g.schema or f.tail_shift != g.tail_shift:
        return False
    w = hull(f.window, g.window)
    return absorb(f, w).matrix == absorb(g, w).matrix


def projectively_equal(f: StructuredOperator, g: StructuredOperator) -> bool:
    """Whether ``f`` is a nonzero rational multiple of ``g``.

    Both operators are unit translations off their windows, so the only
    possible scalar is 1 and the predicate reduces to equality.
    """
    return operators_equal(f, g)


# -- block structure at cuts --------------------------------------------------


def _window_for_cut(f: StructuredOperator, cut: CutId) -> Window | None:
    ix = f.schema.index
    if ix.translatable:
        return hull(f.window, ix.neighborhood(cut, abs(f.tail_shift)))
    return f.window


def matrix_block(f: StructuredOperator, rows: list[int], cols: list[int]) -> DenseMatrix:
    """Entries ``[e_r^*](f(e_c))`` for the given labels."""
    out = []
    images = [apply_to_vector(f, {c: Fraction(1)}) for c in cols]
    for r in rows:
        out.append([img.get(r, Fraction(0)) for img in images])
    return DenseMatrix.from_rows(out, len(cols))


@dataclass(frozen=True)
class CutSplitting:
    """The four blocks of an operator at a cut, restricted to an absorbing window.

    Row labels live in the translated window; outside the windows the operator
    is the tail translation, which never crosses the cut (``C`` is complete).
    """

    cut: CutId
    window: Window | None
    row_lower: tuple[int, ...]
    row_upper: tuple[int, ...]
    col_lower: tuple[int, ...]
    col_upper: tuple[int, ...]
    A: DenseMatrix
    B: DenseMatrix
    C: DenseMatrix
    D: DenseMatrix
    tail_shift: int


def splitting_at_cut(f: StructuredOperator, cut: CutId) -> CutSplitting:
    s = f.schema
    ix = s.index
    w = _window_for_cut(f, cut)
    g = absorb(f, w)
    cols = g.indices
    rows = tuple(ix.shift(i, g.tail_shift) for i in cols)
    m = g.matrix
    rl = [k for k, i in enumerate(rows) if s.in_lower(cut, i)]
    ru = [k for k, i in enumerate(rows) if not s.in_lower(cut, i)]
    cl = [k for k, i in enumerate(cols) if s.in_lower(cut, i)]
    cu = [k for k, i in enumerate(cols) if not s.in_lower(cut, i)]
    return CutSplitting(
        cut=cut,
        window=g.window,
        row_lower=tuple(rows[k] for k in rl),
        row_upper=tuple(rows[k] for k in ru),
        col_lower=tuple(cols[k] for k in cl),
        col_upper=tuple(cols[k] for k in cu),
        A=m.submatrix(rl, cl),
        B=m.submatrix(rl, cu),
        C=m.submatrix(ru, cl),
        D=m.submatrix(ru, cu),
        tail_shift=g.tail_shift,
    )


def degree_at_cut(f: StructuredOperator, cut: CutId) -> int:
    """``rk C - rk C'`` for the splittings of ``f`` and ``f^-1`` at ``cut``."""
    return rank(splitting_at_cut(f, cut).C) - rank(splitting_at_cut(invert_op(f), cut).C)


@dataclass(frozen=True)
class DegreeReport:
    per_cut: dict[CutId, int]
    uniform_tail_degree: int


def degree_report(f: StructuredOperator, window: Window | None = None) -> DegreeReport:
    """Degrees at every finite cut, or at the EveryPosition cuts near the operator.

    Far from the window each cut sees only the tail, which contributes
    exactly ``tail_shift``.
    """
    s = f.schema
    ix = s.index
    if s.finite:
        cuts = list(s.cuts.positions)
    else:
        w = hull(window, f.window, invert_op(f).window)
        if w is not None and ix.translatable and f.tail_shift:
            d = abs(f.tail_shift)
            w = (ix.shift(w[0], -d), ix.shift(w[1], d))
        cuts = s.evaluated_cuts(w)
    return DegreeReport({a: degree_at_cut(f, a) for a in cuts}, f.tail_shift)


# -- membership predicates ----------------------------------------------------


def is_eventually_identity(f: StructuredOperator) -> bool:
    """Membership in GL(E, V): identity on all but finitely many basis vectors."""
    return f.tail_shift == 0


def is_w_aligned(f: StructuredOperator) -> bool:
    """Block upper triangular up to finitely many entries, for ``f`` and ``f^-1``.

    Inside any window there are finitely many entries; a nonzero tail puts one
    crossing entry at every far cut of an infinite cut family (for ``f`` or
    for its inverse), so only finitely many cuts tolerate a tail.
    """
    return f.tail_shift == 0 or f.schema.finite


def is_eligible(f: StructuredOperator) -> bool:
    if not is_w_aligned(f):
        return False
    return all(v == 0 for v in degree_report(f).per_cut.values())


def in_japanese_form(f: StructuredOperator, cut: CutId) -> bool:
    """Structural check of the finitary conditions at one cut.

    On an absorbed window: rows of ``A`` and columns of ``D`` have finitely
    many entries outside the window only through the tail (one unit entry
    each), and ``C`` has no tail contribution. The check verifies that the
    tail translation keeps far basis vectors on their side of the cut.
    """
    sp = splitting_at_cut(f, cut)
    s = f.schema
    ix = s.index
    w = sp.window
    if w is None or f.tail_shift == 0:
        return True
    # tail columns just outside the absorbing window must not cross the cut
    lo, hi = w
    probes = [ix.shift(lo, -k) for k in range(1, abs(f.tail_shift) + 2)] + \
        [ix.shift(hi, k) for k in range(1, abs(f.tail_shift) + 2)]
    for j in probes:
        t = ix.shift(j, f.tail_shift)
        if s.in_lower(cut, j) != s.in_lower(cut, t):
            return False
    return True


def is_mackey(f: StructuredOperator) -> bool:
    """Membership in the Mackey group: the finitary block conditions at every cut.

    A window matrix plus a translation tail always satisfies them, so this
    is a structural assertion on the representation rather than a filter.
    """
    s = f.schema
    if s.finite:
        cuts = list(s.cuts.positions)
    else:
        cuts = s.evaluated_cuts(hull(f.window, invert_op(f).window)) if f.window else []
    return all(in_japanese_form(f, a) for a in cuts)


def random_invertible(rng: random.Random, n: int, entries: int = 2) -> DenseMatrix:
    while True:
        m = DenseMatrix.from_rows(
            [[rng.randint(-entries, entries) for _ in range(n)] for _ in range(n)], n)
        if n == 0 or rank(m) == n:
            return m


def random_block_upper(rng: random.Random, schema: FlagSchema, window: Window,
                       entries: int = 2) -> StructuredOperator:
    """Random identity-tail operator whose window matrix has zero C blocks at every cut."""
    ix = schema.index
    w = ix.normalize_window(window)
    idx = ix.window_indices(w)
    n = len(idx)
    cuts = schema.cuts_between(w)

    def block(i):
        # number of cuts below i
        return sum(1 for a in cuts if not schema.in_lower(a, i))

    while True:
        rows = []
        for r, i in enumerate(idx):
            row = []
            for c, j in enumerate(idx):
                # zero whenever the output e_i lies in a higher block than the input e_j
                if block(i) > block(j):
                    row.append(0)
                else:
                    row.append(rng.randint(-entries, entries))
            rows.append(row)
        m = DenseMatrix.from_rows(rows, n)
        if rank(m) == n:
            return StructuredOperator(schema, w, 0, m)


def random_operator(schema: FlagSchema, rng: random.Random, window: Window,
                    tail_range: int = 0, entries: int = 2) -> StructuredOperator:
    ix = schema.index
    w = ix.normalize_window(window)
    n = len(ix.window_indices(w))
    d = rng.randint(-tail_range, tail_range) if (tail_range and ix.translatable) else 0
    return StructuredOperator(schema, w, d, random_invertible(rng, n, entries))
