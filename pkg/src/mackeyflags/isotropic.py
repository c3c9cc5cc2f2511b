"""Symmetric and symplectic forms pairing ``e_i`` with ``e_-i``.

On a pairing-closed window ``[-m, m]`` listed in increasing order, the
pairing ``i <-> -i`` is the reversal of the list, so the Gram matrix is the
antidiagonal ``J`` for the orthogonal forms and ``D J`` for the symplectic
one, where ``D`` is ``-1`` on negative labels and ``+1`` on positive ones.

Conventions: ``(e_0, e_0) = 1`` on AllInts; for the symplectic form
``(e_i, e_-i) = 1`` and ``(e_-i, e_i) = -1`` when ``i > 0``.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .linalg import DenseMatrix, Subspace, annihilator, invert
from .operators import OperatorError, StructuredOperator, absorb
from .points import FlagPoint, enlarge_window
from .schemas import FlagSchema, IndexKind, SchemaError, Window, hull

__all__ = [
    "DegenerateFlagWarning",
    "FormKind",
    "FormSchema",
    "GramWindow",
    "antidiagonal_reflection",
    "gram_window",
    "is_isotropic_flag",
    "pairing_closed",
    "preserves_form",
    "random_form_preserving",
    "reflection_condition",
]


class FormKind(str, Enum):
    ORTHOGONAL_ALL_INTS = "orthogonal-on-AllInts"
    ORTHOGONAL_SATO = "orthogonal-on-SatoSplit"
    SYMPLECTIC_SATO = "symplectic-on-SatoSplit"


_INDEX_KIND = {
    FormKind.ORTHOGONAL_ALL_INTS: IndexKind.ALL_INTS,
    FormKind.ORTHOGONAL_SATO: IndexKind.SATO_SPLIT,
    FormKind.SYMPLECTIC_SATO: IndexKind.SATO_SPLIT,
}


class DegenerateFlagWarning(UserWarning):
    """The flag belongs to a case excluded from the isotropic correspondence."""


@dataclass(frozen=True)
class FormSchema:
    kind: FormKind

    def __post_init__(self):
        object.__setattr__(self, "kind", FormKind(self.kind))

    @property
    def symplectic(self) -> bool:
        return self.kind is FormKind.SYMPLECTIC_SATO

    @property
    def index_kind(self) -> IndexKind:
        return _INDEX_KIND[self.kind]

    def pair(self, i: int, j: int) -> int:
        """``(e_i, e_j)``."""
        if i != -j:
            return 0
        if self.symplectic and i < 0:
            return -1
        return 1

    def check_schema(self, s: FlagSchema) -> None:
        if s.index.kind is not self.index_kind:
            raise SchemaError(f"{self.kind.value} needs index kind {self.index_kind.value}, got {s.index.kind.value}")


@dataclass(frozen=True)
class GramWindow:
    window: Window
    gram: DenseMatrix


def pairing_closed(w: Window | None) -> Window:
    if w is None:
        return (-1, 1)
    m = max(abs(w[0]), abs(w[1]), 1)
    return (-m, m)


def gram_window(form: FormSchema, schema: FlagSchema, window: Window) -> GramWindow:
    w = pairing_closed(window)
    idx = schema.index.window_indices(w)
    g = DenseMatrix.from_rows([[form.pair(i, j) for j in idx] for i in idx], len(idx))
    return GramWindow(w, g)


def _closed_op(f: StructuredOperator, form: FormSchema) -> tuple[StructuredOperator, GramWindow]:
    form.check_schema(f.schema)
    if f.tail_shift:
        raise OperatorError("a translation tail never preserves the pairing of i with -i")
    gw = gram_window(form, f.schema, f.window)
    return absorb(f, gw.window), gw


def preserves_form(f: StructuredOperator, form: FormSchema) -> bool:
    """``M^T G M == G`` on a pairing-closed window."""
    g, gw = _closed_op(f, form)
    m = g.matrix
    return m.transpose() @ gw.gram @ m == gw.gram


def antidiagonal_reflection(m: DenseMatrix) -> DenseMatrix:
    """``J M^T J``: the transpose across the antidiagonal."""
    n = m.nrows
    return DenseMatrix(tuple(tuple(m[n - 1 - j, n - 1 - i] for j in range(n)) for i in range(n)), n)


def reflection_condition(f: StructuredOperator, form: FormSchema) -> bool:
    """Antidiagonal reflection of ``M`` against ``M^-1``.

    Orthogonal: ``refl(M) == M^-1``. Symplectic: ``D refl(M) D == M^-1``,
    i.e. the reflected entries pick up the sign ``-1`` exactly when they
    couple a negative and a positive label.
    """
    g, _ = _closed_op(f, form)
    m = g.matrix
    r = antidiagonal_reflection(m)
    if form.symplectic:
        signs = [-1 if i < 0 else 1 for i in g.indices]
        r = DenseMatrix(tuple(tuple(x * signs[a] * signs[b] for b, x in enumerate(row))
                              for a, row in enumerate(r.rows)), r.ncols)
    return r == invert(m)


def _perp(sub: Subspace, gram: DenseMatrix) -> Subspace:
    """``{x : (s, x) = 0 for all s in sub}``."""
    gt = gram.transpose()
    return annihilator(Subspace.span((gt.apply(v) for v in sub.vectors), sub.ambient_dim))


def _perp_cut(s: FlagSchema, a: int) -> int:
    """The cut whose lower set is the set of labels paired with the upper set of ``a``."""
    return s.index.pred(-a)


def degenerate_warnings(p: FlagPoint, form: FormSchema) -> list[str]:
    """Excluded configurations present in the flag.

    Only the orthogonal exclusion (a two-dimensional block between a member
    and its perp) can occur here: every lower set is infinite, so there is no
    one-dimensional isotropic member for the symplectic exclusion.
    """
    s = p.schema
    if not s.finite:
        return []
    ix = s.index
    out = []
    for a in s.cuts.positions:
        b = _perp_cut(s, a)
        if not ix.lt(a, b):
            continue
        size = ix.position(b) - ix.position(a)
        if not form.symplectic and size == 2:
            out.append(f"orthogonal flag with a two-dimensional block between cuts {a} and {b}")
    return out


def is_isotropic_flag(p: FlagPoint, form: FormSchema) -> bool:
    """Every member isotropic or coisotropic, and the chain closed under ``perp``."""
    s = p.schema
    form.check_schema(s)
    for msg in degenerate_warnings(p, form):
        warnings.warn(msg, DegenerateFlagWarning, stacklevel=2)
    w = pairing_closed(hull(p.window, s.cut_margin_window(1)))
    q = enlarge_window(p, w)
    gram = gram_window(form, s, w).gram
    for a in s.cuts_between(w):
        sub, _ = q.component(a)
        perp = _perp(sub, gram)
        if not (sub <= perp or perp <= sub):
            return False
        b = _perp_cut(s, a)
        if b is None or not s.is_cut(b):
            return False
        if q.component(b)[0] != perp:
            return False
    return True


# -- random generators of the form-preserving group ---------------------------


def _exp_nilpotent(x: DenseMatrix) -> DenseMatrix:
    n = x.nrows
    out = DenseMatrix.identity(n)
    term = DenseMatrix.identity(n)
    for k in range(1, n + 1):
        term = (term @ x).scale(Fraction(1, k))
        if term.is_zero():
            break
        out = out + term
    return out


def _lie_element(e: DenseMatrix, gram: DenseMatrix) -> DenseMatrix:
    """``E - G^-1 E^T G``, which satisfies ``X^T G + G X = 0``."""
    return e - invert(gram) @ e.transpose() @ gram


def random_form_preserving(form: FormSchema, schema: FlagSchema, rng: random.Random,
                           window: Window, factors: int = 3, entries: int = 2) -> StructuredOperator:
    """Product of random unipotent, torus and Weyl-type generators."""
    form.check_schema(schema)
    gw = gram_window(form, schema, window)
    idx = schema.index.window_indices(gw.window)
    n = len(idx)
    m = DenseMatrix.identity(n)
    for _ in range(factors):
        kind = rng.choice(("upper", "lower", "torus", "swap"))
        if kind in ("upper", "lower"):
            rows = [[rng.randint(-entries, entries) if (c > r if kind == "upper" else c < r) else 0
                     for c in range(n)] for r in range(n)]
            g = _exp_nilpotent(_lie_element(DenseMatrix.from_rows(rows, n), gw.gram))
        elif kind == "torus":
            t = {}
            for i in idx:
                if i > 0:
                    t[i] = Fraction(rng.choice([1, 2, 3, -1, -2])) ** rng.choice([1, -1])
                    t[-i] = 1 / t[i]
                elif i == 0:
                    t[0] = Fraction(rng.choice([1, -1]))
            g = DenseMatrix.from_rows([[t[i] if i == j else 0 for j in idx] for i in idx], n)
        else:
            i = rng.choice([i for i in idx if i > 0])
            rows = [[int(r == c) for c in idx] for r in idx]
            a, b = idx.index(i), idx.index(-i)
            rows[a][a] = rows[b][b] = 0
            rows[b][a] = 1
            rows[a][b] = -1 if form.symplectic else 1
            g = DenseMatrix.from_rows(rows, n)
        m = m @ g
    return StructuredOperator(schema, gw.window, 0, m)
