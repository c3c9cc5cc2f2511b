"""Built-in scenarios: the five worked examples and the Sato grassmannian.

Each scenario bundles a schema, a default window, a generator of random
representable operators, and a golden predicate written directly from the
matrix description of the example's group. The golden predicates only read
matrix entries (through ``apply_to_vector`` on a large finite range) and
ranks; they never look at windows, tails or splittings, so they give an
independent check of ``is_w_aligned`` and ``is_eligible``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .linalg import DenseMatrix, rank
from .operators import (
    StructuredOperator,
    apply_to_vector,
    invert_op,
    is_eligible,
    is_w_aligned,
    random_invertible,
)
from .schemas import EveryPosition, FiniteCuts, FlagSchema, IndexKind, IndexSchema, Window

__all__ = [
    "SCENARIOS",
    "Scenario",
    "get_scenario",
    "library_predicate",
]


@dataclass(frozen=True)
class Scenario:
    name: str
    schema: FlagSchema
    window: Window
    description: str
    golden: Callable[[StructuredOperator], bool]
    max_tail: int = 0

    def random_operator(self, rng: random.Random, max_size: int = 6) -> StructuredOperator:
        ix = self.schema.index
        lo = rng.randint(-4, 3)
        hi = lo + rng.randint(1, max_size)
        if ix.kind is IndexKind.POSITIVE_INTS:
            lo, hi = 1 + abs(lo), 1 + abs(lo) + hi - lo
        w = ix.normalize_window((lo, hi))
        n = len(ix.window_indices(w))
        d = rng.randint(-self.max_tail, self.max_tail) if self.max_tail else 0
        return StructuredOperator(self.schema, w, d, random_invertible(rng, n))


def library_predicate(f: StructuredOperator) -> bool:
    return is_w_aligned(f) and is_eligible(f)


# -- entry-level helpers ------------------------------------------------------


def _range(f: StructuredOperator, scale: int = 1) -> list[int]:
    """Labels of ``[-N, N]`` in index order, with ``N`` well past the window and tail."""
    w = f.window or (0, 0)
    n = scale * (max(abs(w[0]), abs(w[1])) + 3 * abs(f.tail_shift) + 4)
    ix = f.schema.index
    return list(ix.window_indices((-n, n)))


def _entries(f: StructuredOperator, labels: list[int]) -> dict[tuple[int, int], Fraction]:
    """Nonzero ``(row, col)`` entries of ``f`` with column in ``labels`` (rows unrestricted)."""
    out = {}
    for j in labels:
        for i, x in apply_to_vector(f, {j: Fraction(1)}).items():
            out[(i, j)] = x
    return out


def _below_count(f: StructuredOperator, scale: int) -> int:
    ix = f.schema.index
    labels = _range(f, scale)
    return sum(1 for (i, j) in _entries(f, labels) if ix.lt(j, i))


def _finitely_many_below(f: StructuredOperator) -> bool:
    # entries are finitely many exactly when the count stops growing with the range
    return _below_count(f, 1) == _below_count(f, 2)


def _lines_finitary(f: StructuredOperator) -> bool:
    """Every column and every row has finitely many nonzero entries.

    Columns are images of basis vectors, always finite; rows are checked by
    counting, per row label in range, the columns (over a doubled range) that
    reach it.
    """
    labels = _range(f, 1)
    wide = _range(f, 2)
    ent = _entries(f, wide)
    per_row: dict[int, int] = {}
    for (i, _j) in ent:
        per_row[i] = per_row.get(i, 0) + 1
    ent3 = _entries(f, _range(f, 3))
    per_row3: dict[int, int] = {}
    for (i, _j) in ent3:
        per_row3[i] = per_row3.get(i, 0) + 1
    return all(per_row.get(i, 0) == per_row3.get(i, 0) for i in labels)


def _crossing_rank(f: StructuredOperator, lower: Callable[[int], bool]) -> int:
    labels = _range(f, 2)
    ent = _entries(f, labels)
    rows = sorted({i for (i, j) in ent if not lower(i) and lower(j)})
    cols = [j for j in labels if lower(j)]
    m = DenseMatrix.from_rows([[ent.get((i, j), 0) for j in cols] for i in rows], len(cols))
    return rank(m)


def _ranks_balanced(f: StructuredOperator, lower: Callable[[int], bool]) -> bool:
    return _crossing_rank(f, lower) == _crossing_rank(invert_op(f), lower)


# -- golden predicates --------------------------------------------------------


def _golden_sato(f: StructuredOperator) -> bool:
    """``[[A, B], [C, D]]`` with A-rows, D-columns and C finitary, and rk C = rk C'."""
    lower = lambda i: i < 0  # noqa: E731
    labels = _range(f, 1)
    c_small = sum(1 for (i, j) in _entries(f, labels) if i > 0 and j < 0)
    c_large = sum(1 for (i, j) in _entries(f, _range(f, 2)) if i > 0 and j < 0)
    if c_small != c_large:
        return False
    return _lines_finitary(f) and _ranks_balanced(f, lower)


def _golden_ex2_2(f: StructuredOperator) -> bool:
    """Finitely many nonzero entries below the diagonal, for the matrix and its inverse."""
    return _finitely_many_below(f) and _finitely_many_below(invert_op(f))


def _golden_ex2_3(f: StructuredOperator) -> bool:
    """As for the positive integers, plus rk C = rk C' at every diagonal position."""
    if not (_finitely_many_below(f) and _finitely_many_below(invert_op(f))):
        return False
    labels = _range(f, 1)
    return all(_ranks_balanced(f, lambda i, n=n: i <= n) for n in labels)


def _golden_ex2_4(f: StructuredOperator) -> bool:
    """Each row and each column finitary."""
    return _lines_finitary(f) and _lines_finitary(invert_op(f))


def _golden_ex2_5(f: StructuredOperator) -> bool:
    """Rows and columns finitary, finitely many entries below the diagonal."""
    return _golden_ex2_4(f) and _finitely_many_below(f) and _finitely_many_below(invert_op(f))


_SATO = FlagSchema(IndexSchema(IndexKind.SATO_SPLIT, paired=True), FiniteCuts((-1,)))

SCENARIOS: dict[str, Scenario] = {
    "ex2_1": Scenario(
        "ex2_1", _SATO, (-2, 2),
        "Sato grassmannian: negatives below positives, one cut between them",
        _golden_sato, max_tail=2),
    "ex2_2": Scenario(
        "ex2_2", FlagSchema(IndexSchema(IndexKind.POSITIVE_INTS), EveryPosition()), (1, 4),
        "ascending chain W_n = <e_1, ..., e_n> on the positive integers",
        _golden_ex2_2),
    "ex2_3": Scenario(
        "ex2_3", FlagSchema(IndexSchema(IndexKind.ALL_INTS), EveryPosition()), (-2, 2),
        "chain W_n = <e_i, i <= n> on the integers",
        _golden_ex2_3, max_tail=2),
    "ex2_4": Scenario(
        "ex2_4", FlagSchema(IndexSchema(IndexKind.POS_THEN_NEG), FiniteCuts((1, -2))), (-3, 3),
        "0 < <e_1> < <e_i, i != -1> < V on positives followed by negatives",
        _golden_ex2_4),
    "ex2_5": Scenario(
        "ex2_5", FlagSchema(IndexSchema(IndexKind.POS_THEN_NEG), EveryPosition()), (-3, 3),
        "cut after every index of positives followed by negatives",
        _golden_ex2_5),
    "sato": Scenario(
        "sato", _SATO, (-2, 2),
        "Sato grassmannian with shift operators",
        _golden_sato, max_tail=5),
}


def get_scenario(name: str) -> Scenario:
    try:
        return SCENARIOS[name]
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; known: {', '.join(SCENARIOS)}") from None
