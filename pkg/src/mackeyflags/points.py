"""Generalized flags commensurable with the reference flag, stored finitely.

A :class:`FlagPoint` is a window ``R`` together with one subspace of the
window coordinate space per cut class meeting ``R``. Outside ``R`` the flag is
the reference flag: ``e_i`` with ``i`` outside the window lies in ``W'_alpha``
exactly when ``i`` is in the lower set of ``alpha``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import DenseMatrix, Subspace, rank
from .schemas import (
    CutId,
    FlagSchema,
    SchemaError,
    Window,
    contains_window,
    hull,
)

__all__ = [
    "FlagPoint",
    "PointError",
    "enlarge_window",
    "is_commensurable",
    "random_point",
    "reference_point",
    "relative_position",
    "same_flag",
    "shifted_reference_point",
]


class PointError(ValueError):
    """Inconsistent flag point data."""


@dataclass(frozen=True)
class FlagPoint:
    schema: FlagSchema
    window: Window | None
    cuts: tuple[CutId, ...]
    chain: tuple[Subspace, ...]
    offsets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "window", self.schema.index.normalize_window(self.window))
        self.check()

    @property
    def indices(self) -> tuple[int, ...]:
        return self.schema.index.window_indices(self.window)

    def check(self) -> None:
        s = self.schema
        idx = self.indices
        n = len(idx)
        if list(self.cuts) != s.cuts_between(self.window):
            raise PointError(f"cut list {self.cuts} does not match the window {self.window}")
        if not (len(self.cuts) == len(self.chain) == len(self.offsets)):
            raise PointError("cuts, chain and offsets differ in length")
        if not s.finite and any(self.offsets):
            raise PointError("nonzero offsets need a finite cut family")
        prev = None
        for a, sub, off in zip(self.cuts, self.chain, self.offsets):
            if sub.ambient_dim != n:
                raise PointError(f"subspace at cut {a} lives in dimension {sub.ambient_dim}, window has {n}")
            expected = s.lower_count(a, idx) + off
            if sub.dim != expected:
                raise PointError(f"cut {a}: dimension {sub.dim}, expected {expected}")
            if prev is not None and not prev <= sub:
                raise PointError(f"chain not nested at cut {a}")
            prev = sub

    def component(self, cut: CutId) -> tuple[Subspace, int]:
        """Window component and offset of ``W'_cut`` for any cut of the schema."""
        idx = self.indices
        n = len(idx)
        c = self.schema.lower_count(cut, idx)
        if c == 0:
            return Subspace.zero(n), 0
        if c == n:
            return Subspace.full(n), 0
        for a, sub, off in zip(self.cuts, self.chain, self.offsets):
            if self.schema.lower_count(a, idx) == c:
                return sub, off
        raise PointError(f"no chain entry for cut {cut}")  # pragma: no cover

    def dims(self) -> tuple[int, ...]:
        return tuple(sub.dim for sub in self.chain)


def _coordinate_chain(schema: FlagSchema, idx: tuple[int, ...], cuts, extra=None):
    n = len(idx)
    out = []
    for a in cuts:
        coords = [k for k, i in enumerate(idx) if schema.in_lower(a, i)]
        if extra:
            coords = extra(a, coords)
        out.append(Subspace.coordinate(coords, n))
    return tuple(out)


def reference_point(schema: FlagSchema, window: Window | None) -> FlagPoint:
    w = schema.index.normalize_window(window)
    idx = schema.index.window_indices(w)
    cuts = tuple(schema.cuts_between(w))
    return FlagPoint(schema, w, cuts, _coordinate_chain(schema, idx, cuts), (0,) * len(cuts))


def shifted_reference_point(schema: FlagSchema, k: int, window: Window | None = None) -> FlagPoint:
    """The coordinate flag ``W^k`` of the component ``X(k)`` (single-cut SatoSplit).

    ``k > 0`` adds ``e_1, ..., e_k`` to the subspace, ``k < 0`` removes
    ``e_k, ..., e_{-1}``. The window is widened to contain all of these.
    """
    ix = schema.index
    if not (schema.finite and len(schema.cuts.positions) == 1 and ix.translatable):
        raise SchemaError("shifted components need a single cut on a translatable index kind")
    (a,) = schema.cuts.positions
    w = hull(window, ix.neighborhood(a, abs(k)))
    idx = ix.window_indices(w)
    moved = {ix.shift(a, j) for j in range(1, k + 1)} if k > 0 else \
        {ix.shift(a, -j) for j in range(0, -k)}

    def extra(cut, coords):
        if k > 0:
            return coords + [idx.index(i) for i in moved]
        return [c for c in coords if idx[c] not in moved]

    cuts = tuple(schema.cuts_between(w))
    return FlagPoint(schema, w, cuts, _coordinate_chain(schema, idx, cuts, extra), (k,))


def enlarge_window(p: FlagPoint, new_window: Window | None) -> FlagPoint:
    """Same flag described on a larger window."""
    s = p.schema
    new_window = s.index.normalize_window(new_window)
    if not contains_window(new_window, p.window):
        raise PointError(f"window {new_window} does not contain {p.window}")
    if new_window == p.window:
        return p
    old_idx = p.indices
    new_idx = s.index.window_indices(new_window)
    where = {i: k for k, i in enumerate(new_idx)}
    placed = [where[i] for i in old_idx]
    fresh = [i for i in new_idx if i not in set(old_idx)]
    n = len(new_idx)
    cuts = tuple(s.cuts_between(new_window))
    chain, offsets = [], []
    for a in cuts:
        sub, off = p.component(a)
        vecs = list(sub.embed(placed, n).vectors)
        one = Fraction(1)
        for i in fresh:
            if s.in_lower(a, i):
                v = [Fraction(0)] * n
                v[where[i]] = one
                vecs.append(v)
        chain.append(Subspace.span(vecs, n))
        offsets.append(off)
    return FlagPoint(s, new_window, cuts, tuple(chain), tuple(offsets))


def _common(p: FlagPoint, q: FlagPoint) -> tuple[FlagPoint, FlagPoint]:
    if p.schema != q.schema:
        raise PointError("flag points belong to different schemas")
    w = hull(p.window, q.window)
    return enlarge_window(p, w), enlarge_window(q, w)


def relative_position(p: FlagPoint) -> dict[CutId, int]:
    """Offset of every evaluated cut; all zero exactly on the reference component."""
    return {a: p.component(a)[1] for a in p.schema.evaluated_cuts(p.window)}


def is_commensurable(p: FlagPoint, q: FlagPoint) -> bool:
    p2, q2 = _common(p, q)
    return relative_position(p2) == relative_position(q2)


def same_flag(p: FlagPoint, q: FlagPoint) -> bool:
    p2, q2 = _common(p, q)
    return p2.chain == q2.chain and p2.offsets == q2.offsets


def random_point(schema: FlagSchema, rng: random.Random, window: Window,
                 entries: int = 2) -> FlagPoint:
    """A random point of the reference component on ``window``.

    The chain is spanned by leading columns of a random invertible matrix,
    so every admissible flag of the right type can occur.
    """
    w = schema.index.normalize_window(window)
    idx = schema.index.window_indices(w)
    n = len(idx)
    while True:
        q = DenseMatrix.from_rows(
            [[rng.randint(-entries, entries) for _ in range(n)] for _ in range(n)], n)
        if rank(q) == n:
            break
    cols = q.transpose().rows
    cuts = tuple(schema.cuts_between(w))
    chain = tuple(Subspace.span(cols[: schema.lower_count(a, idx)], n) for a in cuts)
    return FlagPoint(schema, w, cuts, chain, (0,) * len(cuts))
