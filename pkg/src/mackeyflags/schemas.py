"""Ordered basis index sets and the cut structure of the reference flag.

Indices are integer labels. A window is an inclusive integer range
``(lo, hi)``; its elements are the valid labels in that range, listed in the
index order. For ``PosThenNeg`` a range with ``lo < 0 < hi`` is the union of
an initial and a final segment of the order, which is the natural exhaustion
of that ordered set by finite pieces.

A cut is identified by the label of the largest index of its lower set, so
the subspace ``W_alpha`` is spanned by ``e_i`` with ``i <= alpha`` in the
index order.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Iterator, Union

__all__ = [
    "CutId",
    "EveryPosition",
    "FiniteCuts",
    "FlagSchema",
    "IndexKind",
    "IndexSchema",
    "SchemaError",
    "TypeVector",
    "Window",
    "dual_schema",
    "is_symmetric",
    "is_symmetric_type",
    "reversal",
    "shifted_schema",
    "truncate_type",
    "validate_schema",
]

CutId = int
Window = tuple[int, int]
TypeVector = tuple[int, ...]


class SchemaError(ValueError):
    """Malformed or unsupported schema."""


class IndexKind(str, Enum):
    POSITIVE_INTS = "PositiveInts"
    ALL_INTS = "AllInts"
    SATO_SPLIT = "SatoSplit"
    POS_THEN_NEG = "PosThenNeg"
    # reversed copy of PositiveInts (i -> -i); only produced by dual_schema
    NEGATIVE_INTS = "NegativeInts"


_TRANSLATABLE = {IndexKind.ALL_INTS, IndexKind.SATO_SPLIT}


@dataclass(frozen=True)
class IndexSchema:
    kind: IndexKind
    paired: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", IndexKind(self.kind))
        if self.paired and self.kind not in _TRANSLATABLE:
            raise SchemaError(f"pairing i <-> -i is not meaningful on {self.kind.value}")

    # -- membership and order ------------------------------------------------

    def is_index(self, i: int) -> bool:
        k = self.kind
        if k is IndexKind.ALL_INTS:
            return True
        if k is IndexKind.POSITIVE_INTS:
            return i > 0
        if k is IndexKind.NEGATIVE_INTS:
            return i < 0
        return i != 0

    def key(self, i: int):
        if self.kind is IndexKind.POS_THEN_NEG:
            return (0, i) if i > 0 else (1, i)
        return i

    def lt(self, i: int, j: int) -> bool:
        return self.key(i) < self.key(j)

    @property
    def minimum(self) -> int | None:
        return {IndexKind.POSITIVE_INTS: 1, IndexKind.POS_THEN_NEG: 1}.get(self.kind)

    @property
    def maximum(self) -> int | None:
        return {IndexKind.NEGATIVE_INTS: -1, IndexKind.POS_THEN_NEG: -1}.get(self.kind)

    def succ(self, i: int) -> int | None:
        """Immediate successor, or None when ``i`` has none."""
        k = self.kind
        if k is IndexKind.SATO_SPLIT:
            return 1 if i == -1 else i + 1
        if i == self.maximum:
            return None
        return i + 1

    def pred(self, i: int) -> int | None:
        k = self.kind
        if k is IndexKind.SATO_SPLIT:
            return -1 if i == 1 else i - 1
        if i == self.minimum:
            return None
        return i - 1

    # -- translation -----------------------------------------------------------

    @property
    def translatable(self) -> bool:
        return self.kind in _TRANSLATABLE

    def position(self, i: int) -> int:
        """Order-preserving bijection onto Z for translatable kinds."""
        if self.kind is IndexKind.SATO_SPLIT:
            return i if i < 0 else i - 1
        return i

    def label(self, p: int) -> int:
        if self.kind is IndexKind.SATO_SPLIT:
            return p if p < 0 else p + 1
        return p

    def shift(self, i: int, d: int) -> int:
        """``succ^d(i)``; only defined on translatable kinds (or ``d == 0``)."""
        if d == 0:
            return i
        if not self.translatable:
            raise SchemaError(f"no translation on {self.kind.value}")
        return self.label(self.position(i) + d)

    # -- windows ---------------------------------------------------------------

    def window_indices(self, w: Window | None) -> tuple[int, ...]:
        if w is None:
            return ()
        lo, hi = w
        return tuple(sorted((i for i in range(lo, hi + 1) if self.is_index(i)), key=self.key))

    def shift_window(self, w: Window | None, d: int) -> Window | None:
        if w is None or d == 0:
            return w
        return (self.shift(w[0], d), self.shift(w[1], d))

    def normalize_window(self, w: Window | None) -> Window | None:
        """Shrink bounds to valid labels; None for an empty window."""
        idx = [i for i in range(w[0], w[1] + 1) if self.is_index(i)] if w else []
        if not idx:
            return None
        return (min(idx), max(idx))

    def neighborhood(self, i: int, margin: int) -> Window:
        """Window covering ``margin`` steps on either side of ``i`` (and ``i``'s successor)."""
        if self.translatable:
            p = self.position(i)
            return (self.label(p - margin), self.label(p + margin + 1))
        s = self.succ(i)
        lo, hi = min(i, s if s is not None else i), max(i, s if s is not None else i)
        return (lo, hi)


def hull(*windows: Window | None) -> Window | None:
    ws = [w for w in windows if w is not None]
    if not ws:
        return None
    return (min(w[0] for w in ws), max(w[1] for w in ws))


def contains_window(outer: Window | None, inner: Window | None) -> bool:
    if inner is None:
        return True
    if outer is None:
        return False
    return outer[0] <= inner[0] and inner[1] <= outer[1]


@dataclass(frozen=True)
class FiniteCuts:
    positions: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(self.positions))


@dataclass(frozen=True)
class EveryPosition:
    pass


CutFamily = Union[FiniteCuts, EveryPosition]


@dataclass(frozen=True)
class FlagSchema:
    index: IndexSchema
    cuts: CutFamily = field(default_factory=EveryPosition)

    @property
    def finite(self) -> bool:
        return isinstance(self.cuts, FiniteCuts)

    def is_cut(self, a: int) -> bool:
        if not self.index.is_index(a):
            return False
        if self.finite:
            return a in self.cuts.positions
        return a != self.index.maximum

    def in_lower(self, cut: CutId, i: int) -> bool:
        return self.index.key(i) <= self.index.key(cut)

    def lower_count(self, cut: CutId, indices: tuple[int, ...]) -> int:
        return sum(1 for i in indices if self.in_lower(cut, i))

    def cuts_between(self, w: Window | None) -> list[CutId]:
        """Cuts whose lower set meets the window properly, one per class.

        Cuts that induce the same subset of the window share one class (their
        window components are forced to coincide); the smallest such cut
        represents it.
        """
        idx = self.index.window_indices(w)
        n = len(idx)
        if n == 0:
            return []
        if self.finite:
            out, seen = [], set()
            for a in self.cuts.positions:
                c = self.lower_count(a, idx)
                if 0 < c < n and c not in seen:
                    seen.add(c)
                    out.append(a)
            return out
        return [idx[c - 1] for c in range(1, n)]

    def evaluated_cuts(self, w: Window | None) -> list[CutId]:
        """All finite cuts, or the EveryPosition cuts lying in the window."""
        if self.finite:
            return list(self.cuts.positions)
        idx = self.index.window_indices(w)
        return [i for i in idx if self.is_cut(i)]

    def cut_margin_window(self, margin: int) -> Window | None:
        """Hull of the ``margin``-neighbourhoods of every finite cut."""
        if not self.finite:
            return None
        return hull(*(self.index.neighborhood(a, margin) for a in self.cuts.positions))


def validate_schema(s: FlagSchema) -> None:
    """Raise :class:`SchemaError` unless every cut separates two nonempty blocks."""
    ix = s.index
    if not s.finite:
        return
    pos = s.cuts.positions
    if not pos:
        raise SchemaError("a finite cut family needs at least one cut")
    for a in pos:
        if not ix.is_index(a):
            raise SchemaError(f"cut {a} is not an index of {ix.kind.value}")
        if a == ix.maximum:
            raise SchemaError(f"cut after the maximal index {a} leaves an empty block")
    for a, b in zip(pos, pos[1:]):
        if a == b:
            raise SchemaError(f"repeated cut {a}: empty block")
        if not ix.lt(a, b):
            raise SchemaError(f"cuts not increasing in the index order: {a}, {b}")


# -- symmetry and duality ------------------------------------------------------

_INF = None


def _block_sizes(s: FlagSchema) -> list[int | None]:
    """Sizes of the blocks between consecutive cuts; None for infinite blocks."""
    ix = s.index
    pos = s.cuts.positions
    sizes: list[int | None] = []
    # first block: from the minimum (if any) up to the first cut
    first = pos[0]
    if ix.minimum is not None and (ix.kind is not IndexKind.POS_THEN_NEG or first > 0):
        sizes.append(first - ix.minimum + 1)
    else:
        sizes.append(_INF)
    for a, b in zip(pos, pos[1:]):
        sizes.append(_interval_size(ix, a, b))
    last = pos[-1]
    if ix.maximum is not None and (ix.kind is not IndexKind.POS_THEN_NEG or last < 0):
        sizes.append(ix.maximum - last)
    else:
        sizes.append(_INF)
    return sizes


def _interval_size(ix: IndexSchema, a: int, b: int) -> int | None:
    """Number of indices i with a < i <= b."""
    if ix.kind is IndexKind.POS_THEN_NEG and a > 0 > b:
        return _INF
    if ix.kind is IndexKind.SATO_SPLIT:
        return ix.position(b) - ix.position(a)
    return b - a


def is_symmetric(s: FlagSchema) -> bool:
    """Whether an order-reversing bijection of the index set maps blocks to blocks."""
    validate_schema(s)
    k = s.index.kind
    if not s.finite:
        return k in (IndexKind.ALL_INTS, IndexKind.SATO_SPLIT, IndexKind.POS_THEN_NEG)
    sizes = _block_sizes(s)
    return sizes == sizes[::-1]


def is_symmetric_type(dims: TypeVector, total: int) -> bool:
    """Palindromic successive differences of ``(0, *dims, total)``."""
    full = (0, *dims, total)
    steps = [b - a for a, b in zip(full, full[1:])]
    return steps == steps[::-1]


def reversal(s: FlagSchema) -> Callable[[int], int]:
    """The order-reversing index bijection used to identify ``V_*`` with ``V``.

    Requires a symmetric schema. For finite cut families on translatable
    kinds the offset is chosen so that the first and last cuts swap; for
    every other symmetric schema it is ``i -> -i``.
    """
    if not is_symmetric(s):
        raise SchemaError("schema is not symmetric")
    ix = s.index
    if ix.kind is IndexKind.POS_THEN_NEG:
        return lambda i: -i
    if s.finite:
        p = s.cuts.positions
        c = ix.position(p[0]) + ix.position(p[-1]) + 1
    else:
        c = -1 if ix.kind is IndexKind.SATO_SPLIT else 0
    return lambda i: ix.label(c - ix.position(i))


_DUAL_KIND = {
    IndexKind.POSITIVE_INTS: IndexKind.NEGATIVE_INTS,
    IndexKind.NEGATIVE_INTS: IndexKind.POSITIVE_INTS,
}


def dual_schema(s: FlagSchema) -> FlagSchema:
    """Schema of the chain of annihilators, relabelled by ``i -> -i``.

    The annihilator of ``W_alpha`` is spanned by ``e_i^*`` with ``i`` above
    ``alpha``; negating labels reverses the order, turning these upper sets
    into lower sets.
    """
    validate_schema(s)
    ix = s.index
    dix = IndexSchema(_DUAL_KIND.get(ix.kind, ix.kind), ix.paired)
    if not s.finite:
        return FlagSchema(dix, EveryPosition())
    # upper set {i > a} becomes {j < -a}, whose largest element is pred(-a)
    dual = sorted((dix.pred(-a) for a in s.cuts.positions), key=dix.key)
    return FlagSchema(dix, FiniteCuts(tuple(dual)))


def shifted_schema(s: FlagSchema, k: int) -> FlagSchema:
    """Move the single cut of a SatoSplit schema ``k`` steps up."""
    if s.index.kind is not IndexKind.SATO_SPLIT or not s.finite or len(s.cuts.positions) != 1:
        raise SchemaError("shifted_schema needs a single-cut SatoSplit schema")
    (a,) = s.cuts.positions
    return replace(s, cuts=FiniteCuts((s.index.shift(a, k),)))


def truncate_type(s: FlagSchema, w: Window) -> TypeVector:
    idx = s.index.window_indices(w)
    if not idx:
        raise SchemaError("empty window")
    return tuple(s.lower_count(a, idx) for a in s.cuts_between(w))


def iter_indices(ix: IndexSchema, w: Window | None) -> Iterator[int]:
    yield from ix.window_indices(w)
