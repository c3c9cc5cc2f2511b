"""Operators acting on flag points, and the duality involution.

``act`` follows the annihilator description of the action: the dual chain
``W'^perp`` is moved by the dual of ``f^-1`` and the annihilator of the image
is taken again. Nothing here assumes ``f`` is the identity far away, which
is what makes it usable for translation tails. ``act_direct`` pushes the
chain forward by the window matrix and serves as an independent oracle for
eventually-identity operators.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Subspace, annihilator
from .operators import (
    StructuredOperator,
    absorb,
    apply_to_vector,
    bar_op,
    invert_op,
    is_eventually_identity,
)
from .points import FlagPoint, PointError, enlarge_window, same_flag
from .schemas import SchemaError, hull, is_symmetric, reversal

__all__ = [
    "ActionError",
    "act",
    "act_direct",
    "duality_map",
    "in_stabilizer",
]


class ActionError(ValueError):
    """The action cannot be evaluated for these inputs."""


def _action_window(f: StructuredOperator, p: FlagPoint):
    s = f.schema
    d = abs(f.tail_shift)
    return hull(p.window, f.window, s.cut_margin_window(d) if d else None)


def act(f: StructuredOperator, p: FlagPoint) -> FlagPoint:
    """``f . p``, computed through annihilators in the dual window coordinates."""
    s = p.schema
    if f.schema != s:
        raise ActionError("operator and point belong to different schemas")
    d = f.tail_shift
    if d and not s.finite:
        raise ActionError("a translation tail moves infinitely many cuts of an EveryPosition family")
    ix = s.index
    big = _action_window(f, p)
    q = enlarge_window(p, big)
    idx = q.indices
    h = bar_op(invert_op(f))  # same window as f, tail d
    out_window = hull(big, ix.shift_window(big, d))
    out_idx = ix.window_indices(out_window)
    out_pos = {i: k for k, i in enumerate(out_idx)}
    n_out = len(out_idx)
    in_big = set(idx)
    # labels outside ``big`` whose dual vectors are carried into the output window
    carried = [j for j in (ix.shift(i, -d) for i in out_idx) if j not in in_big]

    cuts = s.cuts_between(out_window)
    chain, offsets = [], []
    for a in cuts:
        sub, _ = q.component(a)
        dual_vecs = []
        for y in annihilator(sub).vectors:
            image = apply_to_vector(h, {i: c for i, c in zip(idx, y) if c})
            dual_vecs.append(_dense(image, out_pos, n_out))
        for j in carried:
            if not s.in_lower(a, j):
                dual_vecs.append(_dense({ix.shift(j, d): Fraction(1)}, out_pos, n_out))
        res = annihilator(Subspace.span(dual_vecs, n_out))
        chain.append(res)
        offsets.append(res.dim - s.lower_count(a, out_idx))
    return FlagPoint(s, out_window, tuple(cuts), tuple(chain), tuple(offsets))


def _dense(v: dict[int, Fraction], pos: dict[int, int], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for i, x in v.items():
        if i not in pos:
            raise ActionError(f"image vector leaves the action window at index {i}")  # pragma: no cover
        out[pos[i]] = x
    return out


def act_direct(f: StructuredOperator, p: FlagPoint) -> FlagPoint:
    """Image of each chain member under the window matrix (eventually-identity ``f`` only)."""
    if f.schema != p.schema:
        raise ActionError("operator and point belong to different schemas")
    if not is_eventually_identity(f):
        raise ActionError("direct images need an eventually-identity operator")
    w = hull(p.window, f.window)
    q = enlarge_window(p, w)
    m = absorb(f, w).matrix
    return FlagPoint(q.schema, w, q.cuts, tuple(sub.image(m) for sub in q.chain), q.offsets)


def in_stabilizer(f: StructuredOperator, p: FlagPoint) -> bool:
    return same_flag(act(f, p), p)


def duality_map(p: FlagPoint) -> FlagPoint:
    """The chain of annihilators, carried back to ``V`` by the index reversal.

    ``e_j^*`` is identified with ``e_sigma(j)``. The annihilator of the
    member at cut ``alpha`` becomes the member at the cut ``beta`` with
    ``sigma(alpha) = succ(beta)``; offsets change sign.
    """
    s = p.schema
    if not is_symmetric(s):
        raise SchemaError("duality needs a symmetric schema")
    sigma = reversal(s)
    ix = s.index
    if p.window is None:
        return p
    lo, hi = p.window
    a, b = sigma(lo), sigma(hi)
    new_window = (min(a, b), max(a, b))
    idx = p.indices
    new_idx = ix.window_indices(new_window)
    if sorted(new_idx) != sorted(sigma(i) for i in idx):
        raise PointError("window is not carried onto a window by the reversal")  # pragma: no cover
    pos = {i: k for k, i in enumerate(new_idx)}
    placed = [pos[sigma(i)] for i in idx]
    n = len(idx)
    # sigma^-1(succ(beta)) == sigma(succ(beta)) for these involutive reversals
    cuts = s.cuts_between(new_window)
    chain, offsets = [], []
    for beta in cuts:
        sub, off = p.component(sigma(ix.succ(beta)))
        chain.append(annihilator(sub).embed(placed, n))
        offsets.append(-off)
    return FlagPoint(s, new_window, tuple(cuts), tuple(chain), tuple(offsets))

