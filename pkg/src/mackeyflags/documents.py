"""JSON documents for schemas, points and operators.

Rationals are written as strings ``"p/q"`` (or ``"p"``); plain JSON integers
are accepted on input, floats are rejected. ``normalize`` maps any valid
document to the canonical form that ``dump_*`` produces, so
``dump(parse(doc)) == normalize(doc)``.

Schema::

    {"index": {"kind": "SatoSplit", "paired": true},
     "cuts": {"type": "finite", "positions": [-1]}}        # or {"type": "every"}

Operator::

    {"window": [-1, 1], "tail_shift": 0, "matrix": [["0", "1"], ["1", "0"]]}

Point::

    {"window": [-1, 1],
     "chain": [{"cut": -1, "offset": 0, "basis": [["0", "1"]]}]}

Points and operators may carry their own ``"schema"`` entry.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .linalg import DenseMatrix, Subspace
from .operators import StructuredOperator, make_operator
from .points import FlagPoint
from .schemas import (
    EveryPosition,
    FiniteCuts,
    FlagSchema,
    IndexSchema,
    SchemaError,
    validate_schema,
)

__all__ = [
    "DocumentError",
    "dump_operator",
    "dump_point",
    "dump_schema",
    "dumps",
    "normalize",
    "parse_operator",
    "parse_point",
    "parse_rational",
    "parse_schema",
]


class DocumentError(ValueError):
    """Malformed document."""


def parse_rational(x: Any) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise DocumentError(f"rationals must be strings or integers, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(c in s for c in ".eE"):
            raise DocumentError(f"not an exact rational: {x!r}")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise DocumentError(f"not a rational: {x!r}") from exc
    raise DocumentError(f"not a rational: {x!r}")


def _rat_str(x: Fraction) -> str:
    return str(x)


def _int(x: Any, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"{what} must be an integer, got {x!r}")
    return x


def _get(doc: Any, key: str, what: str):
    if not isinstance(doc, dict):
        raise DocumentError(f"{what} must be an object")
    if key not in doc:
        raise DocumentError(f"{what} is missing {key!r}")
    return doc[key]


def _window(x: Any):
    if x is None:
        return None
    if not isinstance(x, list) or len(x) != 2:
        raise DocumentError(f"window must be [lo, hi] or null, got {x!r}")
    lo, hi = _int(x[0], "window bound"), _int(x[1], "window bound")
    if lo > hi:
        raise DocumentError(f"window [{lo}, {hi}] is empty")
    return (lo, hi)


def _matrix(x: Any, ncols: int | None = None) -> DenseMatrix:
    if not isinstance(x, list) or not all(isinstance(r, list) for r in x):
        raise DocumentError("matrix must be an array of arrays")
    if ncols is None:
        ncols = len(x[0]) if x else 0
    if any(len(r) != ncols for r in x):
        raise DocumentError("ragged matrix")
    return DenseMatrix(tuple(tuple(parse_rational(v) for v in r) for r in x), ncols)


def _matrix_doc(m: DenseMatrix) -> list[list[str]]:
    return [[_rat_str(v) for v in r] for r in m.rows]


# -- schema -------------------------------------------------------------------


def parse_schema(doc: Any) -> FlagSchema:
    idx = _get(doc, "index", "schema")
    kind = _get(idx, "kind", "index")
    paired = idx.get("paired", False)
    if not isinstance(paired, bool):
        raise DocumentError("paired must be a boolean")
    try:
        ix = IndexSchema(kind, paired)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc
    cuts = _get(doc, "cuts", "schema")
    typ = _get(cuts, "type", "cuts")
    if typ == "every":
        fam = EveryPosition()
    elif typ == "finite":
        pos = _get(cuts, "positions", "cuts")
        if not isinstance(pos, list):
            raise DocumentError("positions must be an array")
        fam = FiniteCuts(tuple(_int(p, "cut position") for p in pos))
    else:
        raise DocumentError(f"unknown cut family type {typ!r}")
    s = FlagSchema(ix, fam)
    try:
        validate_schema(s)
    except SchemaError as exc:
        raise DocumentError(str(exc)) from exc
    return s


def dump_schema(s: FlagSchema) -> dict:
    cuts = {"type": "finite", "positions": list(s.cuts.positions)} if s.finite else {"type": "every"}
    return {"index": {"kind": s.index.kind.value, "paired": s.index.paired}, "cuts": cuts}


def _schema_for(doc: Any, schema: FlagSchema | None) -> FlagSchema:
    if isinstance(doc, dict) and "schema" in doc:
        own = parse_schema(doc["schema"])
        if schema is not None and own != schema:
            raise DocumentError("document schema differs from the requested schema")
        return own
    if schema is None:
        raise DocumentError("no schema given for the document")
    return schema


# -- operator -----------------------------------------------------------------


def parse_operator(doc: Any, schema: FlagSchema | None = None) -> StructuredOperator:
    s = _schema_for(doc, schema)
    w = _window(_get(doc, "window", "operator"))
    d = _int(doc.get("tail_shift", 0), "tail_shift")
    n = len(s.index.window_indices(w))
    m = _matrix(doc.get("matrix", []), n)
    if w is not None and s.index.normalize_window(w) != w:
        raise DocumentError(f"window bounds {list(w)} are not indices of {s.index.kind.value}")
    try:
        return make_operator(s, w, d, m)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def dump_operator(f: StructuredOperator, with_schema: bool = False) -> dict:
    out = {
        "window": list(f.window) if f.window else None,
        "tail_shift": f.tail_shift,
        "matrix": _matrix_doc(f.matrix),
    }
    if with_schema:
        out["schema"] = dump_schema(f.schema)
    return out


# -- point --------------------------------------------------------------------


def parse_point(doc: Any, schema: FlagSchema | None = None) -> FlagPoint:
    s = _schema_for(doc, schema)
    w = _window(_get(doc, "window", "point"))
    if w is not None and s.index.normalize_window(w) != w:
        raise DocumentError(f"window bounds {list(w)} are not indices of {s.index.kind.value}")
    n = len(s.index.window_indices(w))
    entries = _get(doc, "chain", "point")
    if not isinstance(entries, list):
        raise DocumentError("chain must be an array")
    cuts, chain, offsets = [], [], []
    for e in entries:
        cuts.append(_int(_get(e, "cut", "chain entry"), "cut"))
        offsets.append(_int(e.get("offset", 0), "offset"))
        basis = _matrix(_get(e, "basis", "chain entry"), n)
        sub = Subspace.span(basis.rows, n)
        if sub.dim != basis.nrows:
            raise DocumentError(f"basis at cut {cuts[-1]} is linearly dependent")
        chain.append(sub)
    try:
        return FlagPoint(s, w, tuple(cuts), tuple(chain), tuple(offsets))
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def dump_point(p: FlagPoint, with_schema: bool = False) -> dict:
    out = {
        "window": list(p.window) if p.window else None,
        "chain": [
            {"cut": a, "offset": off, "basis": _matrix_doc(sub.basis)}
            for a, sub, off in zip(p.cuts, p.chain, p.offsets)
        ],
    }
    if with_schema:
        out["schema"] = dump_schema(p.schema)
    return out


def normalize(doc: Any, kind: str, schema: FlagSchema | None = None) -> dict:
    """Canonical form of a ``schema``, ``operator`` or ``point`` document."""
    if kind == "schema":
        return dump_schema(parse_schema(doc))
    with_schema = isinstance(doc, dict) and "schema" in doc
    if kind == "operator":
        return dump_operator(parse_operator(doc, schema), with_schema)
    if kind == "point":
        return dump_point(parse_point(doc, schema), with_schema)
    raise ValueError(f"unknown document kind {kind!r}")


def dumps(doc: Any) -> str:
    """Deterministic text form (sorted keys, two-space indent, trailing newline)."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
