"""Command line interface.

Exit codes: 0 success, 1 predicate false, 2 malformed input, 3 invariant
violation or failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from .action import ActionError, act, act_direct, duality_map, in_stabilizer
from .documents import (
    DocumentError,
    dump_operator,
    dump_point,
    dump_schema,
    dumps,
    parse_operator,
    parse_point,
    parse_schema,
)
from .isotropic import FormKind, FormSchema, preserves_form
from .operators import (
    OperatorError,
    degree_report,
    is_eligible,
    is_eventually_identity,
    is_mackey,
    is_w_aligned,
)
from .points import PointError, reference_point, relative_position
from .scenarios import SCENARIOS
from .schemas import IndexKind, SchemaError, is_symmetric
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3

GROUPS = ["mackey", "eventually-identity", "w-aligned", "eligible", "stabilizer",
          "orthogonal", "symplectic"]


class UsageError(ValueError):
    pass


def _load(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _seed(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("seed must be non-negative")
    return v


def _window_arg(text: str | None):
    if text is None:
        return None
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"--window expects lo:hi, got {text!r}") from None
    if lo > hi:
        raise UsageError(f"--window {text} is empty")
    return (lo, hi)


def _schema(args):
    if args.scenario and args.schema:
        raise UsageError("give either --scenario or --schema, not both")
    if args.scenario:
        if args.scenario not in SCENARIOS:
            raise UsageError(f"unknown scenario {args.scenario!r}; known: {', '.join(SCENARIOS)}")
        return SCENARIOS[args.scenario].schema
    if args.schema:
        return parse_schema(_load(args.schema))
    return None


def _default_window(args, schema):
    w = _window_arg(args.window)
    if w is not None:
        return w
    if args.scenario:
        return SCENARIOS[args.scenario].window
    return None


def _operator(args, schema):
    if not args.op:
        raise UsageError("--op is required")
    return parse_operator(_load(args.op), schema)


def _point(args, schema):
    if not args.point:
        raise UsageError("--point is required")
    if args.point == "reference":
        if schema is None:
            raise UsageError("--point reference needs --scenario or --schema")
        w = _default_window(args, schema)
        if w is None:
            raise UsageError("--point reference needs --window when no scenario is given")
        return reference_point(schema, w)
    return parse_point(_load(args.point), schema)


def _point_report(p) -> dict:
    return {"point": dump_point(p), "relative_position": {str(k): v for k, v in relative_position(p).items()}}


# -- commands -----------------------------------------------------------------


def cmd_validate(args) -> tuple[dict, int]:
    schema = _schema(args)
    out: dict = {"valid": True}
    if schema is not None:
        out["schema"] = dump_schema(schema)
    if args.op:
        out["operator"] = dump_operator(_operator(args, schema))
    if args.point:
        out["point"] = dump_point(_point(args, schema))
    if len(out) == 1:
        raise UsageError("nothing to validate: give --scenario/--schema, --op or --point")
    return out, EXIT_OK


def cmd_member(args) -> tuple[dict, int]:
    schema = _schema(args)
    f = _operator(args, schema)
    g = args.group
    if g == "mackey":
        ok = is_mackey(f)
    elif g == "eventually-identity":
        ok = is_eventually_identity(f)
    elif g == "w-aligned":
        ok = is_w_aligned(f)
    elif g == "eligible":
        ok = is_eligible(f)
    elif g == "stabilizer":
        if not args.point:
            args.point = "reference"
        if args.point == "reference" and args.window is None and not args.scenario:
            args.window = ":".join(str(x) for x in (f.window or (1, 1)))
        ok = in_stabilizer(f, _point(args, f.schema))
    else:
        kind = f.schema.index.kind
        if g == "symplectic":
            form = FormSchema(FormKind.SYMPLECTIC_SATO)
        elif kind is IndexKind.ALL_INTS:
            form = FormSchema(FormKind.ORTHOGONAL_ALL_INTS)
        else:
            form = FormSchema(FormKind.ORTHOGONAL_SATO)
        ok = f.tail_shift == 0 and preserves_form(f, form)
    return {"group": g, "member": ok}, EXIT_OK if ok else EXIT_FALSE


def cmd_degree(args) -> tuple[dict, int]:
    schema = _schema(args)
    f = _operator(args, schema)
    rep = degree_report(f, _window_arg(args.window))
    return {"per_cut": {str(k): v for k, v in rep.per_cut.items()},
            "uniform_tail_degree": rep.uniform_tail_degree}, EXIT_OK


def cmd_act(args) -> tuple[dict, int]:
    schema = _schema(args)
    f = _operator(args, schema)
    p = _point(args, f.schema)
    q = act_direct(f, p) if args.direct else act(f, p)
    return _point_report(q), EXIT_OK


def cmd_dual(args) -> tuple[dict, int]:
    schema = _schema(args)
    p = _point(args, schema)
    return _point_report(duality_map(p)), EXIT_OK


def cmd_symmetric(args) -> tuple[dict, int]:
    schema = _schema(args)
    if schema is None:
        raise UsageError("--scenario or --schema is required")
    ok = is_symmetric(schema)
    return {"symmetric": ok}, EXIT_OK if ok else EXIT_FALSE


def cmd_verify(args) -> tuple[dict, int]:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; known: all, {', '.join(SUITES)}")
    reports = [run_suite(n, args.seed, args.trials) for n in names]
    ok = all(r["passed"] for r in reports)
    doc = reports[0] if len(reports) == 1 else {"passed": ok, "suites": reports}
    return doc, EXIT_OK if ok else EXIT_INVARIANT


COMMANDS = {
    "validate": cmd_validate,
    "member": cmd_member,
    "degree": cmd_degree,
    "act": cmd_act,
    "dual": cmd_dual,
    "symmetric": cmd_symmetric,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("inputs")
    src.add_argument("--scenario", choices=sorted(SCENARIOS), help="built-in scenario")
    src.add_argument("--schema", help="schema document (JSON)")
    src.add_argument("--op", help="operator document (JSON)")
    src.add_argument("--point", help="point document (JSON) or 'reference'")
    src.add_argument("--window", help="window lo:hi for reference points and degree reports")
    src.add_argument("--out", help="write the report here instead of stdout")

    ap = argparse.ArgumentParser(prog="mackeyflags", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="parse and normalize documents")
    m = sub.add_parser("member", parents=[common], help="group membership of an operator")
    m.add_argument("--group", required=True, choices=GROUPS)
    sub.add_parser("degree", parents=[common], help="degree of an operator at each cut")
    a = sub.add_parser("act", parents=[common], help="act on a flag point")
    a.add_argument("--direct", action="store_true", help="push the chain forward directly")
    sub.add_parser("dual", parents=[common], help="duality involution on a flag point")
    sub.add_parser("symmetric", parents=[common], help="symmetry of a schema")
    v = sub.add_parser("verify", parents=[common], help="run a property suite")
    v.add_argument("suite", help=f"one of: all, {', '.join(SUITES)}")
    v.add_argument("--seed", type=_seed, default=0)
    v.add_argument("--trials", type=int, default=None)
    return ap


def _join_window(argv: list[str]) -> list[str]:
    """Let ``--window -2:2`` through; argparse would read ``-2:2`` as an option."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--window" and i + 1 < len(argv):
            out.append(f"--window={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(_join_window(sys.argv[1:] if argv is None else list(argv)))
    try:
        doc, code = COMMANDS[args.command](args)
    except (UsageError, DocumentError, SchemaError, PointError, OperatorError, ActionError) as exc:
        print(f"mackeyflags: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (AssertionError, ArithmeticError) as exc:
        print(f"mackeyflags: invariant violated: {exc!r}", file=sys.stderr)
        return EXIT_INVARIANT
    text = dumps(doc)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
