"""Property suites run by ``mackeyflags verify`` and by the acceptance tests.

Every trial draws from its own generator seeded with ``"{seed}:{suite}:{trial}"``,
so reports do not depend on execution order. A suite returns one
:class:`PropertyResult` per property; a failing property keeps the first
counterexample as a document.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .action import act, act_direct, duality_map, in_stabilizer
from .documents import dump_operator, dump_point
from .isotropic import (
    FormKind,
    FormSchema,
    is_isotropic_flag,
    preserves_form,
    random_form_preserving,
    reflection_condition,
)
from .linalg import DenseMatrix, rank
from .operators import (
    StructuredOperator,
    compose,
    degree_at_cut,
    degree_report,
    identity_op,
    invert_op,
    is_eligible,
    is_w_aligned,
    operators_equal,
    random_block_upper,
    random_invertible,
    shift_op,
    splitting_at_cut,
    bar_op,
)
from .points import (
    is_commensurable,
    random_point,
    reference_point,
    relative_position,
    same_flag,
    shifted_reference_point,
)
from .scenarios import SCENARIOS, library_predicate
from .schemas import EveryPosition, FlagSchema, IndexKind, IndexSchema, Window, hull, is_symmetric

__all__ = ["PropertyResult", "SUITES", "run_suite"]


@dataclass
class PropertyResult:
    name: str
    trials: int = 0
    failures: int = 0
    counterexample: dict | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, example: Callable[[], dict] | None = None) -> None:
        self.trials += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None and example is not None:
                self.counterexample = example()

    def to_doc(self) -> dict:
        out = {"property": self.name, "passed": self.passed, "trials": self.trials,
               "failures": self.failures}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.notes:
            out["notes"] = self.notes
        return out


def _rng(seed: int, suite: str, trial: int) -> random.Random:
    return random.Random(f"{seed}:{suite}:{trial}")


def _ops_doc(**ops) -> Callable[[], dict]:
    def build():
        out = {}
        for k, v in ops.items():
            if isinstance(v, StructuredOperator):
                out[k] = dump_operator(v, with_schema=True)
            elif hasattr(v, "chain"):
                out[k] = dump_point(v, with_schema=True)
            else:
                out[k] = v
        return out
    return build


SATO = SCENARIOS["sato"].schema
EX = {name: sc.schema for name, sc in SCENARIOS.items()}


def _random_window(rng: random.Random, schema: FlagSchema, max_size: int, spread: int = 4) -> Window:
    """A window with between 1 and ``max_size`` indices."""
    ix = schema.index
    while True:
        size = rng.randint(1, max_size)
        if ix.kind is IndexKind.POSITIVE_INTS:
            lo = rng.randint(1, 1 + spread)
        else:
            lo = rng.randint(-spread - size // 2, spread - size // 2)
        w = ix.normalize_window((lo, lo + size - 1))
        if w is not None and len(ix.window_indices(w)) <= max_size:
            return w


def _random_op(rng: random.Random, schema: FlagSchema, max_size: int = 6, max_tail: int = 0,
               entries: int = 2) -> StructuredOperator:
    w = _random_window(rng, schema, max_size)
    n = len(schema.index.window_indices(w))
    d = rng.randint(-max_tail, max_tail) if max_tail and schema.index.translatable else 0
    return StructuredOperator(schema, w, d, random_invertible(rng, n, entries))


def _random_eligible(rng: random.Random, schema: FlagSchema, max_size: int = 5) -> StructuredOperator:
    if rng.random() < 0.3:
        return random_block_upper(rng, schema, _random_window(rng, schema, max_size))
    return _random_op(rng, schema, max_size)


# -- suites -------------------------------------------------------------------


def suite_degree_additivity(seed: int, trials: int) -> list[PropertyResult]:
    """deg(f o g) = deg f + deg g and deg(f^-1) = -deg f at every evaluated cut."""
    add = PropertyResult("degree additivity")
    inv = PropertyResult("degree of inverse")
    for t in range(trials):
        rng = _rng(seed, "degree-additivity", t)
        schema = SATO if t % 2 == 0 else EX["ex2_3"]
        tail = 3 if schema.finite else 0
        if not schema.finite and rng.random() < 0.2:
            tail = 2  # translation tails on every cut; degrees are still defined cut by cut
        f = _random_op(rng, schema, 12, tail, entries=1)
        g = _random_op(rng, schema, 12, tail, entries=1)
        fg = compose(f, g)
        if schema.finite:
            cuts = list(schema.cuts.positions)
        else:
            w = hull(f.window, g.window)
            cuts = schema.evaluated_cuts(w)
            cuts = rng.sample(cuts, min(4, len(cuts)))
        for a in cuts:
            df, dg = degree_at_cut(f, a), degree_at_cut(g, a)
            add.record(degree_at_cut(fg, a) == df + dg, _ops_doc(f=f, g=g, cut=a))
            inv.record(degree_at_cut(invert_op(f), a) == -df, _ops_doc(f=f, cut=a))
    return [add, inv]


def suite_shift_degree(seed: int, trials: int) -> list[PropertyResult]:
    deg = PropertyResult("degree of shift_op(k) at the Sato cut is k")
    comp = PropertyResult("shift_op(k) moves the reference point to component k")
    ref = reference_point(SATO, (-1, 1))
    for k in range(-5, 6):
        sh = shift_op(SATO, k)
        deg.record(degree_at_cut(sh, -1) == k, _ops_doc(k=k))
        image = act(sh, ref)
        comp.record(relative_position(image) == {-1: k}
                    and same_flag(image, shifted_reference_point(SATO, k)), _ops_doc(k=k))
    return [deg, comp]


def suite_eligibility_normality(seed: int, trials: int) -> list[PropertyResult]:
    norm = PropertyResult("g f g^-1 eligible for eligible f")
    prod = PropertyResult("products of eligible operators are eligible")
    inv = PropertyResult("inverses of eligible operators are eligible")
    names = ["sato", "ex2_3", "ex2_4", "ex2_5"]
    for t in range(trials):
        rng = _rng(seed, "eligibility-normality", t)
        name = names[t % len(names)]
        schema = EX[name]
        f = _random_eligible(rng, schema)
        g = _random_op(rng, schema, 6, 3 if schema.finite and schema.index.translatable else 0)
        h = _random_eligible(rng, schema)
        conj = compose(compose(g, f), invert_op(g))
        norm.record(is_eligible(f) and is_eligible(conj), _ops_doc(f=f, g=g))
        prod.record(is_eligible(compose(f, h)), _ops_doc(f=f, h=h))
        inv.record(is_eligible(invert_op(f)), _ops_doc(f=f))
    return [norm, prod, inv]


def suite_action_well_defined(seed: int, trials: int, pool: int = 20) -> list[PropertyResult]:
    """Eligible operators keep points in their component; act is a group action."""
    comm = PropertyResult("eligible f: act(f, p) commensurable with p")
    law = PropertyResult("act(f o g, p) = act(f, act(g, p))")
    comp = PropertyResult("relative position shifts by the degree (single cut)")
    for name in ("ex2_1", "ex2_3", "ex2_4", "ex2_5"):
        schema = EX[name]
        prng = _rng(seed, f"action-well-defined:{name}:points", 0)
        points = [random_point(schema, prng, _random_window(prng, schema, 5)) for _ in range(pool)]
        for t in range(trials):
            rng = _rng(seed, f"action-well-defined:{name}", t)
            p = points[rng.randrange(pool)]
            f = _random_eligible(rng, schema, 4)
            g = _random_eligible(rng, schema, 4)
            fp = act(f, p)
            comm.record(is_commensurable(fp, p), _ops_doc(f=f, p=p))
            law.record(same_flag(act(compose(f, g), p), act(f, act(g, p))), _ops_doc(f=f, g=g, p=p))
        if name == "ex2_1":
            for t in range(max(1, trials // 5)):
                rng = _rng(seed, "action-well-defined:shifted", t)
                p = points[rng.randrange(pool)]
                f = _random_op(rng, schema, 4, 3)
                g = _random_op(rng, schema, 4, 3)
                fp = act(f, p)
                comp.record(relative_position(fp) == {-1: degree_at_cut(f, -1)}, _ops_doc(f=f, p=p))
                law.record(same_flag(act(compose(f, g), p), act(f, act(g, p))), _ops_doc(f=f, g=g, p=p))
    return [comm, law, comp]


def suite_oracle_equivalence(seed: int, trials: int) -> list[PropertyResult]:
    eq = PropertyResult("act = act_direct for eventually-identity operators")
    names = ["ex2_1", "ex2_2", "ex2_3", "ex2_4", "ex2_5"]
    for t in range(trials):
        rng = _rng(seed, "oracle-equivalence", t)
        schema = EX[names[t % len(names)]]
        f = _random_op(rng, schema, 5)
        p = random_point(schema, rng, _random_window(rng, schema, 5))
        eq.record(same_flag(act(f, p), act_direct(f, p)), _ops_doc(f=f, p=p))
    return [eq]


def suite_example_scenarios(seed: int, trials: int) -> list[PropertyResult]:
    out = []
    for name in ("ex2_1", "ex2_2", "ex2_3", "ex2_4", "ex2_5"):
        sc = SCENARIOS[name]
        res = PropertyResult(f"{name}: library predicate agrees with the matrix description")
        for t in range(trials):
            rng = _rng(seed, f"example-2-scenarios:{name}", t)
            f = sc.random_operator(rng)
            res.record(sc.golden(f) == library_predicate(f), _ops_doc(f=f))
        out.append(res)
    return out


EXPECTED_SYMMETRY = {"ex2_1": True, "ex2_2": False, "ex2_3": True, "ex2_4": True, "ex2_5": True}


def suite_symmetry_detection(seed: int, trials: int) -> list[PropertyResult]:
    res = PropertyResult("is_symmetric on the five examples")
    for name, want in EXPECTED_SYMMETRY.items():
        got = is_symmetric(EX[name])
        res.record(got == want, _ops_doc(scenario=name, expected=want, got=got))
    dual = PropertyResult("duality_map is an involution on symmetric schemas")
    for t in range(trials):
        rng = _rng(seed, "symmetry-detection", t)
        name = ("ex2_1", "ex2_3", "ex2_4", "ex2_5")[t % 4]
        schema = EX[name]
        p = random_point(schema, rng, _random_window(rng, schema, 5))
        dual.record(same_flag(duality_map(duality_map(p)), p), _ops_doc(p=p))
    return [res, dual]


_FORMS = [
    (FormSchema(FormKind.ORTHOGONAL_SATO), SATO, 5),
    (FormSchema(FormKind.SYMPLECTIC_SATO), SATO, 5),
    (FormSchema(FormKind.ORTHOGONAL_ALL_INTS),
     FlagSchema(IndexSchema(IndexKind.ALL_INTS, paired=True), EveryPosition()), 4),
]


def _perturb(rng: random.Random, f: StructuredOperator) -> StructuredOperator:
    m = [list(r) for r in f.matrix.rows]
    n = len(m)
    while True:
        i, j = rng.randrange(n), rng.randrange(n)
        old = m[i][j]
        m[i][j] = old + rng.choice([-1, 1])
        cand = DenseMatrix.from_rows(m, n)
        if rank(cand) == n:
            return StructuredOperator(f.schema, f.window, 0, cand)
        m[i][j] = old


def suite_isotropic_equivalence(seed: int, trials: int) -> list[PropertyResult]:
    eq = PropertyResult("preserves_form <=> reflection_condition")
    elig = PropertyResult("form-preserving W-aligned operators are eligible")
    iso = PropertyResult("form-preserving operators keep isotropic flags isotropic")
    counts = []
    for form, schema, m in _FORMS:
        kept = 0
        for t in range(trials):
            rng = _rng(seed, f"isotropic-equivalence:{form.kind.value}", t)
            size = rng.randint(1, m)
            f = random_form_preserving(form, schema, rng, (-size, size), factors=rng.randint(1, 4))
            r = rng.random()
            if r < 0.3:
                f = _perturb(rng, f)
            elif r < 0.4:
                f = _random_op(rng, schema, 2 * size)
            a, b = preserves_form(f, form), reflection_condition(f, form)
            kept += a
            eq.record(a == b, _ops_doc(f=f, form=form.kind.value))
            if a and is_w_aligned(f):
                elig.record(is_eligible(f), _ops_doc(f=f, form=form.kind.value))
            if a and t % 5 == 0:
                p = reference_point(schema, (-2, 2))
                iso.record(is_isotropic_flag(act_direct(f, p), form), _ops_doc(f=f, form=form.kind.value))
        counts.append(f"{form.kind.value}: {kept} of {trials} trials form-preserving")
    eq.notes = counts
    return [eq, elig, iso]


def suite_rank_transpose(seed: int, trials: int) -> list[PropertyResult]:
    tr = PropertyResult("rank C = rank C^T")
    bar = PropertyResult("rank C of f = rank of the transposed block of bar_op(f)")
    names = ["sato", "ex2_3", "ex2_4", "ex2_5"]
    for t in range(trials):
        rng = _rng(seed, "rank-transpose", t)
        schema = EX[names[t % len(names)]]
        f = _random_op(rng, schema, 8, 3 if schema.finite and schema.index.translatable else 0)
        cuts = schema.evaluated_cuts(f.window) if not schema.finite else list(schema.cuts.positions)
        if not cuts:
            cuts = schema.evaluated_cuts(hull(f.window, (1, 3)))
        a = rng.choice(cuts)
        c = splitting_at_cut(f, a).C
        tr.record(rank(c) == rank(c.transpose()), _ops_doc(f=f, cut=a))
        # entries of bar(f) are those of f transposed, so C of f sits in the B block of bar(f)
        b = splitting_at_cut(bar_op(f), a).B
        bar.record(rank(c) == rank(b), _ops_doc(f=f, cut=a))
    return [tr, bar]


def suite_stabilizer_degree(seed: int, trials: int) -> list[PropertyResult]:
    deg = PropertyResult("block-upper-triangular operators have degree 0 at every cut")
    stab = PropertyResult("block-upper-triangular operators stabilize the reference point")
    names = ["ex2_1", "ex2_2", "ex2_3", "ex2_4", "ex2_5"]
    for t in range(trials):
        rng = _rng(seed, "stabilizer-degree", t)
        schema = EX[names[t % len(names)]]
        w = _random_window(rng, schema, 6)
        f = random_block_upper(rng, schema, w)
        rep = degree_report(f)
        deg.record(all(v == 0 for v in rep.per_cut.values()) and rep.uniform_tail_degree == 0,
                   _ops_doc(f=f))
        stab.record(in_stabilizer(f, reference_point(schema, w)), _ops_doc(f=f))
    return [deg, stab]


def suite_operator_laws(seed: int, trials: int) -> list[PropertyResult]:
    inv = PropertyResult("f o f^-1 = identity")
    assoc = PropertyResult("composition is associative")
    names = ["sato", "ex2_2", "ex2_3", "ex2_4", "ex2_5"]
    for t in range(trials):
        rng = _rng(seed, "operator-laws", t)
        schema = EX[names[t % len(names)]]
        tail = 3 if schema.finite and schema.index.translatable else 0
        f, g, h = (_random_op(rng, schema, 5, tail) for _ in range(3))
        inv.record(operators_equal(compose(f, invert_op(f)), identity_op(schema)), _ops_doc(f=f))
        assoc.record(operators_equal(compose(compose(f, g), h), compose(f, compose(g, h))),
                     _ops_doc(f=f, g=g, h=h))
    return [inv, assoc]


SUITES: dict[str, tuple[Callable[[int, int], list[PropertyResult]], int]] = {
    "degree-additivity": (suite_degree_additivity, 1000),
    "shift-degree": (suite_shift_degree, 11),
    "eligibility-normality": (suite_eligibility_normality, 500),
    "action-well-defined": (suite_action_well_defined, 500),
    "oracle-equivalence": (suite_oracle_equivalence, 500),
    "example-2-scenarios": (suite_example_scenarios, 200),
    "symmetry-detection": (suite_symmetry_detection, 100),
    "isotropic-equivalence": (suite_isotropic_equivalence, 500),
    "rank-transpose": (suite_rank_transpose, 500),
    "stabilizer-degree": (suite_stabilizer_degree, 500),
    "operator-laws": (suite_operator_laws, 200),
}


def run_suite(name: str, seed: int = 0, trials: int | None = None) -> dict:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    fn, default = SUITES[name]
    results = fn(seed, default if trials is None else trials)
    return {
        "suite": name,
        "seed": seed,
        "trials": default if trials is None else trials,
        "passed": all(r.passed for r in results),
        "properties": [r.to_doc() for r in results],
    }
