"""Generalized flags and Mackey-group operators, represented finitely and exactly."""

from .action import act, act_direct, duality_map, in_stabilizer
from .isotropic import (
    FormKind,
    FormSchema,
    is_isotropic_flag,
    preserves_form,
    reflection_condition,
)
from .linalg import DenseMatrix, Subspace, annihilator, intersect, invert, rank, rref
from .operators import (
    CutSplitting,
    DegreeReport,
    StructuredOperator,
    absorb,
    apply_to_vector,
    bar_op,
    compose,
    degree_at_cut,
    degree_report,
    identity_op,
    invert_op,
    is_eligible,
    is_eventually_identity,
    is_mackey,
    is_w_aligned,
    projectively_equal,
    shift_op,
    splitting_at_cut,
    window_swap,
)
from .points import (
    FlagPoint,
    enlarge_window,
    is_commensurable,
    reference_point,
    relative_position,
    shifted_reference_point,
)
from .schemas import (
    EveryPosition,
    FiniteCuts,
    FlagSchema,
    IndexKind,
    IndexSchema,
    dual_schema,
    is_symmetric,
    shifted_schema,
    truncate_type,
    validate_schema,
)

__all__ = [
    "CutSplitting", "DegreeReport", "DenseMatrix", "EveryPosition", "FiniteCuts",
    "FlagPoint", "FlagSchema", "FormKind", "FormSchema", "IndexKind", "IndexSchema",
    "StructuredOperator", "Subspace", "absorb", "act", "act_direct", "annihilator",
    "apply_to_vector", "bar_op", "compose", "degree_at_cut", "degree_report",
    "dual_schema", "duality_map", "enlarge_window", "identity_op", "in_stabilizer",
    "intersect", "invert", "invert_op", "is_commensurable", "is_eligible",
    "is_eventually_identity", "is_isotropic_flag", "is_mackey", "is_symmetric",
    "is_w_aligned", "preserves_form", "projectively_equal", "rank",
    "reference_point", "reflection_condition", "relative_position", "rref",
    "shift_op", "shifted_reference_point", "shifted_schema", "splitting_at_cut",
    "truncate_type", "validate_schema", "window_swap",
]
