"""Minimization of skew bisubmodular functions over the domain {-alpha, 0, 1}^n.

The package provides the signed three-element lattice, value-oracle function
models, the chain-decomposition extension with subgradients, exact desk
oracles (brute force, closure LP), a projected-subgradient minimizer with
discrete rounding, and a JSON/CLI surface tying them together.
"""

from .lattice import (
    Alpha,
    ArityMismatchError,
    Label,
    Labeling,
    LEX_ORDER,
    NEG,
    POS,
    ZERO,
    all_labelings,
    format_labeling,
    join,
    label_leq,
    label_less,
    leq,
    less,
    meet0,
    numeric,
    numeric_label,
    parse_labeling,
)
from .functions import (
    CapExceededError,
    DEFAULT_ENUM_CAP,
    GenerationBudgetError,
    InstanceFormatError,
    SumFunction,
    TableFunction,
    Term,
    ValueOracle,
    ViolationWitness,
    check_alpha_bisubmodular,
    expand_to_table,
    generate_instance,
    instance_from_json,
    instance_to_json,
)
from .lovasz import (
    ChainDecomposition,
    FractionalPoint,
    chain_support_points,
    decompose,
    extension_value,
    midpoint,
    subgradient,
)
from .oracles import (
    ClosureResult,
    DEFAULT_LP_CAP,
    brute_force_min,
    convex_closure,
    midpoint_convexity_probe,
    midpoint_gap,
    random_box_point,
)
from .minimize import (
    DiminishingStep,
    FixedStep,
    MinimizeConfig,
    MinimizeReport,
    minimize,
    project_box,
)
from .simplex import LPInfeasibleError, LPUnboundedError, linear_min

__version__ = "0.1.0"

__all__ = [
    "Alpha",
    "ArityMismatchError",
    "CapExceededError",
    "ChainDecomposition",
    "ClosureResult",
    "DEFAULT_ENUM_CAP",
    "DEFAULT_LP_CAP",
    "DiminishingStep",
    "FixedStep",
    "FractionalPoint",
    "GenerationBudgetError",
    "InstanceFormatError",
    "LEX_ORDER",
    "LPInfeasibleError",
    "LPUnboundedError",
    "Label",
    "Labeling",
    "MinimizeConfig",
    "MinimizeReport",
    "NEG",
    "POS",
    "SumFunction",
    "TableFunction",
    "Term",
    "ValueOracle",
    "ViolationWitness",
    "ZERO",
    "all_labelings",
    "brute_force_min",
    "chain_support_points",
    "check_alpha_bisubmodular",
    "convex_closure",
    "decompose",
    "expand_to_table",
    "extension_value",
    "format_labeling",
    "generate_instance",
    "instance_from_json",
    "instance_to_json",
    "join",
    "label_leq",
    "label_less",
    "leq",
    "less",
    "linear_min",
    "meet0",
    "midpoint",
    "midpoint_convexity_probe",
    "midpoint_gap",
    "minimize",
    "numeric",
    "numeric_label",
    "parse_labeling",
    "project_box",
    "random_box_point",
    "subgradient",
]
