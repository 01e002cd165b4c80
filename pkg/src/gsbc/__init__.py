"""Generalized sliding block codes over countable alphabets.

Index monoids N and Z (written additively, identity 0), finitely described
configurations, shift spaces, cylinder partitions, classical and
generalized codes, and desk-scale checks that a map is continuous and
shift commuting.
"""
from .chl import (
    Bounded,
    CommutationReport,
    Determined,
    Exceeds,
    LearnedPartition,
    Split,
    Unresolved,
    check_commutation,
    check_determination,
    classify_radius,
    learn_partition,
)
from .codes import (
    BlackBoxMap,
    ClassicalCode,
    GeneralizedCode,
    as_black_box,
    broken_map,
    builtin_example1,
    builtin_example2,
    classical_radius,
    classical_to_generalized,
    compose,
    eval_classical,
    eval_generalized,
    eval_window,
    evaluate,
    example1_partition_slice,
    example1_window,
    example2_prober,
    identity_code,
    variable_radius,
)
from .config import (
    BiPeriodic,
    Config,
    EventuallyPeriodic,
    GeneratorBacked,
    Pattern,
    get,
    parse_config,
    parse_pattern,
    patterns_translation_equivalent,
    restrict,
    shift,
)
from .cylinder import (
    Cylinder,
    ExplicitPartition,
    PartitionMatcher,
    ProceduralPartition,
    compile_partition,
    cylinder_contains,
    cylinders_jointly_satisfiable,
    extract_cylinders,
    match,
    validate_partition,
)
from .errors import (
    BudgetExceeded,
    GSBCError,
    NoMatch,
    NotDecidable,
    RuleIncomplete,
    ScaleError,
    Undecided,
)
from .kernels import BACKEND
from .monoid import Monoid
from .shift_space import (
    ForbiddenPatterns,
    FullShift,
    ShiftSpace,
    SubalphabetUnion,
    config_in_space,
    enumerate_words,
    pattern_in_language,
)

__version__ = "0.1.0"
