"""Sequential-closure analysis and decomposition of finite state machines."""

from .machine_model import (
    IterationProfile,
    Machine,
    StateTransform,
    constant_transform,
    identity_transform,
)
from .closure_engine import (
    DEFAULT_CLOSURE_LIMIT,
    RankSpectrum,
    SemigroupClosure,
    generate_closure,
    ideal_at_most,
    is_constant_rank,
    is_simple,
    principal_ideal,
    rank_spectrum,
)
from .algebra_analyzer import (
    EquivalenceKind,
    IdempotentGrid,
    InvariantOrder,
    GroupSummary,
    MaxSubgroup,
    build_idempotent_grid,
    check_range_ordering,
    equivalence,
    idempotents,
    is_anti_commutative,
    is_rectangular_band,
    max_subgroup,
    order_invariants,
    summarize_group,
    periodicity_report,
    subgroup_isomorphism,
)
from .decomposer import (
    ComponentSet,
    MachineReport,
    RecompositionReport,
    ReesDecomposition,
    classify_basic,
    decompose,
    decompose_machine,
    recompose_verify,
    synthesize_components,
)
from .machine_io import parse_machine, parse_machine_json, serialize_machine
from .errors import (
    ClosureBudgetExceeded,
    InvariantViolation,
    MachineParseError,
    NotSimpleError,
)

__version__ = "0.1.0"
