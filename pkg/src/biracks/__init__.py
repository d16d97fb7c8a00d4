"""Finite biracks, their retraction congruence, and cycle set conversion."""

from .core import (
    BinaryOpTable,
    Partition,
    PermGroup,
    Permutation,
    Verdict,
    group_closure,
    partition_is_congruence,
    perm_compose,
    perm_parse_cycles,
    quotient_op,
)
from .birack import (
    AxiomReport,
    Birack,
    BirackError,
    BirackFlags,
    DiagonalMap,
    SolutionView,
    birack_from_tables,
    braid_check,
    check_axioms,
    classify,
    left_translation,
    lmlt,
    right_translation,
    rmlt,
    s_map,
    t_map,
)
from .retraction import (
    ClaimsReport,
    NotMultipermutation,
    RetractionTower,
    Singleton,
    Stabilized,
    Truncated,
    Unknown,
    ess_relation,
    generalized_retraction,
    multipermutation_level,
    proof_identity_suite,
    quotient_birack,
    retraction_tower,
    verify_congruence_bruteforce,
)
from .cycleset import (
    AlphaResult,
    LeftQuasigroup,
    alpha_relation,
    birack_from_cycleset,
    cycleset_from_birack,
    is_nondegenerate,
    is_right_cyclic,
    kon1_check,
)
from .constructions import (
    AffineData,
    BUILTIN_NAMES,
    Fixture,
    GroupData,
    affine_structures,
    builtin,
    group_conjugation_lq,
    lq_from_permutations,
    permutation_birack,
    projection_birack,
)
from .modes import (
    Groupoid,
    is_mode,
    is_quandle,
    quasi_reductive_check,
    reductivity_degree,
    rho_k,
    strong_retraction,
)
from .enumerate import (
    BoundExceeded,
    EnumFilter,
    Exhausted,
    Violation,
    enumerate_biracks,
    enumerate_cyclesets,
    enumerate_left_quasigroups,
    enumerate_modes,
    search_counterexample,
)

__version__ = "0.1.0"
