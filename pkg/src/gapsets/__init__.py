"""Gap sets of numerical semigroups: enumeration, invariants, maps, tallies."""

from .core import (
    CanonicalPartition,
    Gapset,
    GapsetRejection,
    InvariantRecord,
    as_candidate,
    canonical_partition,
    gapset,
    hyperelliptic_gapset,
    invariants,
    is_m_extension,
    is_m_set,
    kappa_and_alpha,
    ordinary_gapset,
    validate_gapset,
)
from .enumeration import (
    EnumerationRun,
    FilterSpec,
    brute_force_gapsets,
    cache_load,
    cache_store,
    enumerate_gapsets,
    filter_pure_sparse,
    run_enumeration,
)
from .maps import (
    BijectionReport,
    WidenImage,
    classify_widest_pair,
    narrow_max_gap,
    shift_blocks,
    verify_bijection,
    widen_max_gap,
)
from .tally import (
    CountGrid,
    DiagonalSequence,
    StabilizationReport,
    build_count_grid,
    diagonal_sequence,
    stabilization_check,
)

__all__ = [
    "BijectionReport",
    "CanonicalPartition",
    "CountGrid",
    "DiagonalSequence",
    "EnumerationRun",
    "FilterSpec",
    "Gapset",
    "GapsetRejection",
    "InvariantRecord",
    "StabilizationReport",
    "WidenImage",
    "as_candidate",
    "brute_force_gapsets",
    "build_count_grid",
    "cache_load",
    "cache_store",
    "canonical_partition",
    "classify_widest_pair",
    "diagonal_sequence",
    "enumerate_gapsets",
    "filter_pure_sparse",
    "gapset",
    "hyperelliptic_gapset",
    "invariants",
    "is_m_extension",
    "is_m_set",
    "kappa_and_alpha",
    "narrow_max_gap",
    "ordinary_gapset",
    "run_enumeration",
    "shift_blocks",
    "stabilization_check",
    "validate_gapset",
    "verify_bijection",
    "widen_max_gap",
]
