"""Certified Tverberg-type partitions of finite point sets over discrete sets.

Exact rational arithmetic throughout; every positive answer carries
certificates (convex combinations, witness halfspaces) that can be
re-checked independently, and brute-force oracles are shipped alongside
the engine for cross-validation.
"""
from .discrete_sets import (
    DiscreteSetSpec,
    HollowCertificate,
    LatticeBasis,
    PolytopeV,
    box_polytope,
    count_nonvertex,
    difference_set,
    eckhoff_lower_bound,
    enumerate_in_polytope,
    helly_upper_bound,
    hollow_search,
    is_k_hoffman,
    is_k_hollow,
    lattice_set,
    mixed_set,
    set_contains,
    tverberg_upper_bound,
)
from .errors import (
    CapExceededError,
    PartitionConstructionError,
    TheoremViolationError,
)
from .exact_geometry import (
    AffineHull,
    AnchoredReduction,
    ConvexCombination,
    DepthResult,
    Halfspace,
    MembershipCertificate,
    affine_hull,
    affine_rank,
    affinely_independent,
    anchored_reduce,
    caratheodory_reduce,
    centroid,
    depth,
    extreme_points,
    membership,
)
from .harness import (
    ExperimentConfig,
    ExperimentReport,
    SplitMix64,
    TrialRecord,
    generate_instance,
    mix64,
    run_experiment,
    run_trial,
    trial_rng,
)
from .oracles import (
    BruteTverbergReport,
    HellyReport,
    OracleCaps,
    VerificationReport,
    brute_depth,
    brute_helly_check,
    brute_hoffman_max,
    brute_tverberg,
    hoffman_family,
    verify_partition,
)
from .tverberg import (
    DeepWitness,
    Instance,
    PartitionResult,
    TverbergOutcome,
    WitnessSearch,
    colorful_cover,
    extract_part,
    find_deep_witnesses,
    radon_partition,
    tverberg_partition,
)

__version__ = "0.1.0"

__all__ = [
    "AffineHull",
    "AnchoredReduction",
    "BruteTverbergReport",
    "CapExceededError",
    "ConvexCombination",
    "DeepWitness",
    "DepthResult",
    "DiscreteSetSpec",
    "ExperimentConfig",
    "ExperimentReport",
    "Halfspace",
    "HellyReport",
    "HollowCertificate",
    "Instance",
    "LatticeBasis",
    "MembershipCertificate",
    "OracleCaps",
    "PartitionConstructionError",
    "PartitionResult",
    "PolytopeV",
    "SplitMix64",
    "TheoremViolationError",
    "TrialRecord",
    "TverbergOutcome",
    "VerificationReport",
    "WitnessSearch",
    "affine_hull",
    "affine_rank",
    "affinely_independent",
    "anchored_reduce",
    "box_polytope",
    "brute_depth",
    "brute_helly_check",
    "brute_hoffman_max",
    "brute_tverberg",
    "caratheodory_reduce",
    "centroid",
    "colorful_cover",
    "count_nonvertex",
    "depth",
    "difference_set",
    "eckhoff_lower_bound",
    "enumerate_in_polytope",
    "extract_part",
    "extreme_points",
    "find_deep_witnesses",
    "generate_instance",
    "helly_upper_bound",
    "hoffman_family",
    "hollow_search",
    "is_k_hoffman",
    "is_k_hollow",
    "lattice_set",
    "membership",
    "mix64",
    "mixed_set",
    "radon_partition",
    "run_experiment",
    "run_trial",
    "set_contains",
    "trial_rng",
    "tverberg_partition",
    "tverberg_upper_bound",
    "verify_partition",
    "__version__",
]
