"""Dissociation-set invariants, critical structure, and extremal verification on forests."""

from .forest import (
    CanonicalCode,
    Forest,
    RootedView,
    VertexSet,
    canonical_code,
    centroids,
    normalize_indices,
    parse_edge_list,
    root_at,
    serialize_edge_list,
)
from .dissociation import (
    DissociationResult,
    alpha3_count_dp,
    alpha3_forced,
    brute_force_mds,
    enumerate_mds,
    is_dissociation_set,
)
from .errors import EnumerationCapExceeded, GuardExceeded, ParseError, TheoremViolation
from .extremal import (
    ExtremalReport,
    exhaustive_extremal_check,
    generate_extremal_family,
    lt8,
    max_mds_formula,
    star_construction,
)
from .kpath import (
    CoverMatchingCertificate,
    KkeReport,
    PathFamily,
    alpha_k_brute,
    greedy_cover_matching,
    longest_path_order,
    mu_k_brute,
    tau_k_brute,
    verify_certificate,
    verify_kke,
)
from .structure import (
    CheckResult,
    CriticalStructure,
    VertexClassification,
    build_canonical_mds,
    classify_vertices,
    critical_edges_alpha3,
    critical_edges_mu3,
    critical_structure,
    verify_structure_theorems,
)
from .treegen import (
    LevelSequence,
    forest_from_level_sequence,
    free_trees,
    labeled_trees_pruefer,
    level_sequences,
    pruefer_decode,
    random_labeled_tree,
)

__version__ = "0.1.0"
