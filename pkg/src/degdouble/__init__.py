"""Exact enumeration, bounds and clique search for degree-doubling graph families."""

from .graph_core import (
    DEFAULT_PREDICATE,
    AverageDegreeAtLeast,
    DegreeProfile,
    LabeledGraph,
    MaxDegreeAtLeast,
    canonical_key,
    components,
    degree_profile,
    doubling_compatible,
    intersection,
    isolated_vertices,
    make_graph,
    union,
)
from .enumeration import (
    PartitionShape,
    hamilton_cycles,
    hamilton_paths,
    labeled_copies,
    minimal_coverings,
    near_matchings,
    partitions,
    pattern_P,
    perfect_matchings,
    triangle_factors,
    two_regular_graphs,
)
from .families import (
    Family,
    SolveReport,
    compatibility_graph,
    cover_upper_bound,
    greedy_family,
    incompatible_count,
    max_family_exact,
    path_families,
    triangle_family,
    verify_family,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PREDICATE",
    "AverageDegreeAtLeast",
    "DegreeProfile",
    "LabeledGraph",
    "MaxDegreeAtLeast",
    "canonical_key",
    "components",
    "degree_profile",
    "doubling_compatible",
    "intersection",
    "isolated_vertices",
    "make_graph",
    "union",
    "PartitionShape",
    "hamilton_cycles",
    "hamilton_paths",
    "labeled_copies",
    "minimal_coverings",
    "near_matchings",
    "partitions",
    "pattern_P",
    "perfect_matchings",
    "triangle_factors",
    "two_regular_graphs",
    "Family",
    "SolveReport",
    "compatibility_graph",
    "cover_upper_bound",
    "greedy_family",
    "incompatible_count",
    "max_family_exact",
    "path_families",
    "triangle_family",
    "verify_family",
]
