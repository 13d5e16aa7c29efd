"""Exact Lin-Lu-Yau curvature and the classification of positively curved
outerplanar graphs."""
from .curvature import (
    CurvatureReport,
    coupling_lower_bound,
    curvature_report,
    is_positively_curved,
    kappa,
    kappa_adjacent,
    kappa_alpha,
    kappa_limit_check,
    kappa_lipschitz,
    mass_pair,
    star_coupling_bound,
    star_coupling_from_sigma,
)
from .enumeration import (
    classify_maximal_outerplanar,
    classify_positively_curved,
    enumerate_2connected_outerplanar,
    enumerate_outerplanar_min_deg2,
    find_g8,
    verify_base_case_11,
)
from .graph import Graph, bfs_distances, canonical_code, encode_graph6, parse_graph6
from .outerplanar import embed, is_outerplanar, suppress_degree2

__version__ = "0.1.0"

__all__ = [
    "CurvatureReport",
    "Graph",
    "bfs_distances",
    "canonical_code",
    "classify_maximal_outerplanar",
    "classify_positively_curved",
    "coupling_lower_bound",
    "curvature_report",
    "embed",
    "encode_graph6",
    "enumerate_2connected_outerplanar",
    "enumerate_outerplanar_min_deg2",
    "find_g8",
    "is_outerplanar",
    "is_positively_curved",
    "kappa",
    "kappa_adjacent",
    "kappa_alpha",
    "kappa_limit_check",
    "kappa_lipschitz",
    "mass_pair",
    "parse_graph6",
    "star_coupling_bound",
    "star_coupling_from_sigma",
    "suppress_degree2",
    "verify_base_case_11",
]
