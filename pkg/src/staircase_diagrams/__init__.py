"""Exact enumeration and generating functions for staircase diagrams."""

from .graphs import (
    Graph,
    connected_subsets,
    is_connected_subset,
    make_path,
    make_star,
    make_type_d,
    make_type_e,
)
from .diagram import (
    AxiomViolation,
    Diagram,
    canonical_key,
    diagram_from_covers,
    empty_diagram,
    naive_validate,
    predicates,
    restrict,
    support,
    validate,
)
from .oracle import (
    DyckPath,
    EnumFilter,
    LimitExceeded,
    count_diagrams,
    diagram_to_dyck,
    dyck_paths,
    dyck_to_diagram,
    enumerate_towers,
    iter_diagrams,
)

__all__ = [
    "AxiomViolation", "Diagram", "DyckPath", "EnumFilter", "Graph",
    "LimitExceeded", "canonical_key", "connected_subsets", "count_diagrams",
    "diagram_from_covers", "diagram_to_dyck", "dyck_paths", "dyck_to_diagram",
    "empty_diagram", "enumerate_towers", "is_connected_subset",
    "iter_diagrams", "make_path", "make_star", "make_type_d", "make_type_e",
    "naive_validate", "predicates", "restrict", "support", "validate",
]
