"""Exact counting of fully packed loops and their link-pattern refinements.

The package enumerates fully packed loop configurations on the square grid,
maps them to alternating-sign matrices, solves the periodic loop-model
ground-state problem on link patterns in exact integer arithmetic, counts
dihedral orbits two independent ways, and checks every implemented closed-form
count against the enumerated and eigenvector data.
"""

__version__ = "0.1.0"

from .errors import GuardLimitError, StructuralFailureError
from .linkpat import (
    DihedralElement,
    LinkPattern,
    Orbit,
    YoungDiagram,
    act,
    dihedral_group,
    dyck_to_young,
    enumerate_link_patterns,
    orbits,
    pattern_from_young_pair,
    pattern_of_dyck,
    pattern_to_dyck,
    young_to_dyck,
)

__all__ = [
    "DihedralElement",
    "GuardLimitError",
    "LinkPattern",
    "Orbit",
    "StructuralFailureError",
    "YoungDiagram",
    "act",
    "dihedral_group",
    "dyck_to_young",
    "enumerate_link_patterns",
    "orbits",
    "pattern_from_young_pair",
    "pattern_of_dyck",
    "pattern_to_dyck",
    "young_to_dyck",
    "__version__",
]
