"""Cyclic-group quantum double lattice models with vertex matter.

Edges carry ``Z_N`` labels, vertices carry matter labels permuted by the gauge
group, and the Hamiltonian is a sum of commuting vertex, face and edge projectors.
"""

from .cells import (
    CellComplex2,
    Incidence,
    disjoint_union,
    torus_grid,
    validate,
    vertex_star,
    wedge_at_vertex,
)
from .cyclic import (
    CyclicGroup,
    MatterAction,
    OrderViolation,
    is_special_form,
    make_action,
    orbit_decomposition,
    theta_matrix,
)
from .excitations import apply_string, confinement_scan, find_dual_path, find_electric_path
from .fusion import (
    WOperator,
    condense,
    detect_nonabelian,
    edge_fixture,
    fusion_table,
    orbital_basis,
    solve_w,
    verify_w,
)
from .operators import (
    edge_projector_family,
    face_projector,
    global_projector,
    hamiltonian,
    pauli_edge,
    vertex_component,
    vertex_projector_family,
)
from .space import ModelSpace, inner
from .spectrum import (
    ground_degeneracy,
    low_spectrum,
    orbit_sector_degeneracy,
    vacuum_state,
    violation_profile,
)

__version__ = "0.1.0"
