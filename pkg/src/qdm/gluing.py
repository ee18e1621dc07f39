"""Ground-space experiments on glued complexes: disjoint unions and one-vertex wedges."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cells import CellComplex2, disjoint_union, wedge_at_vertex
from .cyclic import MatterAction, orbit_decomposition
from .operators import _vertex_projector, constraint_mask, ground_energy_bound, included_terms
from .space import DEFAULT_DIM_CAP, ModelSpace
from .spectrum import energy, ground_degeneracy, orbit_sector_degeneracy, violation_profile


@dataclass
class GlueResult:
    mode: str
    exclude_shared: bool
    shared_vertex: int | None
    d_alg: int
    predicted: int
    measured: int
    sector_count: int | None
    measured_keeping_edges: int | None = None
    domain_wall: dict | None = None
    dims: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "exclude_shared": self.exclude_shared,
            "shared_vertex": self.shared_vertex,
            "d_alg": self.d_alg,
            "predicted": self.predicted,
            "measured": self.measured,
            "matches_prediction": self.measured == self.predicted,
            "sector_count": self.sector_count,
            "measured_keeping_edges": self.measured_keeping_edges,
            "domain_wall": self.domain_wall,
            "dims": self.dims,
        }


def glue(a: CellComplex2, b: CellComplex2, mode: str, at=(0, 0)):
    """Return ``(complex, shared_vertex, vertices_of_b)``; ``shared_vertex`` is None for unions."""
    if mode == "union":
        c = disjoint_union(a, b)
        return c, None, list(range(a.vertex_count, c.vertex_count))
    if mode == "wedge":
        c, q = wedge_at_vertex(a, at[0], b, at[1])
        return c, q, list(range(a.vertex_count, c.vertex_count))
    raise ValueError(f"glue mode must be 'union' or 'wedge', got {mode!r}")


def domain_wall(space: ModelSpace, labels, excluded_vertices=()) -> dict:
    """Energy of a gauge-averaged, flat state whose matter labels differ across the complex.

    The seed carries trivial edges and the given per-vertex labels; it is projected
    onto gauge-invariant flat states only, so edge comparators are left to report
    the mismatch.
    """
    vertices, faces, _ = included_terms(space, excluded_vertices)
    seed = space.product_state(np.zeros(space.n_edges, dtype=int), labels)
    state = constraint_mask(space, faces, []) * seed
    for v in vertices:
        state = _vertex_projector(space, v, 1)(state)
    state = state / np.linalg.norm(state)
    e = energy(space, state, excluded_vertices)
    e0 = ground_energy_bound(space, excluded_vertices)
    return {
        "labels": [int(x) for x in labels],
        "energy": e,
        "ground_energy": float(e0),
        "excess": e - e0,
        "violations": [0.0 if abs(x) < 1e-12 else x
                       for x in violation_profile(space, state, excluded_vertices)],
    }


def glue_experiment(action: MatterAction, a: CellComplex2, b: CellComplex2, mode: str,
                    exclude_shared=False, at=(0, 0), wall_labels=None,
                    dim_cap=DEFAULT_DIM_CAP) -> GlueResult:
    c, q, b_vertices = glue(a, b, mode, at)
    space = ModelSpace(c, action, dim_cap)
    dec = orbit_decomposition(action)
    excluded = [q] if (exclude_shared and q is not None) else []
    if mode == "union" or exclude_shared:
        predicted = dec.d_alg**2
    else:
        predicted = dec.d_alg
    measured = ground_degeneracy(space, excluded)
    res = GlueResult(
        mode=mode,
        exclude_shared=bool(excluded),
        shared_vertex=q,
        d_alg=dec.d_alg,
        predicted=predicted,
        measured=measured,
        sector_count=None if excluded else orbit_sector_degeneracy(space),
        dims={"V": c.vertex_count, "E": c.n_edges, "F": c.n_faces, "dim": space.dim},
    )
    if excluded:
        res.measured_keeping_edges = ground_degeneracy(space, excluded, keep_incident_edges=True)
    if mode == "wedge" and not excluded and dec.d_alg > 1:
        if wall_labels is None:
            reps = dec.representatives()
            wall_labels = (reps[0], reps[-1])
        labels = np.full(c.vertex_count, wall_labels[0], dtype=int)
        labels[b_vertices] = wall_labels[1]
        res.domain_wall = domain_wall(space, labels)
    return res
