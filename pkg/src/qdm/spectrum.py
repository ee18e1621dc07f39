"""Ground-space dimension, vacuum vectors, low-lying spectrum and violation counts."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .cells import cohomology_order, components, subcomplex
from .cyclic import orbit_decomposition, stabilizer_order
from .operators import (
    DENSE_CAP,
    _vertex_projector,
    constraint_mask,
    edge_label,
    face_holonomy,
    global_projector,
    ground_energy_bound,
    hamiltonian,
    included_terms,
)
from .space import DimensionCap, ModelSpace

TRACE_TOL = 1e-6
LEVEL_TOL = 1e-7


class NonIntegerTrace(ArithmeticError):
    pass


class AnnihilatedSeed(ValueError):
    pass


class ConvergenceFailure(RuntimeError):
    pass


def _gauge_clusters(space: ModelSpace, vertices, excluded):
    """Group included vertices that a fixed gauge transformation must treat alike.

    A transformation leaves every edge digit unchanged only if it is constant along
    edges between included vertices and trivial next to an excluded vertex.
    Returns ``(clusters, pinned)`` where pinned clusters must carry the identity.
    """
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    pinned_v = set()
    for t, h in space.complex2.edges:
        if t == h:
            continue
        if t in parent and h in parent:
            parent[find(t)] = find(h)
        elif t in parent and h in excluded:
            pinned_v.add(t)
        elif h in parent and t in excluded:
            pinned_v.add(h)
    groups: dict[int, list[int]] = {}
    for v in vertices:
        groups.setdefault(find(v), []).append(v)
    clusters = sorted(groups.values())
    pinned = [any(v in pinned_v for v in c) for c in clusters]
    return clusters, pinned


def _projector_diagonal(space: ModelSpace, excluded_vertices, keep_incident_edges):
    """Exact diagonal of the ground-space projector, entry by entry.

    ``<x|P|x>`` is the fraction of gauge transformations that fix ``x``, restricted
    to states passing every face and edge term.
    """
    vertices, faces, edges = included_terms(space, excluded_vertices, keep_incident_edges)
    excluded = set(range(space.n_vertices)) - set(vertices)
    mask = constraint_mask(space, faces, edges)
    allowed = np.flatnonzero(mask)
    diag = np.zeros(space.dim)
    if allowed.size == 0:
        return diag
    clusters, pinned = _gauge_clusters(space, vertices, excluded)
    table = space.action.table
    n = space.N
    # fixes[c][g] marks allowed states whose matter on cluster c is fixed by g
    fixes = []
    for c, pin in zip(clusters, pinned):
        rows = []
        for g in range(n):
            if pin and g:
                rows.append(np.zeros(allowed.size, dtype=bool))
                continue
            ok = np.ones(allowed.size, dtype=bool)
            for v in c:
                a = space.matter_digit(v)[allowed]
                ok &= table[g][a] == a
            rows.append(ok)
        fixes.append(rows)
    count = np.zeros(allowed.size)
    for gs in product(range(n), repeat=len(clusters)):
        hit = np.ones(allowed.size, dtype=bool)
        for rows, g in zip(fixes, gs):
            hit &= rows[g]
        count += hit
    # each cluster value stands for one transformation; the rest move some edge
    diag[allowed] = count / float(n) ** len(vertices)
    return diag


def projector_trace(space: ModelSpace, excluded_vertices=(), keep_incident_edges=False,
                    method="exact", seed=0, samples=64, batch=256) -> float:
    """Trace of the ground-space projector.

    ``exact`` sums the closed-form diagonal, ``columns`` applies the projector to
    every basis vector, ``hutchinson`` averages ``z^T P z`` over random sign vectors.
    """
    if method == "exact":
        return float(_projector_diagonal(space, excluded_vertices, keep_incident_edges).sum())
    proj = global_projector(space, excluded_vertices, keep_incident_edges)
    if method == "columns":
        total = 0.0
        for start in range(0, space.dim, batch):
            stop = min(start + batch, space.dim)
            cols = np.zeros((space.dim, stop - start), dtype=complex)
            cols[np.arange(start, stop), np.arange(stop - start)] = 1.0
            out = proj(cols)
            total += float(np.real(out[np.arange(start, stop), np.arange(stop - start)]).sum())
        return total
    if method == "hutchinson":
        rng = np.random.default_rng(seed)
        z = rng.choice([-1.0, 1.0], size=(space.dim, samples)).astype(complex)
        return float(np.real(np.einsum("ik,ik->", z.conj(), proj(z))) / samples)
    raise ValueError(f"unknown trace method {method!r}")


def ground_degeneracy(space: ModelSpace, excluded_vertices=(), keep_incident_edges=False,
                      method="exact", seed=0, samples=64) -> int:
    trace = projector_trace(space, excluded_vertices, keep_incident_edges, method, seed, samples)
    rounded = int(round(trace))
    if method != "hutchinson" and abs(trace - rounded) >= TRACE_TOL:
        raise NonIntegerTrace(f"projector trace {trace!r} is not an integer")
    return rounded


def orbit_sector_degeneracy(space: ModelSpace) -> int:
    """Ground-space dimension counted sector by sector, without building operators.

    On each connected piece, matter in one orbit leaves a residual gauge group equal
    to that orbit's stabilizer, which contributes its flat connections modulo gauge:
    the first cohomology with coefficients in the stabilizer. Pieces multiply.
    """
    dec = orbit_decomposition(space.action)
    total = 1
    for verts in components(space.complex2):
        piece = subcomplex(space.complex2, verts)
        total *= sum(
            cohomology_order(piece, stabilizer_order(space.action, orb[0]))
            for orb in dec.orbits
        )
    return total


def vacuum_state(space: ModelSpace, representative, excluded_vertices=(),
                 keep_incident_edges=False, edge_digits=None) -> np.ndarray:
    """Normalized projection of an edge-trivial product state.

    ``representative`` is one matter label used on every vertex, or a per-vertex list.
    """
    labels = np.broadcast_to(np.asarray(representative, dtype=np.int64), (space.n_vertices,))
    edges = np.zeros(space.n_edges, dtype=np.int64) if edge_digits is None else edge_digits
    seed = space.product_state(edges, labels)
    out = global_projector(space, excluded_vertices, keep_incident_edges)(seed)
    nrm = np.linalg.norm(out)
    if nrm < 1e-12:
        raise AnnihilatedSeed(
            f"matter configuration {labels.tolist()} has no ground-space component"
        )
    return out / nrm


def energy(space: ModelSpace, state, excluded_vertices=(), keep_incident_edges=False) -> float:
    h = hamiltonian(space, excluded_vertices, keep_incident_edges)
    return float(np.real(np.vdot(state, h(state))))


def violation_profile(space: ModelSpace, state, excluded_vertices=(), keep_incident_edges=False):
    """Summed ``<1 - A>``, ``<1 - B>``, ``<1 - C>`` over the included terms."""
    vertices, faces, edges = included_terms(space, excluded_vertices, keep_incident_edges)
    state = np.asarray(state, dtype=complex)
    weight = np.abs(state) ** 2
    total = weight.sum()
    vert = sum(total - np.real(np.vdot(state, _vertex_projector(space, v, 1)(state)))
               for v in vertices)
    face = sum(weight[face_holonomy(space, f) != 0].sum() for f in faces)
    edge = sum(weight[edge_label(space, j) != 0].sum() for j in edges)
    return float(vert), float(face), float(edge)


def cluster_levels(values, tol=LEVEL_TOL) -> list[tuple[float, int]]:
    levels: list[list[float]] = []
    for x in np.sort(np.asarray(values, dtype=float)):
        if levels and x - levels[-1][-1] <= tol:
            levels[-1].append(x)
        else:
            levels.append([x])
    return [(float(np.mean(lv)), len(lv)) for lv in levels]


def full_spectrum(space: ModelSpace, excluded_vertices=(), keep_incident_edges=False,
                  dense_cap=DENSE_CAP) -> np.ndarray:
    h = hamiltonian(space, excluded_vertices, keep_incident_edges).to_dense(dense_cap)
    return np.linalg.eigvalsh(h)


def low_spectrum(space: ModelSpace, count=None, excluded_vertices=(), keep_incident_edges=False,
                 dense_cap=DENSE_CAP, tol=LEVEL_TOL, seed=0) -> list[tuple[float, int]]:
    """Lowest energies with multiplicities.

    Dense diagonalization up to ``dense_cap``. Above it, ``count`` eigenvalues from
    a block iterative solver (LOBPCG): single-vector Krylov methods see one copy of
    each degenerate level, a random block of width ``count + 4`` sees all of them.
    The highest returned level may be truncated.
    """
    if space.dim <= dense_cap:
        vals = full_spectrum(space, excluded_vertices, keep_incident_edges, dense_cap)
        if count is not None:
            vals = vals[:count]
        return cluster_levels(vals, tol)
    if count is None:
        raise DimensionCap(f"dimension {space.dim} above dense cap {dense_cap} needs a count")
    import warnings

    from scipy.sparse.linalg import lobpcg

    h = hamiltonian(space, excluded_vertices, keep_incident_edges)
    rng = np.random.default_rng(seed)
    block = space.random_vectors(min(count + 4, space.dim), rng)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        vals, vecs = lobpcg(h.as_scipy(), block, largest=False, tol=1e-9, maxiter=1000)
    order = np.argsort(vals)[:count]
    vals, vecs = vals[order], vecs[:, order]
    resid = np.linalg.norm(h(vecs) - vecs * vals, axis=0)
    if resid.max() > 1e-6:
        raise ConvergenceFailure(f"iterative eigensolver residual {resid.max():.2e}")
    return cluster_levels(np.real(vals), 1e-6)


@dataclass
class GroundReport:
    degeneracy: int
    d_alg_predicted: int
    energy_floor: float
    vacua: list = field(default_factory=list)
    sector_count: int | None = None

    def to_dict(self) -> dict:
        return {
            "degeneracy": self.degeneracy,
            "d_alg": self.d_alg_predicted,
            "energy_floor": self.energy_floor,
            "vacua": self.vacua,
            "sector_count": self.sector_count,
        }


def ground_report(space: ModelSpace, excluded_vertices=(), keep_incident_edges=False) -> GroundReport:
    dec = orbit_decomposition(space.action)
    vacua = []
    for orb in dec.orbits:
        rep = min(orb)
        try:
            vec = vacuum_state(space, rep, excluded_vertices, keep_incident_edges)
            vacua.append({"representative": rep, "orbit": list(orb),
                          "norm": float(np.linalg.norm(vec))})
        except AnnihilatedSeed:
            vacua.append({"representative": rep, "orbit": list(orb), "norm": 0.0})
    return GroundReport(
        degeneracy=ground_degeneracy(space, excluded_vertices, keep_incident_edges),
        d_alg_predicted=dec.d_alg,
        energy_floor=float(ground_energy_bound(space, excluded_vertices, keep_incident_edges)),
        vacua=vacua,
        sector_count=None if excluded_vertices else orbit_sector_degeneracy(space),
    )
