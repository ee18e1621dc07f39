"""Numerical algebra suite: component relations, commutators and projector resolutions.

Everything is evaluated on a block of random unit vectors. Vertex components are
basis permutations, so two products of them are compared only on the rows where
their index maps differ; the remaining rows agree exactly. For a diagonal ``D``
the commutator with a component is ``(D o pi - D) * (component x)``, whose
column norms come out of one matrix product. The character-weighted ``A_{v,J}``
are averages of unit-modulus multiples of components, so their commutators are
bounded by the mean component commutator; that bound is what gets reported.
Diagonal operators among themselves are compared exactly on their diagonals.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .operators import edge_label, face_holonomy, vertex_target
from .space import ModelSpace

TOL = 1e-9


def _col_norm(x) -> np.ndarray:
    return np.linalg.norm(x, axis=0) if x.size else np.zeros(x.shape[1:])


def _map_residual(x, p, q) -> float:
    """Largest column norm of ``x[p] - x[q]``."""
    rows = np.flatnonzero(p != q)
    if rows.size == 0:
        return 0.0
    return float(np.max(_col_norm(x[p[rows]] - x[q[rows]])))


def algebra_suite(space: ModelSpace, n_vectors=20, seed=0) -> dict[str, float]:
    """Largest residual of each relation family on ``n_vectors`` random vectors."""
    rng = np.random.default_rng(seed)
    x = space.random_vectors(n_vectors, rng)
    x /= np.linalg.norm(x, axis=0)
    y = space.random_vectors(n_vectors, rng)
    n, V = space.N, space.n_vertices
    phases = np.conj(space.group.phases())
    out: dict[str, float] = {}

    # gather maps: component g at v sends x to x[maps[v][g]]
    maps = [[vertex_target(space, v, -g) for g in range(n)] for v in range(V)]
    comp = [[x] + [x[maps[v][g]] for g in range(1, n)] for v in range(V)]

    res = 0.0
    for v in range(V):
        for g in range(1, n):
            for h in range(1, n):
                res = max(res, _map_residual(x, maps[v][h][maps[v][g]], maps[v][(g + h) % n]))
    out["vertex_component_product"] = res

    res = 0.0
    for v in range(V):
        for g in range(1, n):
            lhs = np.einsum("ik,ik->k", y.conj(), comp[v][g])
            rhs = np.einsum("ik,ik->k", y[maps[v][-g % n]].conj(), x)
            res = max(res, float(np.max(np.abs(lhs - rhs))))
    out["vertex_component_adjoint"] = res

    def projectors_from(blocks):
        return [sum(phases[(J * g) % n] * blocks[g] for g in range(n)) / n for J in range(n)]

    res_sum = res_idem = 0.0
    for v in range(V):
        proj = projectors_from(comp[v])
        res_sum = max(res_sum, float(np.max(_col_norm(sum(proj) - x))))
        for K in range(n):
            again = projectors_from([proj[K]] + [proj[K][maps[v][g]] for g in range(1, n)])
            for J in range(n):
                diff = again[J] - proj[K] if J == K else again[J]
                res_idem = max(res_idem, float(np.max(_col_norm(diff))))
        del proj
    out["vertex_family_resolution"] = res_sum
    out["vertex_family_orthogonal_idempotent"] = res_idem

    faces = [np.array([face_holonomy(space, f) == h for h in range(n)], dtype=float)
             for f in range(space.n_faces)]
    edges = [np.array([edge_label(space, j) == r for r in range(space.M)], dtype=float)
             for j in range(space.n_edges)]
    for name, fams in (("face", faces), ("edge", edges)):
        res_sum = res_idem = 0.0
        for fam in fams:
            res_sum = max(res_sum, float(np.max(np.abs(fam.sum(axis=0) - 1))))
            for a in range(len(fam)):
                for b in range(len(fam)):
                    target = fam[a] if a == b else 0
                    res_idem = max(res_idem, float(np.max(np.abs(fam[a] * fam[b] - target))))
        out[f"{name}_family_resolution"] = res_sum
        out[f"{name}_family_orthogonal_idempotent"] = res_idem

    diagonals = [d for fam in faces + edges for d in fam]
    res = 0.0
    for d1, d2 in combinations(diagonals, 2):
        res = max(res, float(np.max(np.abs(d1 * d2 - d2 * d1))))
    out["diagonal_commutators"] = res

    def vertex_vs_diagonal(fams):
        if not fams:
            return 0.0
        stack = np.concatenate(fams)
        res = 0.0
        for v in range(V):
            total = np.zeros(len(stack))
            for g in range(1, n):
                delta = (stack[:, maps[v][g]] - stack) ** 2
                norms = np.sqrt(delta @ np.abs(comp[v][g]) ** 2)
                total += norms.max(axis=1)
            res = max(res, float(total.max()) / n)
        return res

    out["vertex_face_commutators"] = vertex_vs_diagonal(faces)
    out["vertex_edge_commutators"] = vertex_vs_diagonal(edges)

    res = 0.0
    for v, w in combinations(range(V), 2):
        total = 0.0
        for g in range(1, n):
            for h in range(1, n):
                total += _map_residual(x, maps[w][h][maps[v][g]], maps[v][g][maps[w][h]])
        res = max(res, total / n**2)
    out["vertex_vertex_commutators"] = res
    return out


def failing_relations(space: ModelSpace, results: dict, tol=TOL) -> dict:
    return {k: v for k, v in results.items() if v >= tol}


def edge_commutator_offenders(space: ModelSpace, tol=TOL) -> list[tuple[int, int, int]]:
    """``(vertex, edge, R)`` triples whose edge projector fails to commute with the vertex.

    Exact test: the component at ``v`` permutes basis states, and a diagonal
    commutes with it iff the diagonal is constant along that permutation.
    """
    out = []
    for v in range(space.n_vertices):
        maps = [vertex_target(space, v, g) for g in range(1, space.N)]
        for j in range(space.n_edges):
            lab = edge_label(space, j)
            for r in range(space.M):
                d = lab == r
                if any(np.any(d[m] != d) for m in maps):
                    out.append((v, j, r + 1))
    return out
