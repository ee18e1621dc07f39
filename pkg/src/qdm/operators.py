"""Matrix-free vertex, face and edge operators, the Hamiltonian and the ground-space projector.

Every operator acts on arrays of shape ``(dim,)`` or ``(dim, k)``; the second form
applies it to ``k`` columns at once. Vertex operators are basis permutations, face
and edge projectors are diagonal 0/1 masks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .cells import Incidence, vertex_star
from .space import DimensionCap, ModelSpace, apply_local

DENSE_CAP = 1024


def _scale(d: np.ndarray, x: np.ndarray) -> np.ndarray:
    return d.reshape(d.shape + (1,) * (x.ndim - 1)) * x


@dataclass(frozen=True, eq=False)
class LinearOp:
    space: ModelSpace
    apply: Callable[[np.ndarray], np.ndarray]
    descriptor: dict = field(default_factory=dict)
    diagonal: np.ndarray | None = None

    def __call__(self, x):
        return self.apply(np.asarray(x, dtype=complex))

    def __matmul__(self, other):
        if isinstance(other, LinearOp):
            desc = {"kind": "product", "factors": [self.descriptor, other.descriptor]}
            diag = None
            if self.diagonal is not None and other.diagonal is not None:
                diag = self.diagonal * other.diagonal
            return LinearOp(self.space, lambda x: self(other(x)), desc, diag)
        return self(other)

    def __add__(self, other):
        diag = None
        if self.diagonal is not None and other.diagonal is not None:
            diag = self.diagonal + other.diagonal
        desc = {"kind": "sum", "terms": [self.descriptor, other.descriptor]}
        return LinearOp(self.space, lambda x: self(x) + other(x), desc, diag)

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c):
        diag = None if self.diagonal is None else c * self.diagonal
        desc = {"kind": "scaled", "factor": c, "term": self.descriptor}
        return LinearOp(self.space, lambda x: c * self(x), desc, diag)

    def to_dense(self, cap: int = DENSE_CAP) -> np.ndarray:
        dim = self.space.dim
        if dim > cap:
            raise DimensionCap(f"dense matrix of dimension {dim} exceeds cap {cap}")
        if self.diagonal is not None:
            return np.diag(self.diagonal.astype(complex))
        return self(np.eye(dim, dtype=complex))

    def as_scipy(self):
        from scipy.sparse.linalg import LinearOperator

        dim = self.space.dim
        return LinearOperator(
            (dim, dim), matvec=self.__call__, matmat=self.__call__, dtype=complex
        )


def identity(space: ModelSpace) -> LinearOp:
    return LinearOp(space, lambda x: x.copy(), {"kind": "identity"}, np.ones(space.dim))


@dataclass(frozen=True)
class ProjectorFamily:
    """Ordered projectors; ``members[0]`` is the one used by the Hamiltonian."""

    kind: str
    cell: int
    members: tuple

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, k):
        return self.members[k]


def vertex_target(space: ModelSpace, v: int, g: int) -> np.ndarray:
    """Index of the image of every basis state under the vertex component ``g`` at ``v``."""
    g %= space.N
    key = ("vertex", v, g)
    if key in space._cache:
        return space._cache[key]
    n = space.N
    target = np.arange(space.dim, dtype=np.int64)
    if g:
        for e, inc in vertex_star(space.complex2, v):
            if inc is Incidence.LOOP:
                continue
            step = g if inc is Incidence.IN else -g
            d = space.edge_digit(e)
            target += ((d + step) % n - d) * space.weights[e]
        site = space.vertex_site(v)
        a = space.digit(site)
        target += (space.action.table[g][a] - a) * space.weights[site]
    space._cache[key] = target
    return target


def vertex_component(space: ModelSpace, v: int, g: int) -> LinearOp:
    """Gauge transformation by ``g`` at vertex ``v``.

    Adds ``g`` to incoming edges, subtracts it from outgoing edges, leaves self-loops
    alone and moves the matter label along the action.
    """
    if not 0 <= v < space.n_vertices:
        raise ValueError(f"vertex {v} out of range")
    gather = vertex_target(space, v, -g)
    desc = {"kind": "vertex_component", "cell": v, "index": g % space.N}
    if g % space.N == 0:
        return LinearOp(space, lambda x: x.copy(), desc, np.ones(space.dim))
    return LinearOp(space, lambda x: x[gather], desc)


def _vertex_projector(space, v, J):
    n = space.N
    gathers = [vertex_target(space, v, -g) for g in range(n)]
    coeffs = np.conj(space.group.phases()) ** (J - 1) / n

    def apply(x):
        out = coeffs[0] * x
        for g in range(1, n):
            out = out + coeffs[g] * x[gathers[g]]
        return out

    return LinearOp(space, apply, {"kind": "A", "cell": v, "index": J})


def vertex_projector_family(space: ModelSpace, v: int) -> ProjectorFamily:
    """``A_{v,J} = (1/N) sum_g conj(omega)^((J-1) g) * component(g)`` for ``J = 1..N``."""
    if not 0 <= v < space.n_vertices:
        raise ValueError(f"vertex {v} out of range")
    return ProjectorFamily(
        "A", v, tuple(_vertex_projector(space, v, J) for J in range(1, space.N + 1))
    )


def face_holonomy(space: ModelSpace, f: int) -> np.ndarray:
    key = ("holonomy", f)
    if key not in space._cache:
        hol = np.zeros(space.dim, dtype=np.int64)
        for e, s in space.complex2.faces[f]:
            hol += s * space.edge_digit(e)
        space._cache[key] = hol % space.N
    return space._cache[key]


def _diagonal_op(space, mask, desc):
    d = mask.astype(float)
    return LinearOp(space, lambda x: _scale(d, x), desc, d)


def face_projector(space: ModelSpace, f: int, h: int) -> LinearOp:
    """Keeps basis states whose signed boundary sum around ``f`` equals ``h`` mod N."""
    if not 0 <= f < space.n_faces:
        raise ValueError(f"face {f} out of range")
    return _diagonal_op(space, face_holonomy(space, f) == h % space.N,
                        {"kind": "B", "cell": f, "index": h % space.N})


def face_projector_family(space: ModelSpace, f: int) -> ProjectorFamily:
    return ProjectorFamily("B", f, tuple(face_projector(space, f, h) for h in range(space.N)))


def edge_label(space: ModelSpace, j: int) -> np.ndarray:
    """``(theta(g, a) - b) mod M`` with tail label ``a``, edge digit ``g``, head label ``b``.

    The edge projector ``R`` keeps exactly the states where this equals ``R - 1``.
    """
    key = ("edge", j)
    if key not in space._cache:
        t, h = space.complex2.edges[j]
        a = space.matter_digit(t)
        b = space.matter_digit(h)
        moved = space.action.table[space.edge_digit(j), a]
        space._cache[key] = (moved - b) % space.M
    return space._cache[key]


def edge_projector(space: ModelSpace, j: int, R: int) -> LinearOp:
    if not 0 <= j < space.n_edges:
        raise ValueError(f"edge {j} out of range")
    return _diagonal_op(space, edge_label(space, j) == (R - 1) % space.M,
                        {"kind": "C", "cell": j, "index": R})


def edge_projector_family(space: ModelSpace, j: int) -> ProjectorFamily:
    return ProjectorFamily(
        "C", j, tuple(edge_projector(space, j, R) for R in range(1, space.M + 1))
    )


def included_terms(space: ModelSpace, excluded_vertices=(), keep_incident_edges=False):
    """Vertices, faces and edges whose terms enter the Hamiltonian."""
    excluded = set(int(v) for v in excluded_vertices)
    bad = [v for v in excluded if not 0 <= v < space.n_vertices]
    if bad:
        raise ValueError(f"excluded vertices {bad} do not exist")
    vertices = [v for v in range(space.n_vertices) if v not in excluded]
    faces = list(range(space.n_faces))
    edges = [
        j for j, (t, h) in enumerate(space.complex2.edges)
        if keep_incident_edges or (t not in excluded and h not in excluded)
    ]
    return vertices, faces, edges


def constraint_mask(space: ModelSpace, faces, edges) -> np.ndarray:
    """Basis states satisfying every listed face and edge term."""
    mask = np.ones(space.dim, dtype=bool)
    for j in edges:
        mask &= edge_label(space, j) == 0
    for f in faces:
        mask &= face_holonomy(space, f) == 0
    return mask


def hamiltonian(space: ModelSpace, excluded_vertices=(), keep_incident_edges=False) -> LinearOp:
    vertices, faces, edges = included_terms(space, excluded_vertices, keep_incident_edges)
    diag = np.zeros(space.dim)
    for f in faces:
        diag -= face_holonomy(space, f) == 0
    for j in edges:
        diag -= edge_label(space, j) == 0
    projectors = [_vertex_projector(space, v, 1) for v in vertices]

    def apply(x):
        out = _scale(diag, x)
        for a in projectors:
            out = out - a(x)
        return out

    desc = {"kind": "H", "vertices": vertices, "faces": faces, "edges": edges}
    return LinearOp(space, apply, desc, diag if not projectors else None)


def ground_energy_bound(space: ModelSpace, excluded_vertices=(), keep_incident_edges=False) -> int:
    """``-(V' + F + E')``, the energy of any state satisfying every included term."""
    v, f, e = included_terms(space, excluded_vertices, keep_incident_edges)
    return -(len(v) + len(f) + len(e))


def global_projector(space: ModelSpace, excluded_vertices=(), keep_incident_edges=False) -> LinearOp:
    """Product of all included edge, then face, then vertex projectors."""
    vertices, faces, edges = included_terms(space, excluded_vertices, keep_incident_edges)
    mask = constraint_mask(space, faces, edges).astype(float)
    projectors = [_vertex_projector(space, v, 1) for v in vertices]

    def apply(x):
        out = _scale(mask, x)
        for a in projectors:
            out = a(out)
        return out

    desc = {"kind": "P", "vertices": vertices, "faces": faces, "edges": edges}
    return LinearOp(space, apply, desc, mask if not projectors else None)


def pauli_edge(space: ModelSpace, j: int, kind: str, power: int) -> LinearOp:
    """Shift (``"X"``: add ``power`` to the edge digit) or clock (``"Z"``) on edge ``j``."""
    if not 0 <= j < space.n_edges:
        raise ValueError(f"edge {j} out of range")
    power %= space.N
    desc = {"kind": kind, "cell": j, "index": power}
    d = space.edge_digit(j)
    if kind == "X":
        gather = np.arange(space.dim, dtype=np.int64) + ((d - power) % space.N - d) * space.weights[j]
        return LinearOp(space, lambda x: x[gather], desc)
    if kind == "Z":
        phase = space.group.phases()[(power * d) % space.N]
        return LinearOp(space, lambda x: _scale(phase, x), desc, phase)
    raise ValueError(f"edge operator kind must be 'X' or 'Z', got {kind!r}")


def matter_operator(space: ModelSpace, v: int, matrix) -> LinearOp:
    """An ``M x M`` matrix acting on the matter factor of vertex ``v``."""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape != (space.M, space.M):
        raise ValueError(f"matter operator must be {space.M}x{space.M}")
    site = space.vertex_site(v)
    return LinearOp(space, lambda x: apply_local(space, site, matrix, x),
                    {"kind": "W", "cell": v})


def matter_operator_everywhere(space: ModelSpace, matrix, vertices=None) -> LinearOp:
    """The same matter matrix applied on every listed vertex (all by default)."""
    vertices = range(space.n_vertices) if vertices is None else vertices
    ops = [matter_operator(space, v, matrix) for v in vertices]

    def apply(x):
        for op in ops:
            x = op(x)
        return x

    return LinearOp(space, apply, {"kind": "W_all", "cells": list(vertices)})
