"""Oriented two-dimensional cell complexes: torus grids, unions, wedges, validation."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

import numpy as np


class Incidence(enum.Enum):
    IN = "In"
    OUT = "Out"
    LOOP = "Loop"


@dataclass(frozen=True)
class CellComplex2:
    """Vertices ``0..V-1``, directed edges ``(tail, head)`` and faces as signed edge walks.

    A face is a tuple of ``(edge, sign)`` steps; sign ``+1`` walks the edge from
    tail to head, ``-1`` from head to tail.
    """

    vertex_count: int
    edges: tuple = ()
    faces: tuple = ()
    labels: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(t), int(h)) for t, h in self.edges))
        object.__setattr__(
            self,
            "faces",
            tuple(tuple((int(e), int(s)) for e, s in f) for f in self.faces),
        )

    @property
    def n_vertices(self) -> int:
        return self.vertex_count

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - self.n_edges + self.n_faces

    def faces_of_edge(self, e: int) -> list[tuple[int, int]]:
        """``(face, sign)`` for every occurrence of edge ``e`` in a face boundary."""
        return [(f, s) for f, walk in enumerate(self.faces) for ee, s in walk if ee == e]

    def edge_faces(self) -> list[list[tuple[int, int]]]:
        out: list[list[tuple[int, int]]] = [[] for _ in self.edges]
        for f, walk in enumerate(self.faces):
            for e, s in walk:
                if 0 <= e < self.n_edges:
                    out[e].append((f, s))
        return out


def torus_grid(rows: int, cols: int) -> CellComplex2:
    """Periodic square lattice.

    Vertex ``(i, j)`` has id ``i*cols + j``. Horizontal edge ``(i, j)`` runs from
    ``(i, j)`` to ``(i, j+1)`` and has id ``i*cols + j``; vertical edge ``(i, j)``
    runs from ``(i, j)`` to ``(i+1, j)`` and has id ``rows*cols + i*cols + j``.
    Face ``(i, j)`` sits above and right of vertex ``(i, j)`` and is walked
    counterclockwise starting along its bottom edge.
    """
    if rows < 1 or cols < 1:
        raise ValueError("torus_grid needs rows >= 1 and cols >= 1")

    def vid(i, j):
        return (i % rows) * cols + (j % cols)

    def hid(i, j):
        return vid(i, j)

    def vert(i, j):
        return rows * cols + vid(i, j)

    edges = [(vid(i, j), vid(i, j + 1)) for i in range(rows) for j in range(cols)]
    edges += [(vid(i, j), vid(i + 1, j)) for i in range(rows) for j in range(cols)]
    faces = [
        ((hid(i, j), 1), (vert(i, j + 1), 1), (hid(i + 1, j), -1), (vert(i, j), -1))
        for i in range(rows)
        for j in range(cols)
    ]
    return CellComplex2(rows * cols, tuple(edges), tuple(faces))


def _shift(c: CellComplex2, vmap, edge_offset: int):
    edges = [(vmap(t), vmap(h)) for t, h in c.edges]
    faces = [tuple((e + edge_offset, s) for e, s in f) for f in c.faces]
    return edges, faces


def _merged_labels(a: CellComplex2, b: CellComplex2):
    if a.labels is None and b.labels is None:
        return None
    return tuple(a.labels or ()) + tuple(b.labels or ())


def disjoint_union(a: CellComplex2, b: CellComplex2) -> CellComplex2:
    eb, fb = _shift(b, lambda v: v + a.vertex_count, a.n_edges)
    return CellComplex2(
        a.vertex_count + b.vertex_count,
        a.edges + tuple(eb),
        a.faces + tuple(fb),
        _merged_labels(a, b),
    )


def wedge_at_vertex(a: CellComplex2, va: int, b: CellComplex2, vb: int):
    """Glue ``b`` onto ``a`` by identifying vertex ``vb`` of ``b`` with ``va`` of ``a``.

    Returns ``(complex, shared)`` where ``shared == va`` is the glued vertex.
    Vertices of ``b`` other than ``vb`` keep their order after those of ``a``.
    """
    if not 0 <= va < a.vertex_count or not 0 <= vb < b.vertex_count:
        raise ValueError("wedge vertex out of range")

    def vmap(w):
        if w == vb:
            return va
        return a.vertex_count + w - (1 if w > vb else 0)

    eb, fb = _shift(b, vmap, a.n_edges)
    out = CellComplex2(
        a.vertex_count + b.vertex_count - 1,
        a.edges + tuple(eb),
        a.faces + tuple(fb),
    )
    return out, va


@dataclass(frozen=True)
class Violation:
    kind: str
    cell: int
    detail: str = ""

    def __repr__(self):
        return f"{self.kind}({self.cell})"


def EdgeFaceCount(edge: int, detail: str = "") -> Violation:
    return Violation("EdgeFaceCount", edge, detail)


def OpenFaceWalk(face: int, detail: str = "") -> Violation:
    return Violation("OpenFaceWalk", face, detail)


def _step_ends(c: CellComplex2, e: int, s: int):
    t, h = c.edges[e]
    return (t, h) if s > 0 else (h, t)


def validate(c: CellComplex2) -> list[Violation]:
    """List every broken structural rule. Complexes without faces skip the face rules."""
    out: list[Violation] = []
    for e, (t, h) in enumerate(c.edges):
        if not (0 <= t < c.vertex_count and 0 <= h < c.vertex_count):
            out.append(Violation("InvalidVertex", e, f"edge {e} = ({t}, {h})"))
    if not c.faces:
        return out
    bad_face = set()
    for f, walk in enumerate(c.faces):
        if not walk:
            out.append(OpenFaceWalk(f, "empty boundary"))
            continue
        if any(not 0 <= e < c.n_edges or s not in (1, -1) for e, s in walk):
            out.append(Violation("InvalidEdgeRef", f))
            bad_face.add(f)
            continue
        ends = [_step_ends(c, e, s) for e, s in walk]
        if any(ends[i][1] != ends[(i + 1) % len(ends)][0] for i in range(len(ends))):
            out.append(OpenFaceWalk(f))
    for e, occ in enumerate(c.edge_faces()):
        if len(occ) != 2:
            out.append(EdgeFaceCount(e, f"used {len(occ)} times"))
        elif sum(s for _, s in occ) != 0:
            out.append(Violation("SignedMultiplicity", e, "same direction twice"))
    return out


def vertex_star(c: CellComplex2, v: int) -> list[tuple[int, Incidence]]:
    if not 0 <= v < c.vertex_count:
        raise ValueError(f"vertex {v} out of range")
    out = []
    for e, (t, h) in enumerate(c.edges):
        if t == v and h == v:
            out.append((e, Incidence.LOOP))
        elif h == v:
            out.append((e, Incidence.IN))
        elif t == v:
            out.append((e, Incidence.OUT))
    return out


def components(c: CellComplex2) -> list[list[int]]:
    """Vertex sets of the connected components (via edges), ascending."""
    parent = list(range(c.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t, h in c.edges:
        parent[find(t)] = find(h)
    groups: dict[int, list[int]] = {}
    for v in range(c.vertex_count):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def subcomplex(c: CellComplex2, vertices) -> CellComplex2:
    """Cells spanned by a vertex set closed under adjacency, reindexed in order."""
    keep = sorted(vertices)
    vnew = {v: i for i, v in enumerate(keep)}
    eids = [e for e, (t, h) in enumerate(c.edges) if t in vnew]
    enew = {e: i for i, e in enumerate(eids)}
    faces = [
        tuple((enew[e], s) for e, s in walk)
        for walk in c.faces
        if walk and walk[0][0] in enew
    ]
    return CellComplex2(
        len(keep), tuple((vnew[c.edges[e][0]], vnew[c.edges[e][1]]) for e in eids), tuple(faces)
    )


def coboundary_matrices(c: CellComplex2) -> tuple[np.ndarray, np.ndarray]:
    """Integer coboundaries ``d0`` (E x V) and ``d1`` (F x E)."""
    d0 = np.zeros((c.n_edges, c.vertex_count), dtype=np.int64)
    for e, (t, h) in enumerate(c.edges):
        d0[e, h] += 1
        d0[e, t] -= 1
    d1 = np.zeros((c.n_faces, c.n_edges), dtype=np.int64)
    for f, walk in enumerate(c.faces):
        for e, s in walk:
            d1[f, e] += s
    return d0, d1


def _image_order(mat: np.ndarray, s: int) -> int:
    """Size of the image of an integer matrix acting on ``(Z_s)^cols``."""
    if mat.size == 0 or not mat.any():
        return 1
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import invariant_factors

    factors = invariant_factors(Matrix(mat.tolist()), domain=ZZ)
    out = 1
    for d in factors:
        d = int(d)
        if d:
            out *= s // gcd(d, s)
    return out


def cohomology_order(c: CellComplex2, s: int) -> int:
    """Order of the first cellular cohomology group with ``Z_s`` coefficients."""
    if s == 1:
        return 1
    d0, d1 = coboundary_matrices(c)
    cocycles = s**c.n_edges // _image_order(d1, s)
    return cocycles // _image_order(d0, s)


def from_spec(spec: dict) -> CellComplex2:
    """Build a complex from its JSON description (``torus``, ``custom``, ``union``, ``wedge``)."""
    if not isinstance(spec, dict) or "type" not in spec:
        raise ValueError("complex spec must be an object with a 'type' field")
    kind = spec["type"]
    if kind == "torus":
        return torus_grid(int(spec["rows"]), int(spec["cols"]))
    if kind == "custom":
        return CellComplex2(
            int(spec["vertices"]),
            tuple(tuple(e) for e in spec.get("edges", [])),
            tuple(tuple(tuple(st) for st in f) for f in spec.get("faces", [])),
        )
    if kind in ("union", "wedge"):
        parts = [from_spec(p) for p in spec.get("parts", [])]
        if not parts:
            raise ValueError(f"{kind} spec needs a non-empty 'parts' list")
        if kind == "union":
            out = parts[0]
            for p in parts[1:]:
                out = disjoint_union(out, p)
            return out
        if len(parts) != 2:
            raise ValueError("wedge spec needs exactly two parts")
        va, vb = spec.get("at", [0, 0])
        return wedge_at_vertex(parts[0], int(va), parts[1], int(vb))[0]
    raise ValueError(f"unknown complex type {kind!r}")
