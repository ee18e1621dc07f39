"""Electric and magnetic string operators and the confinement energy scan."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cells import CellComplex2
from .operators import pauli_edge
from .space import ModelSpace
from .spectrum import energy


class InvalidPath(ValueError):
    pass


class PathUnavailable(LookupError):
    pass


@dataclass(frozen=True)
class StringOp:
    """Clock (``electric``) or shift (``magnetic``) powers along a path of edges.

    ``signs[k]`` multiplies the charge on ``edges[k]``. Electric paths walk the
    lattice from ``start`` (a vertex); magnetic paths cross edges between faces
    starting from face ``start``.
    """

    kind: str
    start: int
    edges: tuple
    signs: tuple
    closed: bool = False

    @property
    def length(self) -> int:
        return len(self.edges)


def electric_string(c: CellComplex2, start: int, edges) -> StringOp:
    """Walk from vertex ``start`` along ``edges``; going against an edge flips its sign."""
    here, signs = start, []
    for e in edges:
        if not 0 <= e < c.n_edges:
            raise InvalidPath(f"edge {e} does not exist")
        t, h = c.edges[e]
        if t == here:
            signs.append(1)
            here = h
        elif h == here:
            signs.append(-1)
            here = t
        else:
            raise InvalidPath(f"edge {e} does not touch vertex {here}")
    return StringOp("electric", start, tuple(edges), tuple(signs), here == start and bool(edges))


def magnetic_string(c: CellComplex2, start: int, edges) -> StringOp:
    """Cross ``edges`` face to face from face ``start``.

    Leaving a face through an edge it walks with sign ``s`` applies the shift with
    sign ``-s``, so the boundary sums change only on the first and last face.
    """
    occurrences = c.edge_faces()
    here, signs = start, []
    for e in edges:
        if not 0 <= e < c.n_edges:
            raise InvalidPath(f"edge {e} does not exist")
        occ = occurrences[e]
        mine = [k for k, (f, _) in enumerate(occ) if f == here]
        if len(occ) != 2 or len(mine) != 1:
            raise InvalidPath(f"edge {e} is not a crossing out of face {here}")
        f_sign = occ[mine[0]][1]
        signs.append(-f_sign)
        here = occ[1 - mine[0]][0]
    return StringOp("magnetic", start, tuple(edges), tuple(signs), here == start and bool(edges))


def apply_string(space: ModelSpace, state, s: StringOp, charge: int) -> np.ndarray:
    kind = {"electric": "Z", "magnetic": "X"}[s.kind]
    out = np.asarray(state, dtype=complex)
    for e, sign in zip(s.edges, s.signs):
        out = pauli_edge(space, e, kind, sign * charge)(out)
    return out


def _search(neighbors, start, length, closed):
    """Depth-first search for a walk of ``length`` steps with distinct nodes and edges.

    ``neighbors(node)`` yields ``(edge, next_node)`` in a fixed order. Closed walks
    must end where they started.
    """
    path_nodes, path_edges = [start], []

    def dfs():
        if len(path_edges) == length:
            return not closed or path_nodes[-1] == start
        here = path_nodes[-1]
        last = len(path_edges) == length - 1
        for e, nxt in neighbors(here):
            if e in path_edges:
                continue
            if closed and last:
                if nxt != start:
                    continue
            elif nxt in path_nodes:
                continue
            path_nodes.append(nxt)
            path_edges.append(e)
            if dfs():
                return True
            path_nodes.pop()
            path_edges.pop()
        return False

    return list(path_edges) if length > 0 and dfs() else None


def find_electric_path(c: CellComplex2, length: int, closed=False) -> StringOp:
    """First walk of ``length`` edges through distinct vertices (a cycle when ``closed``)."""

    def neighbors(v):
        out = []
        for e, (t, h) in enumerate(c.edges):
            if t == h:
                continue
            if t == v:
                out.append((e, h))
            elif h == v:
                out.append((e, t))
        return out

    for start in range(c.vertex_count):
        edges = _search(neighbors, start, length, closed)
        if edges is not None:
            return electric_string(c, start, edges)
    raise PathUnavailable(f"no {'closed' if closed else 'open'} lattice walk of length {length}")


def find_dual_path(c: CellComplex2, length: int, closed=False) -> StringOp:
    """First dual walk crossing ``length`` edges through distinct faces."""
    occurrences = c.edge_faces()

    def neighbors(f):
        out = []
        for e, _ in sorted(set(c.faces[f])):
            occ = occurrences[e]
            if len(occ) == 2 and occ[0][0] != occ[1][0]:
                other = occ[1][0] if occ[0][0] == f else occ[0][0]
                out.append((e, other))
        return out

    for start in range(c.n_faces):
        edges = _search(neighbors, start, length, closed)
        if edges is not None:
            return magnetic_string(c, start, edges)
    raise PathUnavailable(f"no {'closed' if closed else 'open'} dual walk of length {length}")


@dataclass(frozen=True)
class ScanRow:
    length: int
    delta_magnetic: float
    delta_electric: float


def _integral(x, tol=1e-9):
    r = round(x)
    return int(r) if abs(x - r) < tol else float(x)


def confinement_scan(space: ModelSpace, vacuum, lengths, closed=False, charge=1,
                     excluded_vertices=()) -> list[ScanRow]:
    """Energy cost of magnetic and electric strings of each length on ``vacuum``."""
    e0 = energy(space, vacuum, excluded_vertices)
    rows = []
    for L in lengths:
        mag = find_dual_path(space.complex2, L, closed)
        ele = find_electric_path(space.complex2, L, closed)
        dm = energy(space, apply_string(space, vacuum, mag, charge), excluded_vertices) - e0
        de = energy(space, apply_string(space, vacuum, ele, charge), excluded_vertices) - e0
        rows.append(ScanRow(L, _integral(dm), _integral(de)))
    return rows


def scan_csv(rows) -> str:
    lines = ["L,deltaE_magnetic,deltaE_electric"]
    lines += [f"{r.length},{r.delta_magnetic},{r.delta_electric}" for r in rows]
    return "\n".join(lines) + "\n"
