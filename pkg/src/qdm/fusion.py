"""W operator solver, fusion tables by composition, and vacuum condensation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space

from .cells import CellComplex2
from .cyclic import MatterAction
from .operators import (
    edge_projector_family,
    global_projector,
    matter_operator,
    matter_operator_everywhere,
    vertex_projector_family,
)
from .space import ModelSpace

RELATIONS = ("operator", "vertex")


class FusionError(ArithmeticError):
    """A candidate W set does not close into a fusion algebra.

    ``pairs`` lists every offending ``(a, b, reason)``; ``noncommuting`` the
    offending pairs whose two orderings differ by more than a phase.
    """

    def __init__(self, message, pairs, noncommuting=()):
        super().__init__(message)
        self.pairs = list(pairs)
        self.noncommuting = list(noncommuting)


class NotClosed(FusionError):
    pass


class NonIntegerCoefficients(FusionError):
    pass


@dataclass
class WOperator:
    """Single-vertex matter operator with its label and the projector indices it links.

    ``J`` selects the vertex projector it maps onto; ``K`` the edge projector, or
    ``None`` when only the vertex relation is claimed.
    """

    label: tuple
    matrix: np.ndarray
    J: int = 1
    K: int | None = 1
    note: str = ""

    @property
    def name(self) -> str:
        if len(self.label) == 3:
            return f"({self.label[0]};{self.label[1]},{self.label[2]})"
        return "(" + ",".join(str(x) for x in self.label) + ")"


def as_w(label, matrix, note="") -> WOperator:
    label = tuple(label)
    if len(label) == 2:
        return WOperator(label, np.asarray(matrix, dtype=complex), label[0], label[1], note)
    return WOperator(label, np.asarray(matrix, dtype=complex), label[0], None, note)


def edge_fixture(action: MatterAction) -> ModelSpace:
    """Two vertices joined by one edge from vertex 0 to vertex 1, no faces."""
    return ModelSpace(CellComplex2(2, ((0, 1),), ()), action)


def _relation_blocks(fixture, J, K, relation, vertex):
    blocks = [(vertex_projector_family(fixture, vertex)[J - 1].to_dense(),
               vertex_projector_family(fixture, vertex)[0].to_dense())]
    if relation == "operator" and K is not None:
        fam = edge_projector_family(fixture, 0)
        blocks.append((fam[K - 1].to_dense(), fam[0].to_dense()))
    elif relation not in RELATIONS:
        raise ValueError(f"relation must be one of {RELATIONS}")
    return blocks


def _residuals(fixture, matrix, blocks, vertex):
    lifted = matter_operator(fixture, vertex, matrix).to_dense()
    return [left @ lifted - lifted @ right for left, right in blocks]


def _rref(rows: np.ndarray, tol=1e-9) -> np.ndarray:
    a = np.array(rows, dtype=complex)
    r = 0
    for c in range(a.shape[1]):
        if r == a.shape[0]:
            break
        p = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[p, c]) < tol:
            continue
        a[[r, p]] = a[[p, r]]
        a[r] /= a[r, c]
        for i in range(a.shape[0]):
            if i != r:
                a[i] -= a[i, c] * a[r]
        r += 1
    a[np.abs(a) < tol] = 0
    return a[:r]


def canonical_matrix(matrix: np.ndarray, tol=1e-9) -> np.ndarray:
    """First nonzero entry (row-major) scaled to 1, rounded when every entry is integral."""
    m = np.asarray(matrix, dtype=complex)
    flat = m.ravel()
    nz = np.flatnonzero(np.abs(flat) > tol)
    if nz.size == 0:
        return np.zeros_like(m)
    m = m / flat[nz[0]]
    rounded = np.round(m.real) + 1j * np.round(m.imag)
    if np.allclose(m, rounded, atol=tol, rtol=0):
        m = rounded
    m[np.abs(m) < tol] = 0
    if not np.iscomplexobj(m) or np.all(m.imag == 0):
        return m.real.copy() if np.iscomplexobj(m) else m
    return m


def solve_w(fixture: ModelSpace, J: int, K: int | None, relation="operator", vertex=0,
            tol=1e-9) -> list[np.ndarray]:
    """Basis of the ``M x M`` matrices linking projector ``(J, K)`` back to ``(1, 1)``.

    ``relation="operator"`` imposes both the vertex and the edge relation,
    ``"vertex"`` only the vertex one. ``vertex`` selects where the matrix acts on
    the fixture (0 is the tail of the edge). The basis is in reduced row-echelon
    form over the row-major entries, each element scaled by :func:`canonical_matrix`.
    """
    m = fixture.M
    blocks = _relation_blocks(fixture, J, K, relation, vertex)
    cols = []
    for k in range(m * m):
        unit = np.zeros(m * m)
        unit[k] = 1
        res = _residuals(fixture, unit.reshape(m, m), blocks, vertex)
        cols.append(np.concatenate([r.ravel() for r in res]))
    system = np.array(cols).T
    ns = null_space(system, rcond=tol)
    if ns.shape[1] == 0:
        return []
    basis = _rref(ns.T, tol=1e-8)
    return [canonical_matrix(row.reshape(m, m)) for row in basis]


def verify_w(fixture: ModelSpace, w: WOperator, relation="operator", vertex=0) -> float:
    """Largest spectral norm among the relation residuals on the full fixture space."""
    blocks = _relation_blocks(fixture, w.J, w.K, relation, vertex)
    res = _residuals(fixture, w.matrix, blocks, vertex)
    return max(float(np.linalg.norm(r, 2)) for r in res)


def orbital_basis(matrices, tol=1e-9) -> list[WOperator]:
    """Split a matrix space into pieces with disjoint supports.

    Entries are grouped by their coordinate vectors with respect to the given
    basis; entries with proportional coordinates must move together. For the
    commutant of a permutation action this yields the 0/1 indicator of each
    orbit of label pairs. Raises ``ValueError`` when the space is not spanned by
    such pieces.
    """
    mats = [np.asarray(w, dtype=complex) for w in matrices]
    if not mats:
        return []
    m = mats[0].shape[0]
    coords = np.array([w.ravel() for w in mats]).T
    groups: dict[tuple, list[tuple[int, complex]]] = {}
    for k in range(m * m):
        row = coords[k]
        nz = np.flatnonzero(np.abs(row) > tol)
        if nz.size == 0:
            continue
        lead = row[nz[0]]
        key = tuple(np.round(row / lead, 8)) + (int(nz[0]),)
        groups.setdefault(key, []).append((k, lead))
    out = []
    for members in groups.values():
        mat = np.zeros(m * m, dtype=complex)
        ref = members[0][1]
        for k, lead in members:
            mat[k] = lead / ref
        mat = canonical_matrix(mat.reshape(m, m))
        r, c = divmod(members[0][0], m)
        out.append(WOperator((c, r), mat, 1, None, f"maps label {c} to label {r}"))
    if len(out) != len(mats):
        raise ValueError("the matrix space has no disjoint-support basis")
    stacked = np.array([w.matrix.ravel() for w in out]).T
    if np.linalg.matrix_rank(np.hstack([stacked, coords]), tol=1e-8) != len(mats):
        raise ValueError("disjoint-support pieces do not span the matrix space")
    out.sort(key=lambda w: (w.label[1], w.label[0]))
    return out


def _phase_equal(a, b, tol):
    """Whether ``a = z b`` for some unit complex ``z``."""
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na < tol and nb < tol:
        return True
    if abs(na - nb) > tol * max(1.0, na):
        return False
    z = np.vdot(b, a) / (nb * nb)
    return bool(abs(abs(z) - 1) < tol and np.linalg.norm(a - z * b) < tol * max(1.0, na))


@dataclass
class FusionTable:
    labels: list
    coefficients: np.ndarray
    commutes: np.ndarray
    phases: dict = field(default_factory=dict)
    vacuum: object = None
    names: list = field(default_factory=list)

    def index(self, label) -> int:
        return self.labels.index(tuple(label))

    def product(self, a, b) -> dict:
        """Outcome label to coefficient for ``a x b``, zero coefficients omitted."""
        row = self.coefficients[self.index(a), self.index(b)]
        return {self.labels[c]: int(row[c]) for c in np.flatnonzero(row)}

    @property
    def is_abelian(self) -> bool:
        single = np.all(self.coefficients.sum(axis=2) == 1) and np.all(self.coefficients <= 1)
        return bool(single and self.commutes.all())

    def as_dict(self) -> dict:
        return {(a, b): self.product(a, b) for a in self.labels for b in self.labels}

    def to_json(self) -> dict:
        products = {}
        for i, a in enumerate(self.labels):
            for k, b in enumerate(self.labels):
                row = self.coefficients[i, k]
                products[f"{self.names[i]},{self.names[k]}"] = [
                    {"c": self.names[c], "coeff": int(row[c])} for c in np.flatnonzero(row)
                ]
        return {"labels": list(self.names), "products": products, "abelian": self.is_abelian}


def fusion_table(ws, vacuum=None, tol=1e-6) -> FusionTable:
    """Expand every product ``W_a W_b`` over the set and read off fusion coefficients.

    Each product is solved by least squares over the span of ``ws``; one overall
    phase per product is divided out (representatives are only fixed up to phase)
    and the remaining coefficients must be non-negative integers. All failing
    pairs are collected before raising.
    """
    ws = list(ws)
    if not ws:
        raise ValueError("empty W set")
    n = len(ws)
    labels = [tuple(w.label) for w in ws]
    names = [w.name for w in ws]
    basis = np.array([w.matrix.ravel() for w in ws]).T
    if np.linalg.matrix_rank(basis, tol=1e-9) < n:
        raise ValueError("W matrices are linearly dependent")
    coeffs = np.zeros((n, n, n), dtype=np.int64)
    commutes = np.zeros((n, n), dtype=bool)
    phases = {}
    bad_closed, bad_integer = [], []
    for i, wa in enumerate(ws):
        for k, wb in enumerate(ws):
            prod = wa.matrix @ wb.matrix
            commutes[i, k] = _phase_equal(prod, wb.matrix @ wa.matrix, 1e-9)
            c, *_ = np.linalg.lstsq(basis, prod.ravel(), rcond=None)
            resid = np.linalg.norm(basis @ c - prod.ravel())
            if resid > tol * max(1.0, np.linalg.norm(prod)):
                bad_closed.append((labels[i], labels[k], f"residual {resid:.3g} outside span"))
                continue
            nz = np.flatnonzero(np.abs(c) > tol)
            if nz.size == 0:
                continue
            phase = c[nz[0]] / abs(c[nz[0]])
            real = c / phase
            snapped = np.round(real.real)
            if (np.any(np.abs(real.imag) > tol) or np.any(np.abs(real.real - snapped) > tol)
                    or np.any(snapped < 0)):
                bad_integer.append((labels[i], labels[k], f"coefficients {np.round(real, 6)}"))
                continue
            coeffs[i, k] = snapped.astype(np.int64)
            if abs(phase - 1) > tol:
                phases[(labels[i], labels[k])] = complex(phase)
    failures = bad_closed + bad_integer
    if failures:
        noncomm = [(a, b) for a, b, _ in failures
                   if not commutes[labels.index(a), labels.index(b)]]
        listing = "; ".join(f"{a}x{b}: {why}" for a, b, why in failures)
        cls = NotClosed if bad_closed else NonIntegerCoefficients
        raise cls(f"W set does not close: {listing}", failures, noncomm)
    table = FusionTable(labels, coeffs, commutes, phases, None, names)
    table.vacuum = _find_vacuum(table, ws, vacuum)
    return table


def _find_vacuum(table, ws, vacuum):
    n = len(ws)
    eye = np.eye(n, dtype=np.int64)

    def acts_as_identity(v):
        return (np.array_equal(table.coefficients[v], eye)
                and np.array_equal(table.coefficients[:, v], eye))

    if vacuum is not None:
        v = table.index(vacuum)
        if not acts_as_identity(v):
            raise ValueError(f"designated vacuum {vacuum} does not act as fusion identity")
        return tuple(vacuum)
    for v in range(n):
        if acts_as_identity(v):
            return table.labels[v]
    return None


def detect_nonabelian(table: FusionTable) -> bool:
    """Some product has a coefficient above 1 or more than one outcome."""
    return bool(np.any(table.coefficients > 1) or np.any(table.coefficients.sum(axis=2) > 1))


def compare_tables(table: FusionTable, reference: dict) -> list[dict]:
    """Pairs where a reference listing disagrees with the derived table."""
    out = []
    for (a, b), expected in reference.items():
        got = table.product(a, b)
        if got != expected:
            out.append({"pair": (a, b), "reference": expected, "derived": got})
    return out


@dataclass
class CondensationReport:
    overlaps: list
    is_vacuum: bool
    norm: float


class ZeroResult(ValueError):
    pass


def condense(space: ModelSpace, source_vacuum, w, vacua, excluded_vertices=(),
             tol=1e-9) -> CondensationReport:
    """Apply one matter operator on every vertex and compare with the given vacuum rays.

    ``vacua`` is a list of unit vectors; overlaps are ``|<vacuum|result>|^2`` for
    the normalized result, which counts as a vacuum when the ground-space
    projector leaves it unchanged.
    """
    matrix = w.matrix if isinstance(w, WOperator) else np.asarray(w)
    out = matter_operator_everywhere(space, matrix)(source_vacuum)
    nrm = float(np.linalg.norm(out))
    if nrm < 1e-12:
        raise ZeroResult("the operator annihilates the source vacuum")
    out = out / nrm
    overlaps = [float(abs(np.vdot(v, out)) ** 2) for v in vacua]
    proj = global_projector(space, excluded_vertices)
    return CondensationReport(overlaps, bool(np.linalg.norm(proj(out) - out) < tol), nrm)
