"""Mixed-radix basis of the edge and matter tensor product, plus dense state helpers.

Sites are ordered edges first, then vertices. The basis index of a configuration is
``sum_e d_e * N**e + N**E * sum_v a_v * M**v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .cells import CellComplex2
from .cyclic import CyclicGroup, MatterAction

DEFAULT_DIM_CAP = 2**27


class RadixViolation(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class DimensionCap(RuntimeError):
    pass


def _checked_dim(n: int, e: int, m: int, v: int, cap: int) -> int:
    dim = 1
    for radix, count in ((n, e), (m, v)):
        for _ in range(count):
            dim *= radix
            if dim > cap:
                raise DimensionCap(
                    f"space N^E * M^V = {n}^{e} * {m}^{v} exceeds the cap of {cap}"
                )
    return dim


@dataclass(frozen=True, eq=False)
class ModelSpace:
    complex2: CellComplex2
    action: MatterAction
    dim_cap: int = DEFAULT_DIM_CAP
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        _checked_dim(self.N, self.n_edges, self.M, self.n_vertices, self.dim_cap)

    @property
    def group(self) -> CyclicGroup:
        return self.action.group

    @property
    def N(self) -> int:
        return self.action.group.order

    @property
    def M(self) -> int:
        return self.action.matter_dim

    @property
    def n_edges(self) -> int:
        return self.complex2.n_edges

    @property
    def n_vertices(self) -> int:
        return self.complex2.vertex_count

    @property
    def n_faces(self) -> int:
        return self.complex2.n_faces

    @cached_property
    def dim(self) -> int:
        return self.N**self.n_edges * self.M**self.n_vertices

    @cached_property
    def radices(self) -> np.ndarray:
        return np.array([self.N] * self.n_edges + [self.M] * self.n_vertices, dtype=np.int64)

    @cached_property
    def weights(self) -> np.ndarray:
        w = np.ones(len(self.radices), dtype=np.int64)
        for k in range(1, len(w)):
            w[k] = w[k - 1] * self.radices[k - 1]
        return w

    def edge_site(self, e: int) -> int:
        return e

    def vertex_site(self, v: int) -> int:
        return self.n_edges + v

    def digit(self, site: int) -> np.ndarray:
        """Digit of ``site`` for every basis index (cached)."""
        key = ("digit", site)
        if key not in self._cache:
            idx = np.arange(self.dim, dtype=np.int64)
            self._cache[key] = (idx // self.weights[site]) % self.radices[site]
        return self._cache[key]

    def edge_digit(self, e: int) -> np.ndarray:
        return self.digit(e)

    def matter_digit(self, v: int) -> np.ndarray:
        return self.digit(self.n_edges + v)

    def encode(self, edge_digits, vertex_digits) -> int:
        digits = np.concatenate(
            [np.asarray(edge_digits, dtype=np.int64).ravel(),
             np.asarray(vertex_digits, dtype=np.int64).ravel()]
        )
        if len(digits) != len(self.radices):
            raise RadixViolation(
                f"expected {self.n_edges} edge and {self.n_vertices} vertex digits"
            )
        if np.any(digits < 0) or np.any(digits >= self.radices):
            raise RadixViolation(f"digits {digits.tolist()} outside radices {self.radices.tolist()}")
        return int(np.dot(digits, self.weights))

    def decode(self, index: int) -> tuple[np.ndarray, np.ndarray]:
        if not 0 <= index < self.dim:
            raise RadixViolation(f"index {index} outside 0..{self.dim - 1}")
        digits = (int(index) // self.weights) % self.radices
        return digits[: self.n_edges].copy(), digits[self.n_edges:].copy()

    def product_state(self, edge_digits, vertex_digits) -> np.ndarray:
        out = np.zeros(self.dim, dtype=complex)
        out[self.encode(edge_digits, vertex_digits)] = 1.0
        return out

    def zeros(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=complex)

    def random_vectors(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """``(dim, count)`` block of independent complex Gaussian columns."""
        out = rng.standard_normal((self.dim, count)) + 1j * rng.standard_normal((self.dim, count))
        return out / np.sqrt(2 * self.dim)


def make_space(complex2: CellComplex2, action: MatterAction, dim_cap: int = DEFAULT_DIM_CAP):
    return ModelSpace(complex2, action, dim_cap)


def inner(a: np.ndarray, b: np.ndarray) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return complex(np.vdot(a, b))


def norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def apply_local(space: ModelSpace, site: int, matrix: np.ndarray, vec: np.ndarray) -> np.ndarray:
    """Act with a single-site matrix on ``vec`` (shape ``(dim,)`` or ``(dim, k)``)."""
    vec = np.asarray(vec)
    extra = vec.shape[1:]
    k = len(space.radices)
    # C order puts the last site first, so site s sits on axis k-1-s.
    shaped = vec.reshape(tuple(space.radices[::-1]) + extra)
    axis = k - 1 - site
    moved = np.tensordot(np.asarray(matrix), shaped, axes=([1], [axis]))
    return np.moveaxis(moved, 0, axis).reshape(vec.shape)
