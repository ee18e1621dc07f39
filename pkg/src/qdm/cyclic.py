"""Cyclic gauge group, its permutation action on matter labels and the orbit analysis."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np


class OrderViolation(ValueError):
    """The generator permutation does not define an action of the cyclic group."""


@dataclass(frozen=True)
class CyclicGroup:
    order: int

    def __post_init__(self):
        if int(self.order) < 1:
            raise ValueError(f"group order must be positive, got {self.order}")

    @property
    def generator_phase(self) -> complex:
        return complex(np.exp(2j * np.pi / self.order))

    def phases(self) -> np.ndarray:
        """Powers ``omega**k`` for ``k = 0 .. N-1``."""
        return np.exp(2j * np.pi * np.arange(self.order) / self.order)


@dataclass(frozen=True)
class MatterAction:
    """Permutation action of ``Z_N`` on the matter labels ``0 .. M-1``.

    ``generator_map[j]`` is the image of label ``j`` under the group element 1.
    """

    group: CyclicGroup
    generator_map: tuple

    @property
    def matter_dim(self) -> int:
        return len(self.generator_map)

    @cached_property
    def table(self) -> np.ndarray:
        """Integer array ``t`` with ``t[g, a]`` the image of ``a`` under ``g``."""
        n, m = self.group.order, self.matter_dim
        out = np.empty((n, m), dtype=np.int64)
        out[0] = np.arange(m)
        gen = np.asarray(self.generator_map, dtype=np.int64)
        for g in range(1, n):
            out[g] = gen[out[g - 1]]
        return out

    def image(self, g: int, a: int) -> int:
        return int(self.table[g % self.group.order, a])


def make_action(N: int, perm) -> MatterAction:
    """Validate ``perm`` as the generator image and build the action of ``Z_N``."""
    group = CyclicGroup(int(N))
    perm = tuple(int(p) for p in perm)
    m = len(perm)
    if m < 1 or sorted(perm) != list(range(m)):
        raise ValueError(f"generator map {list(perm)} is not a permutation of 0..{m - 1}")
    action = MatterAction(group, perm)
    gen = np.asarray(perm)
    if not np.array_equal(gen[action.table[-1]], np.arange(m)):
        raise OrderViolation(
            f"permutation {list(perm)} composed {N} times is not the identity"
        )
    return action


def theta_matrix(action: MatterAction, g: int) -> np.ndarray:
    """Permutation matrix with entry ``(c, a) = 1`` iff ``g`` sends ``a`` to ``c``."""
    if not 0 <= g < action.group.order:
        raise ValueError(f"group element {g} outside 0..{action.group.order - 1}")
    m = action.matter_dim
    out = np.zeros((m, m), dtype=np.int64)
    out[action.table[g], np.arange(m)] = 1
    return out


@dataclass(frozen=True)
class OrbitDecomposition:
    orbits: tuple
    nontrivial_count: int
    fixed_count: int

    @property
    def d_alg(self) -> int:
        return self.nontrivial_count + self.fixed_count

    def representatives(self) -> list[int]:
        return [min(orb) for orb in self.orbits]

    def orbit_of(self, a: int) -> tuple:
        for orb in self.orbits:
            if a in orb:
                return orb
        raise ValueError(f"label {a} not in any orbit")


def orbit_decomposition(action: MatterAction) -> OrbitDecomposition:
    seen: set[int] = set()
    orbits = []
    for start in range(action.matter_dim):
        if start in seen:
            continue
        orb = sorted({int(x) for x in action.table[:, start]})
        seen.update(orb)
        orbits.append(tuple(orb))
    k = sum(1 for o in orbits if len(o) > 1)
    return OrbitDecomposition(tuple(orbits), k, len(orbits) - k)


def is_special_form(action: MatterAction) -> tuple[bool, int, int]:
    """Whether the action mixes a nontrivial orbit with at least one fixed label.

    Returns ``(flag, k, identity_dim)`` with ``k`` the number of nontrivial
    orbits and ``identity_dim`` the number of fixed labels.
    """
    dec = orbit_decomposition(action)
    flag = dec.nontrivial_count > 0 and dec.fixed_count > 0
    return flag, dec.nontrivial_count, dec.fixed_count


def stabilizer_order(action: MatterAction, a: int) -> int:
    """Number of group elements fixing label ``a``."""
    return int(np.count_nonzero(action.table[:, a] == a))
