"""Named matter actions, hand-built W operator sets and their reference fusion tables."""

from __future__ import annotations

import numpy as np

from .cyclic import MatterAction, make_action

I2 = np.eye(2)
SX = np.array([[0, 1], [1, 0]])
SZ = np.array([[1, 0], [0, -1]])
# clock times shift, the real stand-in for sigma-y built from Hamiltonian ingredients
ZX = SZ @ SX
Z2 = np.zeros((2, 2))

ACTIONS = {
    "D2Z2": (2, [1, 0]),
    "D3Z2": (2, [1, 0, 2]),
    "D4Z2-I": (2, [1, 0, 3, 2]),
    "D4Z2-II": (2, [1, 0, 2, 3]),
    "D3Z3": (3, [1, 2, 0]),
    "trivial": (2, [0]),
}


def action(name: str) -> MatterAction:
    n, perm = ACTIONS[name]
    return make_action(n, perm)


def _blocks(a, b, c, d):
    return np.block([[a, b], [c, d]])


def w_set(name: str) -> list[tuple[tuple, np.ndarray]]:
    """``(label, matrix)`` pairs for a named hand-built set."""
    if name == "D2Z2":
        return [((1, 1), I2), ((1, 2), SX), ((2, 1), SZ), ((2, 2), ZX)]
    if name == "D3Z2":
        return [
            ((1, 1), np.eye(3)),
            ((1, 2), np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]])),
            ((1, 3), np.array([[0, 0, 1], [0, 0, 1], [1, 1, 1]])),
        ]
    if name == "D3Z2-with-electric":
        return w_set("D3Z2") + [((2, 1), np.diag([1, -1, 0]))]
    if name == "D3Z2-alt":
        return [
            ((1, 1), np.diag([1, 1, 0])),
            ((1, 2), np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]])),
            ((2, 1), np.diag([1, -1, 0])),
            ((2, 2), np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])),
        ]
    if name == "D4Z2-I":
        return [
            ((1, 1), np.eye(4)),
            ((1, 2), _blocks(Z2, SX, SX, Z2)),
            ((1, 3), _blocks(Z2, I2, I2, Z2)),
            ((1, 4), _blocks(SX, Z2, Z2, SX)),
            ((2, 1), _blocks(SZ, Z2, Z2, SZ)),
            ((2, 2), _blocks(Z2, ZX, ZX, Z2)),
            ((2, 3), _blocks(Z2, SZ, SZ, Z2)),
            ((2, 4), _blocks(ZX, Z2, Z2, ZX)),
        ]
    if name == "D4Z2-II":
        return [
            ((1, 1, 1), np.eye(4)),
            ((1, 2, 1), _blocks(SX, Z2, Z2, I2)),
            ((1, 1, 2), _blocks(I2, Z2, Z2, SX)),
            ((1, 2, 2), _blocks(SX, Z2, Z2, SX)),
            ((1, 3, 3), _blocks(Z2, I2 + SX, I2 + SX, Z2)),
        ]
    if name == "D4Z2-II-frame":
        # (1;1,1) + (1;2,2) = (1;2,1) + (1;1,2), so the full list has no unique
        # expansion; this is its largest independent subset closed under products.
        keep = {(1, 1, 1), (1, 2, 2), (1, 3, 3)}
        return [(lab, m) for lab, m in w_set("D4Z2-II") if lab in keep]
    raise KeyError(name)


# Which vacuum labels each refined operator disturbs (by representative matter label).
D4Z2_II_NOTES = {
    (1, 1, 1): "acts trivially on every vacuum",
    (1, 2, 1): "swaps labels 0 and 1; excites only the vacuum seeded at 0",
    (1, 1, 2): "swaps labels 2 and 3; excites the vacua seeded at 2 and 3",
    (1, 2, 2): "swaps both pairs; excites every vacuum",
    (1, 3, 3): "exchanges the pair {0,1} with {2,3}; links the vacuum at 0 to those at 2 and 3",
}


def _group_table(labels, mult):
    return {(a, b): {mult(a, b): 1} for a in labels for b in labels}


def _z2_pair(a, b):
    return ((a[0] + b[0]) % 2 + 1, (a[1] + b[1]) % 2 + 1)


REFERENCE_TABLES = {
    "D2Z2": _group_table([(1, 1), (1, 2), (2, 1), (2, 2)], _z2_pair),
    "D3Z2": {
        ((1, 1), (1, 1)): {(1, 1): 1},
        ((1, 1), (1, 2)): {(1, 2): 1},
        ((1, 1), (1, 3)): {(1, 3): 1},
        ((1, 2), (1, 1)): {(1, 2): 1},
        ((1, 2), (1, 2)): {(1, 1): 1},
        ((1, 2), (1, 3)): {(1, 3): 1},
        ((1, 3), (1, 1)): {(1, 3): 1},
        ((1, 3), (1, 2)): {(1, 3): 1},
        ((1, 3), (1, 3)): {(1, 1): 1, (1, 2): 1, (1, 3): 1},
    },
}

_D4_COLS = [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3), (2, 4)]
_D4_ROWS = [
    [(1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (1, 8)],
    [(1, 2), (1, 1), (1, 4), (1, 3), (2, 2), (2, 1), (2, 4), (1, 3)],
    [(1, 3), (1, 4), (1, 1), (1, 2), (2, 3), (2, 4), (2, 1), (2, 2)],
    [(1, 4), (1, 3), (1, 2), (1, 1), (2, 4), (2, 3), (2, 2), (2, 1)],
    [(2, 1), (2, 2), (2, 3), (2, 4), (1, 1), (1, 2), (1, 3), (1, 4)],
    [(2, 2), (2, 1), (2, 4), (2, 3), (1, 2), (1, 1), (1, 4), (1, 3)],
    [(2, 3), (2, 4), (2, 1), (2, 2), (1, 3), (1, 4), (1, 1), (1, 2)],
    [(2, 4), (2, 3), (2, 2), (2, 1), (1, 4), (1, 3), (1, 2), (1, 1)],
]
# Kept verbatim, including entries that fall outside the label set.
REFERENCE_TABLES["D4Z2-I"] = {
    (a, b): {_D4_ROWS[i][k]: 1}
    for i, a in enumerate(_D4_COLS)
    for k, b in enumerate(_D4_COLS)
}
