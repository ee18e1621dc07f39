"""Magnetic strings cost energy per crossed edge, electric strings do not.

A shift string applied to a vacuum moves matter-free flux across edges. Every
crossed edge now fails its comparator term, so the cost grows with length.
Run: python3 demos/confinement.py
"""

import numpy as np

from qdm.catalog import action
from qdm.cells import torus_grid
from qdm.excitations import apply_string, confinement_scan, find_dual_path, scan_csv
from qdm.space import ModelSpace
from qdm.spectrum import vacuum_state, violation_profile

space = ModelSpace(torus_grid(2, 3), action("D2Z2"))
vac = vacuum_state(space, 0)
print(f"torus 2x3, dimension {space.dim}")

print(scan_csv(confinement_scan(space, vac, range(1, 6))))
print("closed loops around the torus:")
print(scan_csv(confinement_scan(space, vac, [2, 3], closed=True)))

for L in (1, 3, 5):
    s = find_dual_path(space.complex2, L)
    v, f, e = violation_profile(space, apply_string(space, vac, s, 1))
    print(f"L={L}: faces {f:.0f}, edges {e:.0f}, vertices {v:.0f}  (edges crossed: {s.edges})")

# the same string without matter (one matter level) costs only the two end faces
plain = ModelSpace(torus_grid(2, 3), action("trivial"))
pv = vacuum_state(plain, 0)
s = find_dual_path(plain.complex2, 4)
out = apply_string(plain, pv, s, 1)
print("\nwithout matter, L=4 profile:", np.round(violation_profile(plain, out), 6) + 0.0)
