"""How many ground states does each matter action leave on a torus?

Run: python3 demos/degeneracy_and_sectors.py
"""

from qdm.catalog import ACTIONS, action
from qdm.cells import torus_grid
from qdm.cyclic import orbit_decomposition, stabilizer_order
from qdm.space import ModelSpace
from qdm.spectrum import ground_degeneracy, low_spectrum, orbit_sector_degeneracy

print("action      orbits                d_alg  1x1  1x2  2x2  by sectors")
for name in ACTIONS:
    act = action(name)
    dec = orbit_decomposition(act)
    counts = [ground_degeneracy(ModelSpace(torus_grid(*s), act)) for s in ((1, 1), (1, 2), (2, 2))]
    sectors = orbit_sector_degeneracy(ModelSpace(torus_grid(2, 2), act))
    print(f"{name:<11} {str(dec.orbits):<21} {dec.d_alg:>5}  {counts[0]:>3}  {counts[1]:>3}  "
          f"{counts[2]:>3}  {sectors:>10}")

# The count never depends on the lattice size, but it is not the number of orbits
# once some label is fixed by the group. A fixed label leaves the whole gauge group
# unbroken, so that sector carries the full set of flat connections of a Z_2 toric
# code: four states on a torus, on top of one state per free orbit.
act = action("D3Z2")
for a in range(act.matter_dim):
    print(f"label {a}: stabilizer of order {stabilizer_order(act, a)}")

space = ModelSpace(torus_grid(1, 2), act)
print("\nlowest levels on the 1x2 torus (energy, multiplicity):")
for e, m in low_spectrum(space)[:4]:
    print(f"  {e:+.1f}  x{m}")
