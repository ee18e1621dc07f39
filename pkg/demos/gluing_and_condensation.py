"""Ground states of glued tori, domain walls and vacuum-to-vacuum operators.

Run: python3 demos/gluing_and_condensation.py
"""

import numpy as np

from qdm.catalog import action, w_set
from qdm.cells import torus_grid
from qdm.fusion import condense
from qdm.gluing import glue_experiment
from qdm.space import ModelSpace
from qdm.spectrum import vacuum_state

t11, t12 = torus_grid(1, 1), torus_grid(1, 2)
for name in ("D2Z2", "D3Z2", "D4Z2-I"):
    act = action(name)
    u = glue_experiment(act, t11, t11, "union")
    w = glue_experiment(act, t12, t12, "wedge")
    x = glue_experiment(act, t12, t12, "wedge", exclude_shared=True)
    print(f"{name}: union {u.measured} (d_alg^2 = {u.predicted}), wedge {w.measured}, "
          f"wedge without the shared vertex {x.measured} / {x.measured_keeping_edges} "
          f"(dropping / keeping its edge terms)")

wedge = glue_experiment(action("D3Z2"), t12, t12, "wedge")
wall = wedge.domain_wall
print(f"\nD3Z2 wedge with labels {wall['labels']}: energy {wall['energy']:g}, "
      f"ground {wall['ground_energy']:g}, edge defects {wall['violations'][2]:g}")

space = ModelSpace(torus_grid(2, 2), action("D3Z2"))
v0, v2 = vacuum_state(space, 0), vacuum_state(space, 2)
rep = condense(space, v0, dict(w_set("D3Z2"))[(1, 3)], [v0, v2])
print(f"\nW(1,3) on every vertex: overlaps with the two vacua {np.round(rep.overlaps, 12)}")

space = ModelSpace(torus_grid(2, 2), action("D4Z2-I"))
u0, u2 = vacuum_state(space, 0), vacuum_state(space, 2)
rep = condense(space, u0, np.roll(np.eye(4), 2, axis=0), [u0, u2])
print(f"shift by two on every vertex (D4Z2-I): overlaps {np.round(rep.overlaps, 12)}")
