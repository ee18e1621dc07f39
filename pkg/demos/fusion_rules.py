"""Fusion tables of single-vertex matter operators.

Run: python3 demos/fusion_rules.py
"""

from qdm.catalog import REFERENCE_TABLES, action, w_set
from qdm.cyclic import is_special_form
from qdm.fusion import (
    FusionError,
    as_w,
    compare_tables,
    detect_nonabelian,
    edge_fixture,
    fusion_table,
    orbital_basis,
    solve_w,
)


def show(table):
    for a in table.labels:
        row = []
        for b in table.labels:
            out = table.product(a, b)
            row.append(" + ".join(f"{c if c > 1 else ''}{table.names[table.index(k)]}"
                                  for k, c in out.items()))
        print(f"  {table.names[table.index(a)]:>8} | " + " ; ".join(row))


for name in ("D2Z2", "D3Z2"):
    table = fusion_table([as_w(lab, m) for lab, m in w_set(name)])
    print(f"{name}: non-Abelian={detect_nonabelian(table)}, "
          f"differences from the reference listing: {len(compare_tables(table, REFERENCE_TABLES[name]))}")
    show(table)

frame = fusion_table([as_w(lab, m) for lab, m in w_set("D4Z2-II-frame")])
print("\nD4Z2-II, independent subset:")
show(frame)

# Adding the electric charge operator to the three-label set: its product with the
# label-mixing operator leaves the span, and the two do not commute.
try:
    fusion_table([as_w(lab, m) for lab, m in w_set("D3Z2-with-electric")])
except FusionError as err:
    print(f"\n{type(err).__name__}; non-commuting pairs: {err.noncommuting}")

# Solving instead of hand-building: the operators commuting with the gauge action
# at one vertex, split into orbit-pair indicators.
print("\naction   special form   non-Abelian (solved)")
for name in ("D2Z2", "D3Z2", "D4Z2-I", "D4Z2-II", "D3Z3"):
    act = action(name)
    ws = orbital_basis(solve_w(edge_fixture(act), 1, 1, "vertex"))
    print(f"{name:<8} {str(is_special_form(act)[0]):<14} {detect_nonabelian(fusion_table(ws))}")
