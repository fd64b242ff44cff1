"""Set surgeries: slice unions, thin-row removal, shifts, normal forms."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from boxperc import (
    CellSet,
    GridShape,
    Params,
    full_form,
    normalize_max_shifts,
    p_row_decomposition,
    percolates,
    random_percolating_set,
    remove_slice,
    repack_first_column,
    shift,
    stable_full_form,
    union_slices,
)
from boxperc.lattice import slice_cells
from boxperc.render import ascii_grid

params = Params(2, 2)
shape = GridShape((4, 4))

a = random_percolating_set(shape, params, seed=12)
print("a percolating set:")
print(ascii_grid(a))

# Merging two slices keeps percolation (t = r = 2): the merged grid is one
# row shorter and the merged row carries the union of the projections.
merged = union_slices(a, 1, 1, 2)
print(f"rows 1 and 2 merged ({len(a)} -> {len(merged)} cells), "
      f"still percolates: {percolates(merged, params)}")
print(ascii_grid(merged))

# Removing a row with exactly t-1 cells also keeps percolation.
thin = [m for m in range(1, 5) if len(slice_cells(a, 1, m)) == params.t - 1]
if thin:
    out = remove_slice(a, 1, thin[0])
    print(f"row {thin[0]} had t-1 cells; removed, percolates: "
          f"{percolates(out, params)}")

# A shift swaps the missing vertex of an infecting edge in and an infected
# edge mate out; the closure never changes.
from boxperc import all_edges
from boxperc.lattice import edge_vertices

closed, _ = full_form(a, params)
for e in all_edges(shape, params):
    missing = [v for v in edge_vertices(e) if v not in a]
    if len(missing) == 1:
        moved, rec = shift(a, e, e.max_corner())
        print(f"shift on edge {e.sets}: {rec.infected} in, {rec.removed} out "
              f"(maximal={rec.maximal}); closure unchanged: "
              f"{full_form(moved, params)[0] == closed}")
        break

# Iterating maximal shifts reaches a stable set whose first row and column
# are full; its closure can be read off the row-projection partition.
stable, records = normalize_max_shifts(a, params)
print(f"\n{len(records)} maximal shifts to the stable normal form:")
print(ascii_grid(stable))
decomp = p_row_decomposition(stable)
print("row classes:", decomp.classes, "representatives:", decomp.representatives)
print("structural closure equals engine closure:",
      stable_full_form(stable) == full_form(stable, params)[0])

# The per-row repack used for one-phase lower bounds: a row holding column 1
# but not the whole prefix [t] moves its first cell to the least free
# prefix column.
b = CellSet.from_cells(GridShape((3, 5)), [(1, 1), (1, 5), (2, 1), (2, 2), (3, 3)])
print("before repack:            after repack:")
left = ascii_grid(b).splitlines()
right = ascii_grid(repack_first_column(b, params)).splitlines()
for l, r in zip(left, right):
    print(f"{l}                     {r}")
