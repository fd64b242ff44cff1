"""Infection processes on a box grid: phases, steps, closures.

Vertices live on [n1] x ... x [nd]. A hyperedge is an axis-aligned product
with exactly r index sets of size t; a vertex gets infected when some
hyperedge contains it and every other vertex of that hyperedge is already
infected.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from boxperc import (
    CellSet,
    GridShape,
    Params,
    all_edges,
    full_form,
    infecting_edge,
    one_phase,
    percolates,
    phase_step,
    step_by_step,
)
from boxperc.render import ascii_grid, ascii_stages

shape = GridShape((4, 5))
params = Params(2, 2)  # hyperedges are the corner quadruples of rectangles

print(f"grid {shape.dims}, t={params.t}, r={params.r}:", len(all_edges(shape, params)),
      "hyperedges")

a = CellSet.from_cells(shape, [(1, 1), (1, 4), (2, 2), (3, 1), (3, 2), (4, 5), (1, 5)])
print("\ninitial set:")
print(ascii_grid(a))

# A single phase adds every vertex that currently has an infecting edge.
print("after one phase:")
print(ascii_grid(phase_step(a, params)))

closed, trace = full_form(a, params)
print(f"the closure is reached after {trace.f} phases; percolates: {percolates(a, params)}")
print(ascii_stages(list(trace.phases)))

# Step-by-step infection reaches the same closure no matter the order.
lex = step_by_step(a, params)
print("lexicographic step order:", [v for v, _ in lex.steps])
for seed in (1, 2, 3):
    rnd = step_by_step(a, params, seed=seed)
    assert rnd.terminal == closed
    print(f"seed {seed} step order:   ", [v for v, _ in rnd.steps])

# The witnessing edge of the first step, in wire form.
v, e = lex.steps[0]
print(f"\nfirst infected vertex {v} via edge {e.sets}")
print("that edge was the least infecting edge:", infecting_edge(a, v, params) == e)

print("one_phase means the first phase already covers everything:",
      one_phase(a, params))
