"""Set surgeries: slice unions and removals, row repacking, shift moves.

Slice union and slice removal shrink the grid by one along an axis while
preserving percolation under the documented hypotheses. A shift move swaps
the missing vertex of an infecting edge in and one of its infected edge
mates out; it never changes the closure. Repeated maximal shifts (always
evicting the edge corner of maximal coordinate sum) terminate, and at
t = r = 2 the terminal sets have enough structure that their closure can
be read off a partition of the row projections.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .engine import _edge_table, infecting_edge, one_phase
from .lattice import (
    CellSet,
    Edge,
    GridShape,
    Params,
    Vertex,
    check_vertex,
    edge_vertices,
    linear_index,
    p_slice,
    permute_slices,
)


@dataclass(frozen=True)
class ShiftRecord:
    """One applied shift: `infected` entered the set, `removed` left it."""

    edge: Edge
    infected: Vertex
    removed: Vertex
    maximal: bool


@dataclass(frozen=True)
class PRowDecomposition:
    """Partition of row indices by overlapping row projections.

    classes[i] lists the 1-based row indices of class i (ascending, classes
    ordered by their least row); representatives[i] is the projection of
    the class member with the lowest row index, which contains the union of
    the whole class when the input is maximal-shift stable.
    """

    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[tuple[int, ...], ...]
    rep_rows: tuple[int, ...]


def union_slices(a: CellSet, axis: int, m1: int, m2: int) -> CellSet:
    """Replace slices m1 and m2 along `axis` by one slice carrying the union
    of their projections; the grid loses one layer along that axis.

    The union lands at position min(m1, m2); later slices shift down one.
    """
    n = a.shape.dims[axis - 1]
    if m1 == m2:
        raise ValueError("need two distinct slices to merge")
    for m in (m1, m2):
        if not 1 <= m <= n:
            raise ValueError(f"slice index {m} out of range on axis {axis}")
    lo, hi = sorted((m1, m2))
    dims = list(a.shape.dims)
    dims[axis - 1] = n - 1
    reduced = GridShape(tuple(dims))
    bits = 0
    for v in a.cells():
        c = v[axis - 1]
        if c == hi:
            c = lo
        elif c > hi:
            c -= 1
        w = v[: axis - 1] + (c,) + v[axis:]
        bits |= 1 << linear_index(reduced, w)
    return CellSet(reduced, bits)


def remove_slice(a: CellSet, axis: int, m: int) -> CellSet:
    """Delete slice m along `axis`; later slices shift down one."""
    n = a.shape.dims[axis - 1]
    if not 1 <= m <= n:
        raise ValueError(f"slice index {m} out of range on axis {axis}")
    if n == 1:
        raise ValueError("cannot remove the only slice of an axis")
    dims = list(a.shape.dims)
    dims[axis - 1] = n - 1
    reduced = GridShape(tuple(dims))
    bits = 0
    for v in a.cells():
        c = v[axis - 1]
        if c == m:
            continue
        if c > m:
            c -= 1
        w = v[: axis - 1] + (c,) + v[axis:]
        bits |= 1 << linear_index(reduced, w)
    return CellSet(reduced, bits)


def _prow(a: CellSet, row: int) -> set[int]:
    return {v[0] for v in p_slice(a, 1, row).cells()}


def repack_first_column(a: CellSet, params: Params) -> CellSet:
    """Per-row repack: where a row contains column 1 but fewer than t of the
    first t columns, move its column-1 cell to the least free column in the
    first t. Row sizes are preserved."""
    if a.shape.d != 2:
        raise ValueError("repack_first_column needs a 2-dimensional set")
    t = params.t
    if a.shape.dims[1] < t:
        raise ValueError(f"repack needs at least t={t} columns, got {a.shape.dims[1]}")
    n1 = a.shape.dims[0]
    cells: list[Vertex] = []
    for i in range(1, n1 + 1):
        row = _prow(a, i)
        prefix = row & set(range(1, t + 1))
        if 1 in row and len(prefix) < t:
            target = min(set(range(1, t + 1)) - row)
            row = (row - {1}) | {target}
        cells.extend((i, j) for j in row)
    return CellSet.from_cells(a.shape, cells)


@dataclass(frozen=True)
class BlockingAlignment:
    """Result of relabelling rows and columns around a blocked vertex."""

    aligned: CellSet
    row_order: tuple[int, ...]
    col_order: tuple[int, ...]
    vertex: Vertex
    edge: Edge


def standardize_blocking_corner(a: CellSet, params: Params) -> Optional[BlockingAlignment]:
    """Permute rows and columns so that some vertex that can only be infected
    through column 1 sits at (t, t) with infecting edge [t] x [t].

    Input must percolate in one phase. Returns None when removing column 1
    leaves a one-phase set (no blocked vertex exists). Column 1 stays the
    first column under the relabelling.
    """
    if a.shape.d != 2:
        raise ValueError("needs a 2-dimensional set")
    if not one_phase(a, params):
        raise ValueError("input must percolate in one phase")
    t = params.t
    n1, n2 = a.shape.dims
    a_minus = remove_slice(a, 2, 1)
    blocked = None
    for v in CellSet.full(a.shape).cells():
        i, j = v
        if j < 2 or v in a:
            continue
        if infecting_edge(a_minus, (i, j - 1), params) is None:
            blocked = v
            break
    if blocked is None:
        return None
    e0 = infecting_edge(a, blocked, params)
    assert e0 is not None  # one_phase guarantees an infecting edge
    rows, cols = set(e0.sets[0]), set(e0.sets[1])
    if 1 not in cols:
        raise ValueError("blocked vertex has an infecting edge avoiding column 1")
    i_v, j_v = blocked
    row_order = tuple(sorted(rows - {i_v})) + (i_v,) + tuple(sorted(set(range(1, n1 + 1)) - rows))
    col_order = (1,) + tuple(sorted(cols - {1, j_v})) + (j_v,) + tuple(
        sorted(set(range(1, n2 + 1)) - cols)
    )
    aligned = permute_slices(permute_slices(a, 1, row_order), 2, col_order)
    new_edge = Edge((tuple(range(1, t + 1)), tuple(range(1, t + 1))))
    return BlockingAlignment(aligned, row_order, col_order, (t, t), new_edge)


def _missing_vertex(a: CellSet, e: Edge) -> Vertex:
    outside = [v for v in edge_vertices(e) if v not in a]
    if len(outside) != 1:
        raise ValueError(
            f"edge {e.sets} is not an infecting edge here ({len(outside)} vertices missing)"
        )
    return outside[0]


def shift(a: CellSet, e: Edge, w) -> tuple[CellSet, ShiftRecord]:
    """Swap the missing vertex of infecting edge `e` in and member `w` out."""
    for s, n in zip(e.sets, a.shape.dims):
        if s[-1] > n:
            raise ValueError(f"edge index set {s} out of bounds for {a.shape.dims}")
    v = _missing_vertex(a, e)
    w = check_vertex(a.shape, w)
    if w == v or w not in edge_vertices(e):
        raise ValueError(f"{w} is not an infected vertex of the edge")
    moved = a.with_cells([v]).without_cells([w])
    record = ShiftRecord(e, v, w, maximal=w == e.max_corner())
    return moved, record


def is_standard_position(e: Edge, a: CellSet) -> bool:
    """True when the missing vertex of the infecting edge is the corner of
    maximal coordinate sum (so no maximal shift applies)."""
    return _missing_vertex(a, e) == e.max_corner()


def _nonstandard_candidates(a: CellSet, params: Params):
    """(missing vertex, edge) pairs for every infecting edge whose missing
    vertex is not the maximal corner, sorted by vertex then edge order."""
    edges, masks = _edge_table(a.shape, params)
    inv = ~a.bits
    out = []
    for e, m in zip(edges, masks):
        miss = m & inv
        if miss and miss & (miss - 1) == 0:
            idx = miss.bit_length() - 1
            v = _vertex_from_index(a.shape, idx)
            if v != e.max_corner():
                out.append((v, e))
    out.sort(key=lambda ve: (ve[0], ve[1].sort_key()))
    return out


def _vertex_from_index(shape: GridShape, idx: int) -> Vertex:
    coords = []
    for n in reversed(shape.dims):
        coords.append(idx % n + 1)
        idx //= n
    return tuple(reversed(coords))


def normalize_max_shifts(
    a: CellSet, params: Params, seed: Optional[int] = None
) -> tuple[CellSet, tuple[ShiftRecord, ...]]:
    """Apply maximal shifts until every infecting edge is in standard
    position. Each step evicts the maximal corner of the chosen edge, so the
    total coordinate sum strictly decreases and the loop terminates.

    With seed None the least (vertex, edge) candidate is chosen each step;
    a seeded generator picks among candidates otherwise (the terminal set
    may then differ, but is always stable).
    """
    rng = random.Random(seed) if seed is not None else None
    current = a
    records: list[ShiftRecord] = []
    while True:
        candidates = _nonstandard_candidates(current, params)
        if not candidates:
            return current, tuple(records)
        _, e = candidates[0] if rng is None else rng.choice(candidates)
        current, rec = shift(current, e, e.max_corner())
        records.append(rec)


def p_row_decomposition(a: CellSet) -> PRowDecomposition:
    """Group the rows of a 2D set by overlapping projections.

    Two rows relate when their projections intersect; classes are the
    connected components of that relation. Valid for maximal-shift stable
    sets at t = r = 2 with no empty row: there each class representative
    (the member of lowest row index) must contain the union of its class,
    and that containment is validated, naming the offending row pair on
    failure.
    """
    if a.shape.d != 2:
        raise ValueError("p_row_decomposition needs a 2-dimensional set")
    n1 = a.shape.dims[0]
    prows = {i: _prow(a, i) for i in range(1, n1 + 1)}
    for i, row in prows.items():
        if not row:
            raise ValueError(f"row {i} is empty; every row must be nonempty")
    # Connected components of the overlap graph.
    unassigned = set(prows)
    classes: list[list[int]] = []
    while unassigned:
        seed_row = min(unassigned)
        component = {seed_row}
        frontier = [seed_row]
        while frontier:
            i = frontier.pop()
            for j in list(unassigned - component):
                if prows[i] & prows[j]:
                    component.add(j)
                    frontier.append(j)
        unassigned -= component
        classes.append(sorted(component))
    classes.sort(key=lambda c: c[0])
    reps = []
    rep_rows = []
    for cls in classes:
        rep_row = cls[0]
        rep = prows[rep_row]
        for i in cls:
            if not prows[i] <= rep:
                raise ValueError(
                    f"not maximal-shift stable: row {i} is not contained in the "
                    f"representative row {rep_row}"
                )
        reps.append(tuple(sorted(rep)))
        rep_rows.append(rep_row)
    return PRowDecomposition(
        tuple(tuple(c) for c in classes), tuple(reps), tuple(rep_rows)
    )


def stable_full_form(a: CellSet) -> CellSet:
    """Closure of a maximal-shift stable 2D set (t = r = 2), read directly
    off the row decomposition: the union over classes of
    class rows x representative projection."""
    decomp = p_row_decomposition(a)
    cells = []
    for cls, rep in zip(decomp.classes, decomp.representatives):
        cells.extend((i, j) for i in cls for j in rep)
    return CellSet.from_cells(a.shape, cells)
