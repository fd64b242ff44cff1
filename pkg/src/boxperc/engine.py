"""Infection processes: single phases, closures, step traces, predicates.

A vertex v outside the infected set A becomes infectable when some
hyperedge E satisfies E minus A = {v}. Phase iteration adds every
infectable vertex at once; step iteration adds one at a time. Both reach
the same fixpoint (the closure), which is what `full_form` computes. A set
percolates when its closure covers the whole grid.

The hyperedge list of a (shape, params) pair is enumerated once, sorted
into a documented deterministic order, converted to bitmasks, and cached.
This is a desk-scale engine: grids whose edge count would exceed
EDGE_TABLE_CAP are rejected up front.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, Optional

from .lattice import (
    CellSet,
    Edge,
    GridShape,
    Params,
    Vertex,
    cell_count,
    check_compatible,
    check_vertex,
    linear_index,
    p_slice,
)

EDGE_TABLE_CAP = 1 << 20


@dataclass(frozen=True)
class PhaseTrace:
    """Strictly growing phase sets, ending at the fixpoint."""

    phases: tuple[CellSet, ...]

    @property
    def f(self) -> int:
        """Index of the terminal phase."""
        return len(self.phases) - 1


@dataclass(frozen=True)
class StepTrace:
    """One-vertex-at-a-time infection record: (vertex, witnessing edge) pairs."""

    start: CellSet
    steps: tuple[tuple[Vertex, Edge], ...]

    @property
    def terminal(self) -> CellSet:
        return self.start.with_cells(v for v, _ in self.steps)


def _count_edges(shape: GridShape, params: Params) -> int:
    total = 0
    for axes in combinations(range(shape.d), params.r):
        term = 1
        for i in range(shape.d):
            n = shape.dims[i]
            term *= math.comb(n, params.t) if i in axes else n
        total += term
    return total


@lru_cache(maxsize=256)
def _edge_table(shape: GridShape, params: Params) -> tuple[tuple[Edge, ...], tuple[int, ...]]:
    check_compatible(shape, params)
    if _count_edges(shape, params) > EDGE_TABLE_CAP:
        raise ValueError(
            f"shape {shape.dims} with t={params.t}, r={params.r} has more than "
            f"{EDGE_TABLE_CAP} hyperedges; beyond the desk-scale engine"
        )
    edges = []
    for axes in combinations(range(shape.d), params.r):
        options = []
        for i in range(shape.d):
            n = shape.dims[i]
            if i in axes:
                options.append(list(combinations(range(1, n + 1), params.t)))
            else:
                options.append([(v,) for v in range(1, n + 1)])
        for sets in product(*options):
            edges.append(Edge(sets))
    edges.sort(key=Edge.sort_key)
    masks = tuple(
        sum(1 << linear_index(shape, v) for v in product(*e.sets)) for e in edges
    )
    return tuple(edges), masks


def all_edges(shape: GridShape, params: Params) -> tuple[Edge, ...]:
    """Every hyperedge of the grid, in the deterministic sort order."""
    return _edge_table(shape, params)[0]


def _scan_additions(bits: int, masks) -> int:
    """Union of vertices with an infecting edge relative to `bits`."""
    add = 0
    for m in masks:
        miss = m & ~bits
        if miss and miss & (miss - 1) == 0:
            add |= miss
    return add


def _closure_bits(bits: int, masks, full: int) -> int:
    scan = masks
    while True:
        add = _scan_additions(bits, scan)
        if not add:
            return bits
        bits |= add
        if bits == full:
            return bits
        # Only edges that gained cells can change their missing count.
        scan = [m for m in masks if m & add]


def infecting_edge(a: CellSet, v, params: Params) -> Optional[Edge]:
    """The least edge whose only vertex outside `a` is v, or None.

    Least means first in the documented edge order (varying axes ascending,
    then the varying value tuples, then the fixed coordinates). Raises if v
    is already a member.
    """
    v = check_vertex(a.shape, v)
    vbit = 1 << linear_index(a.shape, v)
    if a.bits & vbit:
        raise ValueError(f"vertex {v} is already infected")
    edges, masks = _edge_table(a.shape, params)
    inv = ~a.bits
    for e, m in zip(edges, masks):
        if m & vbit and m & inv == vbit:
            return e
    return None


def phase_step(a: CellSet, params: Params) -> CellSet:
    """One synchronous round: add every vertex that has an infecting edge."""
    _, masks = _edge_table(a.shape, params)
    return CellSet(a.shape, a.bits | _scan_additions(a.bits, masks))


def full_form(a: CellSet, params: Params) -> tuple[CellSet, PhaseTrace]:
    """Iterate phases to the fixpoint; returns (closure, trace)."""
    _, masks = _edge_table(a.shape, params)
    bits = a.bits
    phases = [a]
    scan = masks
    while True:
        add = _scan_additions(bits, scan)
        if not add:
            break
        bits |= add
        phases.append(CellSet(a.shape, bits))
        scan = [m for m in masks if m & add]
    return phases[-1], PhaseTrace(tuple(phases))


def percolates(a: CellSet, params: Params) -> bool:
    """True when the closure of `a` covers the whole grid."""
    _, masks = _edge_table(a.shape, params)
    full = (1 << cell_count(a.shape)) - 1
    return _closure_bits(a.bits, masks, full) == full


def one_phase(a: CellSet, params: Params) -> bool:
    """True when a single phase already covers the grid: every vertex
    outside `a` has an infecting edge within `a` itself."""
    _, masks = _edge_table(a.shape, params)
    full = (1 << cell_count(a.shape)) - 1
    return a.bits | _scan_additions(a.bits, masks) == full


def step_by_step(a: CellSet, params: Params, seed: Optional[int] = None) -> StepTrace:
    """Infect one vertex at a time until none is infectable.

    With seed None the lexicographically least infectable vertex is chosen
    each step; with an integer seed the choice is uniform under a seeded
    generator. The terminal set never depends on the choices.
    """
    edges, masks = _edge_table(a.shape, params)
    rng = random.Random(seed) if seed is not None else None
    bits = a.bits
    steps: list[tuple[Vertex, Edge]] = []
    while True:
        add = _scan_additions(bits, masks)
        if not add:
            break
        choices = list(_iter_bits(add))
        idx = choices[0] if rng is None else rng.choice(choices)
        vbit = 1 << idx
        inv = ~bits
        witness = None
        for e, m in zip(edges, masks):
            if m & vbit and m & inv == vbit:
                witness = e
                break
        v = _vertex_of(a.shape, idx)
        steps.append((v, witness))
        bits |= vbit
    return StepTrace(a, tuple(steps))


def _iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def _vertex_of(shape: GridShape, idx: int) -> Vertex:
    coords = []
    for n in reversed(shape.dims):
        coords.append(idx % n + 1)
        idx //= n
    return tuple(reversed(coords))


def rectangle_blocks(a: CellSet) -> Optional[list[tuple[tuple[int, ...], tuple[int, ...]]]]:
    """Decompose a 2D set into disjoint full combinatorial rectangles.

    Returns [(row_indices, column_indices), ...] when the set is exactly a
    union of products I x J with the I pairwise disjoint and the J pairwise
    disjoint, else None. Closures of 2D sets at t = r = 2 always decompose
    this way; arbitrary sets generally do not.
    """
    if a.shape.d != 2:
        raise ValueError("rectangle_blocks needs a 2-dimensional set")
    n1 = a.shape.dims[0]
    rows: dict[tuple[int, ...], list[int]] = {}
    for i in range(1, n1 + 1):
        pattern = tuple(v[0] for v in p_slice(a, 1, i).cells())
        if pattern:
            rows.setdefault(pattern, []).append(i)
    patterns = list(rows)
    for p, q in combinations(patterns, 2):
        if set(p) & set(q):
            return None
    return [(tuple(rows[p]), p) for p in sorted(patterns)]
