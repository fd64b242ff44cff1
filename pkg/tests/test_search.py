import math
from itertools import combinations

import pytest

from boxperc.constructions import l_set, m_formula
from boxperc.engine import full_form, one_phase, percolates
from boxperc.lattice import CellSet, GridShape, Params, cell_count
from boxperc.search import (
    colex_combinations,
    min_one_phase_size,
    min_percolating_size,
    random_one_phase_set,
    random_percolating_set,
    shift_reach,
)
from boxperc.transforms import shift

P22 = Params(2, 2)


def test_colex_order():
    got = list(colex_combinations(4, 2))
    assert got == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
    for n, k in ((5, 0), (5, 3), (6, 6)):
        combos = list(colex_combinations(n, k))
        assert len(combos) == math.comb(n, k)
        assert len(set(combos)) == len(combos)


def test_min_percolating_3x3():
    report = min_percolating_size(GridShape((3, 3)), P22)
    assert report.minimum == 5
    assert report.exact
    assert percolates(report.witness, P22)
    assert len(report.witness) == 5
    # Every cardinality below the minimum was fully enumerated.
    assert report.examined[4] == math.comb(9, 4)
    # Independent refutation: no 4-subset percolates.
    full = CellSet.full(GridShape((3, 3))).cells()
    assert not any(
        percolates(CellSet.from_cells(GridShape((3, 3)), sub), P22)
        for sub in combinations(full, 4)
    )


def test_min_percolating_small_cube():
    assert min_percolating_size(GridShape((2, 2, 2)), P22).minimum == 4
    assert min_percolating_size(GridShape((2, 2, 2)), Params(2, 1)).minimum == 1
    # With r = 3 the only hyperedge is the whole cube.
    assert min_percolating_size(GridShape((2, 2, 2)), Params(2, 3)).minimum == 7


def test_min_percolating_single_row_grid():
    # No hyperedges exist, so only the full row percolates.
    report = min_percolating_size(GridShape((1, 3)), P22)
    assert report.minimum == 3
    assert report.witness == CellSet.full(GridShape((1, 3)))


def test_min_matches_formula_on_matrix():
    for dims, t, r in (((2, 4), 2, 2), ((3, 4), 2, 2), ((3, 3), 3, 2)):
        shape, params = GridShape(dims), Params(t, r)
        report = min_percolating_size(shape, params)
        assert report.minimum == m_formula(shape, params).total


def test_budget_exhaustion_flags_report():
    report = min_percolating_size(GridShape((4, 4)), P22, budget=40)
    assert not report.exact
    assert report.minimum is None
    assert report.witness is None
    assert report.checks == 40


def test_dedup_mode_agrees_with_exact():
    for dims, t, r in (((3, 3), 2, 2), ((2, 3), 2, 2), ((2, 2, 2), 2, 2)):
        shape, params = GridShape(dims), Params(t, r)
        exact = min_percolating_size(shape, params)
        dedup = min_percolating_size(shape, params, mode="dedup")
        assert dedup.minimum == exact.minimum
        assert dedup.dedup and not exact.dedup
        # Dedup skips permutation twins, so it checks strictly fewer sets.
        assert dedup.checks < exact.checks
        assert percolates(dedup.witness, params)


def test_min_one_phase_values():
    assert min_one_phase_size(GridShape((3, 3)), Params(3, 2)).minimum == 8
    assert min_one_phase_size(GridShape((3, 4)), Params(3, 2)).minimum == 10
    # Grid with n2 = t: (t-1) full rows plus t-1 cells in every other row.
    t = 3
    n1 = 4
    expected = (t - 1) * t + (n1 - t + 1) * (t - 1)
    assert min_one_phase_size(GridShape((n1, t)), Params(t, 2)).minimum == expected
    report = min_one_phase_size(GridShape((2, 2)), P22)
    assert report.minimum <= cell_count(GridShape((2, 2)))
    assert one_phase(report.witness, P22)


def test_random_percolating_set_properties():
    shape = GridShape((4, 4))
    for seed in (0, 1, 2, 3):
        a = random_percolating_set(shape, P22, seed)
        assert percolates(a, P22)
        assert len(a) >= 4 + 4 - 1
        # Deletion-minimal: removing any single cell breaks percolation.
        for v in a.cells():
            assert not percolates(a.without_cells([v]), P22)
    assert random_percolating_set(shape, P22, 9) == random_percolating_set(shape, P22, 9)


def test_random_one_phase_set_properties():
    shape = GridShape((4, 4))
    for seed in range(4):
        a = random_one_phase_set(shape, Params(3, 2), seed)
        assert one_phase(a, Params(3, 2))


def test_shift_reach_trivial_cases():
    shape = GridShape((3, 3))
    seed = l_set(shape, P22)
    res = shift_reach(seed, P22, "contains-l")
    assert res.status == "found" and res.records == ()
    res = shift_reach(seed, P22, "contains-l", max_states=0)
    assert res.status == "inconclusive"
    with pytest.raises(ValueError):
        shift_reach(CellSet.empty(shape), P22, "contains-l")
    with pytest.raises(ValueError):
        shift_reach(seed, P22, "no-such-goal")


def test_shift_reach_finds_l_via_maximal_shifts():
    shape = GridShape((3, 3))
    start = random_percolating_set(shape, P22, 8)
    res = shift_reach(start, P22, "contains-l", max_ops=32, max_states=20000,
                      maximal_only=True)
    assert res.status == "found"
    # Replaying the records reproduces a goal state and never changes the
    # closure along the way.
    current = start
    closed, _ = full_form(start, P22)
    for rec in res.records:
        current, applied = shift(current, rec.edge, rec.removed)
        assert applied.infected == rec.infected
        assert full_form(current, P22)[0] == closed
    assert l_set(shape, P22).is_subset(current)


def test_shift_reach_one_phase_goal():
    shape = GridShape((3, 3))
    start = random_percolating_set(shape, P22, 14)
    res = shift_reach(start, P22, "one-phase", max_ops=32, max_states=20000)
    assert res.status == "found"
    current = start
    for rec in res.records:
        current, _ = shift(current, rec.edge, rec.removed)
    assert one_phase(current, P22)


def test_shift_reach_exhausts_to_unreachable():
    # On the 2x2x2 grid at t = r = 2 the one-phase minimum exceeds the
    # percolation minimum, and shifts preserve size, so a minimum
    # percolating set can never reach a one-phase state. The component is
    # small enough to exhaust, giving a definite answer.
    shape = GridShape((2, 2, 2))
    min_perc = min_percolating_size(shape, P22)
    min_phase = min_one_phase_size(shape, P22)
    assert min_phase.minimum > min_perc.minimum
    res = shift_reach(min_perc.witness, P22, "one-phase",
                      max_ops=1000, max_states=100000)
    assert res.status == "unreachable"


def test_shift_reach_inconclusive_when_bounded():
    shape = GridShape((3, 3))
    start = random_percolating_set(shape, P22, 21)
    if l_set(shape, P22).is_subset(start):
        start, _ = shift(start, *_first_shift(start))
    res = shift_reach(start, P22, "contains-l", max_ops=1, max_states=2)
    assert res.status in ("inconclusive", "found")


def _first_shift(a):
    from boxperc.engine import all_edges
    from boxperc.lattice import edge_vertices

    for e in all_edges(a.shape, P22):
        missing = [v for v in edge_vertices(e) if v not in a]
        if len(missing) == 1:
            for w in edge_vertices(e):
                if w != missing[0]:
                    return e, w
    raise AssertionError("no shift available")
