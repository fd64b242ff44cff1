"""Acceptance gate: every headline claim at its full stated size.

Each test prints one PASS/FAIL line (run pytest with -s to see them all).
All expectations are exact integers; the random batteries tolerate zero
violations. Runtime ceilings are asserted where stated.
"""

import time
from itertools import product

from boxperc.constructions import l_set_cardinality, m_formula
from boxperc.lattice import GridShape, Params
from boxperc.search import min_one_phase_size, min_percolating_size
from boxperc.verify import (
    closure_laws_battery,
    normal_form_battery,
    removal_battery,
    shift_invariance_battery,
    structure_battery,
    union_battery,
)

BUDGET = 10**7  # far above any enumeration below; guarantees exact completion
SEED = 2026


def _report(criterion, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}")
    assert ok, detail


def test_criterion_01_two_dimensional_minimum():
    start = time.perf_counter()
    failures = []
    for n1 in range(2, 5):
        for n2 in range(2, 5):
            got = min_percolating_size(GridShape((n1, n2)), Params(2, 2), budget=BUDGET)
            expected = n1 + n2 - 1
            if not got.exact or got.minimum != expected:
                failures.append(((n1, n2), expected, got.minimum))
    elapsed = time.perf_counter() - start
    _report(
        1,
        not failures and elapsed < 60,
        f"2d minima equal n1+n2-1 on all 9 grids in {elapsed:.1f}s {failures or ''}",
    )


def test_criterion_02_axis_sum_minimum():
    start = time.perf_counter()
    failures = []
    for dims in ((2, 2, 2), (2, 2, 3)):
        got = min_percolating_size(GridShape(dims), Params(2, 2), budget=BUDGET)
        expected = sum(dims) - (len(dims) - 1)
        if not got.exact or got.minimum != expected:
            failures.append((dims, expected, got.minimum))
    elapsed = time.perf_counter() - start
    _report(
        2,
        not failures and elapsed < 120,
        f"3d minima equal sum(n)-(d-1) in {elapsed:.1f}s {failures or ''}",
    )


def test_criterion_03_general_formula():
    start = time.perf_counter()
    cases = [
        ((2, 2, 2), 2, 1, 1),
        ((2, 2, 2), 2, 3, 7),
        ((3, 3), 3, 2, 8),
    ]
    failures = []
    for dims, t, r, expected in cases:
        shape, params = GridShape(dims), Params(t, r)
        got = min_percolating_size(shape, params, budget=BUDGET)
        formula = m_formula(shape, params).total
        if not got.exact or got.minimum != expected or formula != expected:
            failures.append((dims, t, r, expected, got.minimum, formula))
    elapsed = time.perf_counter() - start
    _report(
        3,
        not failures and elapsed < 120,
        f"minima match the closed form at r=1, r=d, t=3 in {elapsed:.1f}s {failures or ''}",
    )


def test_criterion_04_one_phase_minimum():
    start = time.perf_counter()
    failures = []
    for dims in ((3, 3), (3, 4)):
        got = min_one_phase_size(GridShape(dims), Params(3, 2), budget=BUDGET)
        expected = (dims[0] + dims[1]) * 2 - 4
        if not got.exact or got.minimum != expected:
            failures.append((dims, expected, got.minimum))
    elapsed = time.perf_counter() - start
    _report(
        4,
        not failures and elapsed < 60,
        f"one-phase minima equal (n1+n2)(t-1)-(t-1)^2 in {elapsed:.1f}s {failures or ''}",
    )


def test_criterion_05_slice_union():
    total_bad = 0
    detail = []
    for dims in ((4, 4), (3, 3, 3)):
        bad, checked = union_battery(GridShape(dims), Params(2, 2), 200, SEED)
        total_bad += bad
        detail.append(f"{dims}: {checked} unions")
    _report(
        5,
        total_bad == 0,
        f"slice unions preserve percolation, 200 sets per shape ({'; '.join(detail)}), "
        f"{total_bad} violations",
    )


def test_criterion_06_thin_row_removal():
    total_bad = 0
    detail = []
    for t in (2, 3):
        bad, checked, found = removal_battery(GridShape((5, 5)), Params(t, 2), 200, SEED)
        total_bad += bad
        assert found >= 200, f"only {found} conditioned samples for t={t}"
        detail.append(f"t={t}: {found} sets, {checked} removals")
    _report(
        6,
        total_bad == 0,
        f"removing a (t-1)-cell row preserves percolation ({'; '.join(detail)}), "
        f"{total_bad} violations",
    )


def test_criterion_07_closure_laws_and_order_independence():
    configs = (
        ((4, 4), 2, 2),
        ((5, 5), 3, 2),
        ((3, 3, 3), 2, 2),
        ((2, 2, 2), 2, 3),
    )
    total_bad = 0
    for dims, t, r in configs:
        out = closure_laws_battery(GridShape(dims), Params(t, r), 200, 20, SEED)
        total_bad += sum(out.values())
    _report(
        7,
        total_bad == 0,
        f"closure laws and 20-seed order independence on 200 sets x "
        f"{len(configs)} configurations, {total_bad} violations",
    )


def test_criterion_08_shift_invariance_and_normal_form():
    bad = 0
    shifts = 0
    for t in (2, 3):
        b, s = shift_invariance_battery(GridShape((4, 4)), Params(t, 2), 100, SEED)
        bad += b
        shifts += s
    nf_bad, nf_sets = normal_form_battery(GridShape((5, 5)), 200, SEED)
    _report(
        8,
        bad == 0 and nf_bad == 0,
        f"closure invariant under {shifts} shifts on 200 instances; "
        f"{nf_sets} normalized sets all contain row 1 and column 1 with matching "
        f"structural closure; {bad + nf_bad} violations",
    )


def test_criterion_09_closure_block_structure():
    bad, sets = structure_battery(GridShape((5, 5)), Params(2, 2), 500, SEED)
    _report(
        9,
        bad == 0,
        f"closures decompose into disjoint rectangles on {sets} random sets, "
        f"{bad} violations",
    )


def test_criterion_10_count_equals_formula_everywhere():
    start = time.perf_counter()
    bad = 0
    total = 0
    for d in range(1, 5):
        for t in range(2, 5):
            for dims in product(range(t, 7), repeat=d):
                for r in range(1, d + 1):
                    total += 1
                    shape, params = GridShape(dims), Params(t, r)
                    if l_set_cardinality(shape, params) != m_formula(shape, params).total:
                        bad += 1
    elapsed = time.perf_counter() - start
    _report(
        10,
        bad == 0 and elapsed < 10,
        f"direct count equals the closed form on {total} parameter tuples "
        f"in {elapsed:.1f}s, {bad} mismatches",
    )
