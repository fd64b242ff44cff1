from itertools import product

import pytest

from boxperc.constructions import l_set, l_set_cardinality, m_formula
from boxperc.engine import one_phase, percolates
from boxperc.lattice import CellSet, GridShape, Params, check_compatible


def reference_l_cells(dims, t, r):
    """Direct reading of the definition, independent of the library walk."""
    return {
        v
        for v in product(*(range(1, n + 1) for n in dims))
        if sum(1 for c in v if c > t - 1) <= r - 1
    }


def test_l_set_first_row_and_column():
    shape, params = GridShape((5, 6)), Params(2, 2)
    seed = l_set(shape, params)
    expected = {(1, j) for j in range(1, 7)} | {(i, 1) for i in range(1, 6)}
    assert set(seed.cells()) == expected
    assert len(seed) == 10
    assert set(seed.cells()) == reference_l_cells((5, 6), 2, 2)


def test_l_set_full_r_complement():
    # r = d: everything except the all-above-threshold corner block.
    seed = l_set(GridShape((2, 2, 2)), Params(2, 3))
    assert len(seed) == 7
    assert (2, 2, 2) not in seed
    assert set(seed.cells()) == reference_l_cells((2, 2, 2), 2, 3)


def test_l_set_r_equals_one_is_a_box():
    seed = l_set(GridShape((4, 4)), Params(3, 1))
    assert set(seed.cells()) == {(i, j) for i in (1, 2) for j in (1, 2)}


def test_l_set_cardinality_examples():
    assert l_set_cardinality(GridShape((5, 6)), Params(2, 2)) == 10
    assert l_set_cardinality(GridShape((2, 2, 2)), Params(2, 3)) == 7
    # All axes at t - 1: every vertex qualifies.
    assert l_set_cardinality(GridShape((2, 2, 2)), Params(3, 2)) == 8


def test_l_set_cardinality_matches_enumeration():
    for dims in ((3, 4), (2, 3, 2), (5,)):
        for t in (2, 3):
            for r in range(1, len(dims) + 1):
                shape, params = GridShape(dims), Params(t, r)
                assert l_set_cardinality(shape, params) == len(
                    reference_l_cells(dims, t, r)
                )
                assert len(l_set(shape, params)) == l_set_cardinality(shape, params)


def test_m_formula_two_dimensional():
    for n1 in range(2, 6):
        for n2 in range(2, 6):
            terms = m_formula(GridShape((n1, n2)), Params(2, 2))
            assert terms.total == n1 + n2 - 1
            assert not terms.flagged


def test_m_formula_general_dimension_t2_r2():
    for dims in ((2, 2, 2), (3, 4, 5), (2, 3, 4, 2)):
        terms = m_formula(GridShape(dims), Params(2, 2))
        assert terms.total == sum(dims) - (len(dims) - 1)


def test_m_formula_t3_example():
    terms = m_formula(GridShape((5, 5)), Params(3, 2))
    assert terms.total == 16
    assert terms.total == (5 + 5) * 2 - 4
    assert terms.per_order == (4, 12)


def test_m_formula_total_is_term_sum():
    for dims, t, r in (((4, 5), 3, 2), ((2, 2, 2), 2, 3), ((6,), 4, 1)):
        terms = m_formula(GridShape(dims), Params(t, r))
        assert terms.total == sum(terms.per_order)


def test_m_formula_flags_small_axes_and_counting_wins():
    # With an axis below t - 1 the closed form is unreliable; the direct
    # count is the ground truth and the instance is flagged.
    shape, params = GridShape((1,)), Params(3, 1)
    terms = m_formula(shape, params)
    assert terms.flagged
    assert terms.total == 2
    assert l_set_cardinality(shape, params) == 1
    assert terms.total != l_set_cardinality(shape, params)


def test_count_matches_formula_when_axes_reach_t():
    for d in (1, 2, 3):
        for t in (2, 3):
            for dims in product(range(t, t + 3), repeat=d):
                for r in range(1, d + 1):
                    shape, params = GridShape(dims), Params(t, r)
                    terms = m_formula(shape, params)
                    assert not terms.flagged
                    assert l_set_cardinality(shape, params) == terms.total


def test_l_set_percolates():
    cases = (
        ((5, 6), 2, 2),
        ((3, 3), 2, 2),
        ((4, 4), 3, 2),
        ((2, 2, 2), 2, 2),
        ((2, 2, 2), 2, 3),
        ((3, 3, 3), 2, 2),
        ((5, 5), 4, 2),
        ((4,), 2, 1),
    )
    for dims, t, r in cases:
        shape, params = GridShape(dims), Params(t, r)
        check_compatible(shape, params)
        assert percolates(l_set(shape, params), params), (dims, t, r)


def test_l_set_one_phase_in_two_dimensions():
    for dims, t in (((5, 6), 2), ((4, 4), 3), ((5, 5), 4)):
        shape, params = GridShape(dims), Params(t, 2)
        assert one_phase(l_set(shape, params), params)
