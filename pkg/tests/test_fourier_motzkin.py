from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from opencells.fourier_motzkin import (constant_truth, feasible_rows, norm_eq, norm_ineq,
                                       witness_rows)
from opencells.oracle import GridSpec, grid_has_point, random_system
from opencells.semilinear import feasible, witness


def test_rows_are_normalized_to_primitive_integers():
    assert norm_ineq((4, -2), 2, True) == norm_ineq((2, -1), 1, True)
    assert norm_eq((-2, 4), 6) == norm_eq((1, -2), -3)


def test_constant_rows():
    assert constant_truth(-1, True)
    assert not constant_truth(0, True)
    assert constant_truth(0, False)
    assert not constant_truth(1, False)


def test_row_kernel_direct():
    # x > 0, x < 1 as rows c.x + k < 0
    rows = frozenset({norm_ineq((-1,), 0, True), norm_ineq((1,), -1, True)})
    assert feasible_rows(1, frozenset(), rows)
    assert witness_rows(1, frozenset(), rows) == (F(1, 2),)
    eq = frozenset({norm_eq((1,), -2)})
    assert not feasible_rows(1, eq, rows)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 2))
def test_feasibility_matches_grid_search(seed, n):
    S = random_system(seed, n, 4, 5, box=3)
    on_grid = grid_has_point(S, GridSpec(3, 4, n))
    ok = feasible(S)
    if on_grid:
        assert ok
    if ok:
        assert S.holds(witness(S))
    else:
        assert witness(S) is None
