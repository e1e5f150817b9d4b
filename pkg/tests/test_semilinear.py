from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from opencells.cells import Interval
from opencells.decompose import linear_cdt
from opencells.errors import DimensionError
from opencells.oracle import GridSpec, grid_compare, membership, random_instance
from opencells.semilinear import (BoxIndex, ConjSystem, SemilinearSet, atom, closure_set, complement,
                                  difference, drop_redundant, equal_sets, feasible, interior,
                                  intersect, is_closed, is_empty, is_open, member, project_set,
                                  reduce_atoms, subset, subset_witness, union, union_all, witness)


def conj(dim, *atoms):
    return ConjSystem.make(dim, atoms)


def S(dim, *atoms):
    return SemilinearSet.of(dim, list(atoms))


def gt0(dim=1, i=0):
    c = [0] * dim
    c[i] = -1
    return atom(c, 0, "<")


def lt(coefs, const):
    return atom(coefs, const, "<")


def le(coefs, const):
    return atom(coefs, const, "<=")


UNIT_OPEN = S(1, lt([-1], 0), lt([1], -1))
UNIT_CLOSED = S(1, le([-1], 0), le([1], -1))


# ------------------------------------------------------------ feasibility

def test_feasible_examples():
    assert not feasible(conj(1, lt([1], 0), lt([-1], 1)))
    assert feasible(conj(2, lt([-1, 0], 0), lt([1, 0], -1), atom([-1, 1], 0, "=")))
    assert not feasible(conj(2, le([1, 1], 0), le([-1, 0], 1), le([0, -1], 1)))


def test_strictness_is_tracked():
    # x < 0 and x >= 0 is empty, x <= 0 and x >= 0 is the point 0
    assert not feasible(conj(1, lt([1], 0), le([-1], 0)))
    assert feasible(conj(1, le([1], 0), le([-1], 0)))
    # a < x < b eliminates to a < b: x > y, x < y is empty in the plane
    assert not feasible(conj(2, lt([-1, 1], 0), lt([1, -1], 0)))


def test_witness_examples():
    assert witness(conj(1, lt([-1], 0), lt([1], -1))) == (F(1, 2),)
    assert witness(conj(1, atom([1], -3, "="))) == (F(3),)
    assert witness(conj(1, lt([1], 0), lt([-1], 1))) is None


def test_witness_satisfies_system():
    s = conj(3, lt([1, 1, 1], -1), lt([-1, 0, 0], 0), lt([0, -1, 0], 0), lt([0, 0, -1], 0))
    w = witness(s)
    assert s.holds(w)


def test_empty_and_universe_are_first_class():
    assert is_empty(SemilinearSet.empty(2))
    assert not is_empty(SemilinearSet.universe(2))
    assert member(SemilinearSet.universe(3), (F(1), F(2), F(3)))
    assert equal_sets(complement(SemilinearSet.universe(2)), SemilinearSet.empty(2))


# ------------------------------------------------------------ membership

def test_member_examples():
    A = S(1, gt0())
    assert member(A, (F(1),))
    assert not member(A, (F(0),))
    assert not member(SemilinearSet.empty(1), (F(5),))


def test_member_dimension_mismatch():
    with pytest.raises(DimensionError):
        member(S(1, gt0()), (F(1), F(2)))


# ------------------------------------------------------------ boolean algebra

def test_complement_of_open_halfline():
    assert equal_sets(complement(S(1, lt([1], 0))), S(1, le([-1], 0)))


def test_intersect_and_union():
    assert equal_sets(intersect(S(1, gt0()), S(1, lt([1], -1))), UNIT_OPEN)
    A = S(2, lt([1, -1], 0))
    assert equal_sets(union(A, SemilinearSet.empty(2)), A)


def test_difference():
    D = difference(UNIT_CLOSED, UNIT_OPEN)
    assert member(D, (F(0),)) and member(D, (F(1),)) and not member(D, (F(1, 2),))


def test_intersect_dimension_mismatch():
    with pytest.raises(DimensionError):
        intersect(S(1, gt0()), S(2, gt0(2)))


def test_equal_sets_examples():
    assert equal_sets(S(1, gt0()), S(1, atom([F(-2)], 0, "<")))
    assert not equal_sets(S(1, gt0()), S(1, le([-1], 0)))
    A = S(2, lt([1, 2], -1), le([0, -1], 3))
    assert equal_sets(A, A)


def test_subset_witness_lies_in_difference():
    w = subset_witness(UNIT_CLOSED, UNIT_OPEN)
    assert w is not None and member(UNIT_CLOSED, w) and not member(UNIT_OPEN, w)
    assert subset_witness(UNIT_OPEN, UNIT_CLOSED) is None


GRID2 = GridSpec(2, 2, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_complement_membership_on_grid(seed):
    A = random_instance(seed, 2, 4, 3)
    m = membership(A, GRID2)
    mc = membership(complement(A), GRID2)
    assert (m != mc).all()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_de_morgan_on_grid(seed):
    A = random_instance(f"a{seed}", 2, 3, 3)
    B = random_instance(f"b{seed}", 2, 3, 3)
    lhs = complement(union(A, B))
    rhs = intersect(complement(A), complement(B))
    assert equal_sets(lhs, rhs)
    assert grid_compare(lhs, rhs, GRID2) == []


def test_drop_redundant_keeps_the_set():
    c = conj(1, lt([1], -1), lt([1], -5), le([-1], 0))
    d = drop_redundant(c)
    assert len(d.constraints) == 2
    assert equal_sets(SemilinearSet.from_conj(c), SemilinearSet.from_conj(d))
    A = random_instance(7, 2, 6, 3)
    assert equal_sets(reduce_atoms(A), A)


# ------------------------------------------------------------ closure

def test_closure_examples():
    assert equal_sets(closure_set(UNIT_OPEN), UNIT_CLOSED)
    diag = S(2, lt([-1, 0], 0), lt([1, 0], -1), atom([-1, 1], 0, "="))
    diag_cl = S(2, le([-1, 0], 0), le([1, 0], -1), atom([-1, 1], 0, "="))
    assert equal_sets(closure_set(diag), diag_cl)
    assert equal_sets(closure_set(UNIT_CLOSED), UNIT_CLOSED)
    assert is_closed(UNIT_CLOSED) and not is_closed(UNIT_OPEN)


def test_closure_of_empty_disjunct_is_empty():
    # weakening an infeasible strict system would produce the point 0
    A = S(1, lt([1], 0), lt([-1], 0))
    assert is_empty(closure_set(A))


def _closure_by_cells(A):
    """Closure as the union of closures of the decomposition cells inside A."""
    D = linear_cdt([A], A.dim)
    parts = [c.closure_set() for c in D.cells if member(A, c.sample_point())]
    return union_all(A.dim, parts)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_closure_agrees_with_cell_route(seed):
    A = random_instance(seed, 2, 4, 3)
    assert equal_sets(closure_set(A), _closure_by_cells(A))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_closure_idempotent_extensive_monotone(seed):
    A = random_instance(f"a{seed}", 2, 4, 3)
    B = union(A, random_instance(f"b{seed}", 2, 3, 3))
    cA = closure_set(A)
    assert equal_sets(closure_set(cA), cA)
    assert subset(A, cA)
    assert subset(cA, closure_set(B))


# ------------------------------------------------------------ openness

def test_is_open_examples():
    box = S(2, lt([-1, 0], 0), lt([1, 0], -1), lt([0, -1], 0), lt([0, 1], -1))
    assert is_open(box)
    assert not is_open(S(1, le([-1], 0), lt([1], -1)))
    assert is_open(SemilinearSet.empty(3))
    assert is_open(SemilinearSet.universe(2))


def test_is_open_union_covering_a_boundary():
    # x < 1 or x > 0 is all of Q, though neither piece contains the other's boundary
    A = SemilinearSet.of(1, [lt([1], -1)], [gt0()])
    assert is_open(A)
    # x <= 0 or x > 0 is Q as well, built from a non-open piece
    assert is_open(SemilinearSet.of(1, [le([1], 0)], [gt0()]))
    assert not is_open(SemilinearSet.of(1, [le([1], 0)], [lt([-1], 1)]))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_is_open_agrees_with_interior_route(seed):
    A = random_instance(seed, 2, 5, 3)
    assert is_open(A) == equal_sets(A, interior(A))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_interior_is_open_and_inside(seed):
    A = random_instance(seed, 2, 4, 3)
    U = interior(A)
    assert is_open(U) and subset(U, A)


# ------------------------------------------------------------ projection

def test_project_set():
    wedge = S(2, lt([1, -1], 0), lt([0, 1], -1))  # x < y < 1
    assert equal_sets(project_set(wedge, 1), S(1, lt([1], -1)))
    seg = S(2, le([-1, 0], 0), le([1, 0], -1), atom([2, -1], 0, "="))
    assert equal_sets(project_set(seg, 1), UNIT_CLOSED)


def test_project_commutes_with_closure_on_an_interval_cell():
    A = Interval(F(0), F(1)).as_set()
    assert equal_sets(closure_set(A), UNIT_CLOSED)


def test_bounding_box_is_exact_projection():
    tri = conj(2, lt([-1, 0], 0), lt([0, -1], 0), le([1, 1], -1))  # x > 0, y > 0, x + y <= 1
    assert tri.box == ((F(0), F(1)), (F(0), F(1)))
    assert conj(1, lt([1], 0), lt([-1], 0)).box is None


def test_box_index_never_drops_a_meeting_system():
    tiny = F(1, 10 ** 12)
    near = conj(1, le([-1], 1 + tiny), le([1], -1 - 2 * tiny))  # [1 + tiny, 1 + 2 tiny]
    far = conj(1, le([-1], 5), le([1], -6))
    index = BoxIndex([near, far], 1)
    query = conj(1, le([-1], 1 + tiny), le([1], -1 - tiny))
    assert list(index.meeting(query.box)) == [0]
    assert list(index.containing((1 + tiny,))) == [0]
