from fractions import Fraction as F

import pytest

from opencells.errors import ResourceError
from opencells.oracle import (GridSpec, default_grid, grid_compare, membership, random_decomposition,
                              random_instance, random_open_instance, random_system)
from opencells.cells import check_decomposition
from opencells.semilinear import SemilinearSet, atom, is_open, member


def test_grid_compare_boundary_points():
    A = SemilinearSet.of(1, [atom([-1], 0, "<"), atom([1], -1, "<")])
    B = SemilinearSet.of(1, [atom([-1], 0, "<="), atom([1], -1, "<=")])
    assert grid_compare(A, B, GridSpec(2, 2, 1)) == [(F(0),), (F(1),)]
    assert grid_compare(A, A, GridSpec(2, 2, 1)) == []


def test_grid_shape_and_cap():
    g = GridSpec(F(1, 2), 4, 2)
    assert g.side == 5 and g.size == 25
    pts = list(g.points())
    assert pts[0] == (F(-1, 2), F(-1, 2)) and len(pts) == 25
    with pytest.raises(ResourceError):
        GridSpec(10, 100, 3).numerators()
    with pytest.raises(ValueError):
        GridSpec(0, 4, 1)


def test_default_grids():
    assert (default_grid(2).box_radius, default_grid(2).denominator) == (3, 4)
    assert (default_grid(3).box_radius, default_grid(3).denominator) == (2, 2)


def test_vector_membership_agrees_with_exact_member():
    g = GridSpec(2, 2, 2)
    pts = list(g.points())
    for k in range(20):
        A = random_instance(f"m{k}", 2, 6, 5)
        m = membership(A, g)
        assert m.tolist() == [member(A, p) for p in pts]


def test_membership_with_huge_coefficients_uses_exact_integers():
    big = 2 ** 70
    A = SemilinearSet.of(1, [atom([big], -big, "=")])  # x = 1
    m = membership(A, GridSpec(2, 1, 1))
    assert m.tolist() == [False, False, False, True, False]


def test_seed_determinism():
    assert random_instance(42, 2, 8, 5) == random_instance(42, 2, 8, 5)
    assert random_instance(42, 2, 8, 5) != random_instance(43, 2, 8, 5)
    assert random_decomposition(42, 2) == random_decomposition(42, 2)
    assert random_system(7, 3, 4, 5) == random_system(7, 3, 4, 5)


def test_instance_bounds():
    for k in range(50):
        A = random_instance(k, 2, 8, 5)
        atoms = [a for d in A.disjuncts for a in d.constraints]
        assert 1 <= len(atoms) <= 8
        # atoms are stored primitive, so coefficients can only shrink
        assert all(abs(v) <= 5 for a in atoms for v in a.coefs + (a.const,))


def test_random_open_instances_are_open():
    for k in range(25):
        A = random_open_instance(k, 2, 6, 4)
        assert is_open(A)
        assert A.disjuncts


def test_random_decompositions_are_decompositions():
    for k in range(10):
        assert check_decomposition(random_decomposition(k, 2))


def test_random_system_is_boxed():
    S = random_system(3, 2, 4, 5, box=10)
    assert not SemilinearSet.from_conj(S).disjuncts[0].holds((F(11), F(0)))
    assert S.box is None or all(-10 <= lo and hi <= 10 for lo, hi in S.box)
