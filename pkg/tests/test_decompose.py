from fractions import Fraction as F

import pytest

from opencells.arith import NEG_INF, POS_INF, AffineFunc, evaluate
from opencells.cells import Band, Interval, Point, check_decomposition, line_decomposition, trivial_tower
from opencells.decompose import (is_special, linear_cdt, partitions, piece_on_cell, pwa_linearize,
                                 refines, specialize)
from opencells.errors import InputError, PreconditionError
from opencells.fixtures import non_special_decomposition
from opencells.oracle import GridSpec, grid_compare, random_decomposition, random_instance
from opencells.semilinear import SemilinearSet, atom, equal_sets, member, union_all


def S(dim, *atoms):
    return SemilinearSet.of(dim, list(atoms))


def cells_inside(D, A):
    return union_all(A.dim, (c.as_set() for c in D.cells if member(A, c.sample_point())))


def test_linear_cdt_half_line():
    D = linear_cdt([S(1, atom([-1], 0, "<"))], 1)
    assert set(D.cells) == {Interval(NEG_INF, F(0)), Point(F(0)), Interval(F(0), POS_INF)}


def test_linear_cdt_wedge():
    wedge = S(2, atom([1, -1], 0, "<"), atom([0, 1], -1, "<"))
    D = linear_cdt([wedge], 2)
    assert check_decomposition(D)
    assert partitions(D, wedge)
    U = cells_inside(D, wedge)
    assert equal_sets(U, wedge)
    assert grid_compare(U, wedge, GridSpec(3, 4, 2)) == []


def test_linear_cdt_no_targets():
    D = linear_cdt([], 2)
    assert D.cells == (Band(Interval(NEG_INF, POS_INF), NEG_INF, POS_INF, check=False),)
    assert D.base.cells == (Interval(NEG_INF, POS_INF),)


def test_linear_cdt_partition_soundness_random():
    for k in range(15):
        A = random_instance(f"cdt{k}", 2, 5, 3)
        D = linear_cdt([A], 2)
        assert partitions(D, A)
        assert equal_sets(cells_inside(D, A), A)


def test_linear_cdt_three_dimensional():
    A = random_instance("cdt3", 3, 4, 2)
    D = linear_cdt([A], 3)
    assert check_decomposition(D)
    assert equal_sets(cells_inside(D, A), A)


def test_linear_cdt_rejects_zero_dimension():
    with pytest.raises(PreconditionError):
        linear_cdt([], 0)


# ------------------------------------------------------------ pwa_linearize

X = AffineFunc((1,), 0)


def test_pwa_abs():
    pieces = [(S(1, atom([1], 0, "<")), -X), (S(1, atom([-1], 0, "<=")), X)]
    D = pwa_linearize(pieces, 1)
    assert Point(F(0)) in D.cells
    for c in D.cells:
        f = piece_on_cell(pieces, c)
        s = c.sample_point()
        assert evaluate(f, s) == abs(s[0])


def test_pwa_single_piece():
    D = pwa_linearize([(SemilinearSet.universe(2), AffineFunc((1, 2), 3))], 2)
    assert len(D.cells) == 1


def test_pwa_max_matches_on_grid():
    x, y = AffineFunc((1, 0), 0), AffineFunc((0, 1), 0)
    pieces = [(S(2, atom([-1, 1], 0, "<=")), x), (S(2, atom([1, -1], 0, "<")), y)]  # y <= x, x < y
    D = pwa_linearize(pieces, 2)
    diag = S(2, atom([1, -1], 0, "="))
    assert partitions(D, diag)
    for p in GridSpec(2, 2, 2).points():
        c = D.cells[D.locate(p)]
        assert evaluate(piece_on_cell(pieces, c), p) == max(p)


def test_pwa_overlapping_guards():
    pieces = [(S(1, atom([1], 0, "<=")), X), (S(1, atom([-1], 0, "<=")), -X)]
    with pytest.raises(InputError):
        pwa_linearize(pieces, 1)


# ------------------------------------------------------------ special decompositions

def test_line_decompositions_are_special():
    D = line_decomposition([0, 1, 5])
    assert is_special(D)
    assert specialize(D) == D
    assert refines(specialize(D), D)


def test_fixture_is_not_special():
    r = is_special(non_special_decomposition())
    assert not r
    cells = set(r.witness)
    graph = [c for c in cells if c.cell_dim == 0]
    assert graph and graph[0].sample_point() == (F(0), F(1))
    assert Band(Interval(F(-1), F(0)), AffineFunc((0,), 0), AffineFunc((0,), 2)) in cells


def test_specialize_fixture():
    D = non_special_decomposition()
    E = specialize(D)
    assert is_special(E)
    assert refines(E, D)
    assert check_decomposition(E)
    assert len(E.cells) == 63


def test_specialize_random():
    for k in range(10):
        D = random_decomposition(f"spec{k}", 2)
        E = specialize(D)
        assert is_special(E) and refines(E, D) and check_decomposition(E)


def test_specialize_three_dimensional():
    D = random_decomposition("spec3", 3, 4, 2)
    E = specialize(D)
    assert is_special(E) and refines(E, D)


def test_refines_examples():
    D = linear_cdt([S(2, atom([1, 1], -1, "<"))], 2)
    assert refines(D, D)
    assert refines(D, trivial_tower(2))
    half = linear_cdt([S(1, atom([-1], 0, "<"))], 1)
    assert not refines(trivial_tower(1), half)
