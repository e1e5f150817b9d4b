"""Lemma-level properties on seeded instances, with negative controls."""
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

import lemma_checks as L
from opencells.fixtures import l_shape_set, non_special_decomposition
from opencells.semilinear import SemilinearSet, atom, member


@pytest.mark.parametrize("name", sorted(L.LEMMAS))
@settings(max_examples=6, deadline=None)
@given(k=st.integers(100, 10 ** 6))
def test_lemma(name, k):
    assert L.LEMMAS[name](k) == []


class _SetCell:
    """A set posing as a cell, for exercising the checks on non-cells."""

    def __init__(self, A, sample):
        self.A, self.sample = A, sample
        self.dim = A.dim

    def contains(self, p):
        return member(self.A, p)


def test_reflection_fails_at_a_closed_end():
    half_open = SemilinearSet.of(1, [atom([-1], 0, "<="), atom([1], -1, "<")])  # [0, 1)
    C = _SetCell(half_open, (F(0),))
    assert not any(L._reflects(C, (F(0),), [(F(1, 2),)], F(1, 2 ** i)) for i in range(21))
    C = _SetCell(half_open, (F(1, 2),))
    assert L._reflects(C, (F(1, 2),), [(F(0),)], F(1, 4))


def test_l_shape_is_not_convex():
    X = l_shape_set()
    x, y = (F(3, 2), F(1, 2)), (F(1, 2), F(3, 2))
    assert member(X, x) and member(X, y)
    assert not member(X, tuple((a + b) / 2 for a, b in zip(x, y)))


def test_openness_check_sees_the_non_special_star():
    from opencells.semilinear import is_open
    from opencells.star import st
    D = non_special_decomposition()
    assert not is_open(st(D, D.cells[D.locate((0, 1))]))


def test_points_of_a_cell_lie_in_it():
    D = L.any_decomposition(3)
    for C in D.cells[:20]:
        assert all(C.contains(p) for p in L.points_of(C, L._grid(D.dim)))
