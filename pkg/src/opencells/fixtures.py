"""Small fixed inputs shared by tests, the CLI and the self test."""
from __future__ import annotations

from fractions import Fraction

from .arith import AffineFunc
from .cells import Band, Decomposition, Graph, Interval, Point, line_decomposition
from .decompose import linear_cdt, stack_subsets
from .semilinear import SemilinearSet, atom

A = (-1, 0, 1, 2, 3)


def _const(v) -> AffineFunc:
    return AffineFunc((Fraction(0),), v)


def non_special_decomposition() -> Decomposition:
    """A decomposition of Q^2 in which the star of a point is not open.

    The base line is cut at ``a_{-1}, a_0, a_1``. Over ``{a_0}`` the walls
    are ``y = a_0, a_1, a_3``; over every other base cell they are
    ``y = a_0, a_2``.
    """
    am1, a0, a1, a2, a3 = A
    base = line_decomposition([am1, a0, a1])
    wall_sets = []
    for c in base.cells:
        if isinstance(c, Point) and c.value == a0:
            wall_sets.append([_const(a0), _const(a1), _const(a3)])
        else:
            wall_sets.append([_const(a0), _const(a2)])
    return stack_subsets(base, wall_sets)


def non_special_star_cells():
    """The five cells whose union is the star of ``(a_0, a_1)``, as (cell, label)."""
    am1, a0, a1, a2, a3 = A
    left, right, mid = Interval(am1, a0), Interval(a0, a1), Point(a0)
    return [
        (Band(left, _const(a0), _const(a2)), "(a-1,a0)x(a0,a2)"),
        (Band(right, _const(a0), _const(a2)), "(a0,a1)x(a0,a2)"),
        (Band(mid, _const(a0), _const(a1)), "{a0}x(a0,a1)"),
        (Band(mid, _const(a1), _const(a3)), "{a0}x(a1,a3)"),
        (Graph(mid, _const(a1)), "(a0,a1)"),
    ]


def star_point():
    return (Fraction(A[1]), Fraction(A[2]))


def box_set() -> SemilinearSet:
    """The open unit square ``(0,1)^2``."""
    return SemilinearSet.of(2, [atom([-1, 0], 0, "<"), atom([1, 0], -1, "<"),
                                atom([0, -1], 0, "<"), atom([0, 1], -1, "<")])


def box_decomposition() -> Decomposition:
    return linear_cdt([box_set()], 2)


def l_shape_set() -> SemilinearSet:
    """``((0,2) x (0,1)) ∪ ((0,1) x (0,2))``."""
    return SemilinearSet.of(
        2,
        [atom([-1, 0], 0, "<"), atom([1, 0], -2, "<"), atom([0, -1], 0, "<"), atom([0, 1], -1, "<")],
        [atom([-1, 0], 0, "<"), atom([1, 0], -1, "<"), atom([0, -1], 0, "<"), atom([0, 1], -2, "<")],
    )


def half_line_set() -> SemilinearSet:
    """``{x > 0}`` in Q^1."""
    return SemilinearSet.of(1, [atom([-1], 0, "<")])
