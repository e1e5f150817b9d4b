"""Exact linear cell decompositions of Q^n, special refinements, stars and open covers."""
from .arith import NEG_INF, POS_INF, AffineFunc, format_rational, parse_rational
from .cells import (Band, Decomposition, Graph, Interval, Order, Point, check_decomposition,
                    compare_on_cell, is_decomposition)
from .decompose import is_special, linear_cdt, pwa_linearize, refines, specialize
from .errors import (DimensionError, InputError, OpenCellsError, PreconditionError,
                     ResourceError)
from .semilinear import (ConjSystem, Constraint, Rel, SemilinearSet, atom, closure_set,
                         complement, equal_sets, feasible, interior, intersect, is_empty,
                         is_open, member, project_set, subset, union, witness)
from .star import (OpenBand, OpenInterval, PiecewiseAffineFunc, cover_open_set, cover_union,
                   frontier_check, minimize_cover, st, star_cells, star_open_cell)

__version__ = "0.1.0"

__all__ = [
    "NEG_INF", "POS_INF", "AffineFunc", "format_rational", "parse_rational",
    "Band", "Decomposition", "Graph", "Interval", "Order", "Point", "check_decomposition",
    "compare_on_cell", "is_decomposition",
    "is_special", "linear_cdt", "pwa_linearize", "refines", "specialize",
    "DimensionError", "InputError", "OpenCellsError", "PreconditionError", "ResourceError",
    "ConjSystem", "Constraint", "Rel", "SemilinearSet", "atom", "closure_set", "complement",
    "equal_sets", "feasible", "interior", "intersect", "is_empty", "is_open", "member",
    "project_set", "subset", "union", "witness",
    "OpenBand", "OpenInterval", "PiecewiseAffineFunc", "cover_open_set", "cover_union",
    "frontier_check", "minimize_cover", "st", "star_cells", "star_open_cell",
]
