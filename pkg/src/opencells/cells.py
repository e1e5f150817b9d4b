"""Linear cells, cylindrical decompositions and wall comparison on cells.

A cell in Q^1 is a :class:`Point` or an open :class:`Interval`; a cell in
Q^(k+1) is a :class:`Graph` of an affine wall over a cell of Q^k or a
:class:`Band` between two extended walls. Walls are total affine functionals
on Q^k, so closures are obtained by weakening strict atoms.
"""
from __future__ import annotations

import enum
from dataclasses import InitVar, dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

from .arith import (NEG_INF, POS_INF, AffineFunc, Infinity, eval_ext, evaluate,
                    ext_lt, is_inf, midpoint_rule, rat)
from .errors import DimensionError, PreconditionError
from .semilinear import (ConjSystem, Constraint, Rel, SemilinearSet, conj_subset,
                         feasible)


class Order(enum.Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"
    INCOMPARABLE = "INCOMPARABLE"

    def flip(self) -> "Order":
        return {Order.LT: Order.GT, Order.GT: Order.LT}.get(self, self)


def _key(x):
    return (x.sign * 2, 0) if isinstance(x, Infinity) else (0, x)


class _Cell:
    """Shared behaviour; subclasses are frozen dataclasses."""

    dim: int

    def formula(self) -> ConjSystem:
        return self._formula

    def closure(self) -> ConjSystem:
        return self._closure

    def as_set(self) -> SemilinearSet:
        return SemilinearSet(self.dim, (self._formula,))

    def closure_set(self) -> SemilinearSet:
        return SemilinearSet(self.dim, (self._closure,))

    def contains(self, point: Sequence[Fraction]) -> bool:
        return self._formula.holds(point)

    def closure_contains(self, point: Sequence[Fraction]) -> bool:
        return self._closure.holds(point)

    def sample_point(self) -> tuple:
        return self._sample

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(self._fields())
            object.__setattr__(self, "_hash", h)
        return h


@dataclass(frozen=True, eq=True)
class Point(_Cell):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", rat(self.value))

    dim = 1
    cell_dim = 0
    __hash__ = _Cell.__hash__

    def _fields(self):
        return ("P", self.value)

    @cached_property
    def _formula(self):
        return ConjSystem.make(1, [Constraint.make(AffineFunc((1,), -self.value), Rel.EQ)])

    @cached_property
    def _closure(self):
        return self._formula

    @cached_property
    def _sample(self):
        return (self.value,)

    @property
    def bounds(self):
        return self.value, self.value


@dataclass(frozen=True, eq=True)
class Interval(_Cell):
    lo: Union[Fraction, Infinity]
    hi: Union[Fraction, Infinity]

    def __post_init__(self):
        lo = self.lo if is_inf(self.lo) else rat(self.lo)
        hi = self.hi if is_inf(self.hi) else rat(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if lo is POS_INF or hi is NEG_INF or not ext_lt(lo, hi):
            raise PreconditionError(f"empty interval ({lo}, {hi})")

    dim = 1
    cell_dim = 1
    __hash__ = _Cell.__hash__

    def _fields(self):
        return ("I", _key(self.lo), _key(self.hi))

    def _atoms(self, rel):
        atoms = []
        if not is_inf(self.lo):
            atoms.append(Constraint.make(AffineFunc((-1,), self.lo), rel))
        if not is_inf(self.hi):
            atoms.append(Constraint.make(AffineFunc((1,), -self.hi), rel))
        return atoms

    @cached_property
    def _formula(self):
        return ConjSystem.make(1, self._atoms(Rel.LT))

    @cached_property
    def _closure(self):
        return ConjSystem.make(1, self._atoms(Rel.LE))

    @cached_property
    def _sample(self):
        return (midpoint_rule(self.lo, self.hi),)

    @property
    def bounds(self):
        return self.lo, self.hi


def _wall_atom(lower, upper, k: int, rel: Rel) -> Constraint:
    """Atom ``lower(x) - upper(x) ⋈ 0`` on Q^(k+1), either side may be ``"y"``."""
    y = AffineFunc.coordinate(k + 1, k)
    lo = y if lower == "y" else lower.extend(k + 1)
    hi = y if upper == "y" else upper.extend(k + 1)
    return Constraint.make(lo - hi, rel)


def _check_wall(f, base):
    if not isinstance(f, (AffineFunc, Infinity)):
        raise PreconditionError(f"wall must be AffineFunc or an infinity, got {f!r}")
    if isinstance(f, AffineFunc) and f.arity != base.dim:
        raise DimensionError(f"wall of arity {f.arity} over a cell in Q^{base.dim}")


@dataclass(frozen=True, eq=True)
class Graph(_Cell):
    base: "LinearCell"
    wall: AffineFunc

    def __post_init__(self):
        if not isinstance(self.wall, AffineFunc):
            raise PreconditionError("a graph needs a finite wall")
        _check_wall(self.wall, self.base)

    __hash__ = _Cell.__hash__

    def _fields(self):
        return ("G", self.base, self.wall)

    @property
    def dim(self):
        return self.base.dim + 1

    @property
    def cell_dim(self):
        return self.base.cell_dim

    @cached_property
    def _formula(self):
        k = self.base.dim
        return self.base.formula().lift(k + 1).with_atoms([_wall_atom("y", self.wall, k, Rel.EQ)])

    @cached_property
    def _closure(self):
        k = self.base.dim
        return self.base.closure().lift(k + 1).with_atoms([_wall_atom("y", self.wall, k, Rel.EQ)])

    @cached_property
    def _sample(self):
        s = self.base.sample_point()
        return s + (evaluate(self.wall, s),)

    def walls(self):
        return (self.wall,)


@dataclass(frozen=True, eq=True)
class Band(_Cell):
    """``(lo, hi)_base``; ``check=False`` skips the non-emptiness test."""

    base: "LinearCell"
    lo: Union[AffineFunc, Infinity]
    hi: Union[AffineFunc, Infinity]
    check: InitVar[bool] = True

    def __post_init__(self, check):
        _check_wall(self.lo, self.base)
        _check_wall(self.hi, self.base)
        if self.lo is POS_INF or self.hi is NEG_INF:
            raise PreconditionError("band with walls in the wrong order")
        if check and not is_inf(self.lo) and not is_inf(self.hi):
            if compare_on_cell(self.lo, self.hi, self.base) is not Order.LT:
                raise PreconditionError(f"band walls are not strictly ordered on the base: {self.lo} , {self.hi}")

    __hash__ = _Cell.__hash__

    def _fields(self):
        return ("B", self.base, _wkey(self.lo), _wkey(self.hi))

    @property
    def dim(self):
        return self.base.dim + 1

    @property
    def cell_dim(self):
        return self.base.cell_dim + 1

    def _atoms(self, rel):
        k = self.base.dim
        atoms = []
        if not is_inf(self.lo):
            atoms.append(_wall_atom(self.lo, "y", k, rel))
        if not is_inf(self.hi):
            atoms.append(_wall_atom("y", self.hi, k, rel))
        return atoms

    @cached_property
    def _formula(self):
        return self.base.formula().lift(self.dim).with_atoms(self._atoms(Rel.LT))

    @cached_property
    def _closure(self):
        return self.base.closure().lift(self.dim).with_atoms(self._atoms(Rel.LE))

    @cached_property
    def _sample(self):
        s = self.base.sample_point()
        return s + (midpoint_rule(eval_ext(self.lo, s), eval_ext(self.hi, s)),)

    def walls(self):
        return tuple(w for w in (self.lo, self.hi) if not is_inf(w))


def _wkey(w):
    return ("inf", w.sign) if isinstance(w, Infinity) else w


LinearCell = Union[Point, Interval, Graph, Band]


# ------------------------------------------------------------ cell operations

def cell_formula(C: LinearCell) -> SemilinearSet:
    return C.as_set()


def cell_closure(C: LinearCell) -> SemilinearSet:
    return C.closure_set()


def cell_dim(C: LinearCell) -> int:
    return C.cell_dim


def project(C: LinearCell) -> LinearCell:
    if C.dim < 2:
        raise PreconditionError("a cell of Q^1 has no projection")
    return C.base


def sample_point(C: LinearCell) -> tuple:
    return C.sample_point()


def spine(C: LinearCell) -> list:
    """``[C_1, ..., C_n]`` with ``C_n = C`` and ``C_k`` the projection to Q^k."""
    out = [C]
    while out[-1].dim > 1:
        out.append(out[-1].base)
    return out[::-1]


def x1_bounds(C: LinearCell):
    """Closed range of the first coordinate over ``C`` (extended rationals)."""
    return spine(C)[0].bounds


def compare_on_cell(f, g, C: LinearCell) -> Order:
    """Compare two extended walls on every point of ``C``.

    Infinite walls are decided by their tag. For finite walls the sign of
    ``g - f`` is read at the sample point and the two other signs are
    refuted by feasibility.
    """
    if isinstance(f, Infinity) or isinstance(g, Infinity):
        fk = f.sign if isinstance(f, Infinity) else 0
        gk = g.sign if isinstance(g, Infinity) else 0
        if fk == gk:
            if fk:
                return Order.EQ
        else:
            return Order.LT if fk < gk else Order.GT
    if f.arity != C.dim or g.arity != C.dim:
        raise DimensionError(f"walls of arity {f.arity}, {g.arity} on a cell of Q^{C.dim}")
    d = g - f
    if d.is_constant():
        return Order.LT if d.const > 0 else Order.GT if d.const < 0 else Order.EQ
    s = C.sample_point()
    v = evaluate(d, s)
    sign = (v > 0) - (v < 0)
    base = C.formula()
    pos = Constraint.make(-d, Rel.LT)
    zero = Constraint.make(d, Rel.EQ)
    neg = Constraint.make(d, Rel.LT)
    others = {1: (zero, neg), 0: (pos, neg), -1: (pos, zero)}[sign]
    for a in others:
        if feasible(base.with_atoms((a,))):
            return Order.INCOMPARABLE
    return {1: Order.LT, 0: Order.EQ, -1: Order.GT}[sign]


def cell_subset(C: LinearCell, target: ConjSystem) -> bool:
    return conj_subset(C.formula(), target)


# ------------------------------------------------------------- decompositions

@dataclass(frozen=True, eq=False)
class Decomposition:
    """Cells of a cylindrical decomposition of Q^dim and its projection."""

    dim: int
    cells: tuple
    base: Optional["Decomposition"] = None

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        if self.dim < 1:
            raise PreconditionError("decompositions of Q^0 are not supported")
        if (self.dim == 1) != (self.base is None):
            raise PreconditionError("a decomposition needs a base exactly when dim > 1")
        for c in self.cells:
            if c.dim != self.dim:
                raise DimensionError(f"cell of Q^{c.dim} in a decomposition of Q^{self.dim}")

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __eq__(self, other):
        return (isinstance(other, Decomposition) and self.dim == other.dim
                and self.cells == other.cells and self.base == other.base)

    __hash__ = object.__hash__

    @cached_property
    def index(self) -> dict:
        return {c: i for i, c in enumerate(self.cells)}

    @cached_property
    def base_index(self) -> tuple:
        """Index in ``base.cells`` of each cell's projection."""
        if self.base is None:
            return ()
        idx = self.base.index
        out = []
        for c in self.cells:
            if c.base not in idx:
                raise PreconditionError(f"cell base {c.base} is not a cell of the base decomposition")
            out.append(idx[c.base])
        return tuple(out)

    @cached_property
    def fibers(self) -> tuple:
        """Per base cell, indices of the cells above it from bottom to top."""
        if self.base is None:
            return ()
        groups = [[] for _ in self.base.cells]
        for i, b in enumerate(self.base_index):
            groups[b].append(i)
        return tuple(tuple(sorted(g, key=lambda i: self.cells[i].sample_point()[-1])) for g in groups)

    @cached_property
    def line_order(self) -> tuple:
        """For dim 1: cell indices from left to right."""
        return tuple(sorted(range(len(self.cells)), key=lambda i: self.cells[i].sample_point()[0]))

    @cached_property
    def x1_ranges(self) -> tuple:
        return tuple(x1_bounds(c) for c in self.cells)

    def locate(self, point: Sequence) -> int:
        """Index of the cell containing ``point``."""
        point = [rat(x) for x in point]
        if len(point) != self.dim:
            raise DimensionError(f"point of length {len(point)} in Q^{self.dim}")
        if self.base is None:
            candidates = range(len(self.cells))
        else:
            candidates = self.fibers[self.base.locate(point[:-1])]
        for i in candidates:
            if self.cells[i].contains(point):
                return i
        raise PreconditionError(f"no cell contains {point}; not a decomposition")

    def tower(self) -> list:
        """``[D_1, ..., D_n]`` with ``D_n = self``."""
        out = [self]
        while out[-1].base is not None:
            out.append(out[-1].base)
        return out[::-1]


def ranges_meet(r1, r2) -> bool:
    """Do two closed extended ranges intersect?"""
    return not (ext_lt(r1[1], r2[0]) or ext_lt(r2[1], r1[0]))


def line_decomposition(points: Iterable) -> Decomposition:
    """The decomposition of Q^1 cut at ``points``."""
    pts = sorted({rat(p) for p in points})
    cells = []
    lo = NEG_INF
    for p in pts:
        cells.append(Interval(lo, p))
        cells.append(Point(p))
        lo = p
    cells.append(Interval(lo, POS_INF))
    return Decomposition(1, tuple(cells))


def trivial_tower(n: int) -> Decomposition:
    """The one-cell decomposition ``{Q^n}`` over ``{Q^(n-1)}`` ..."""
    D = line_decomposition(())
    for _ in range(1, n):
        D = Decomposition(D.dim + 1, (Band(D.cells[0], NEG_INF, POS_INF, check=False),), D)
    return D


@dataclass
class CheckResult:
    """Outcome of a verification; truthy iff the check passed."""

    ok: bool
    detail: str = ""
    witness: tuple = ()

    def __bool__(self):
        return self.ok


def _check_line(cells) -> CheckResult:
    points = sorted((c for c in cells if isinstance(c, Point)), key=lambda c: c.value)
    intervals = [c for c in cells if isinstance(c, Interval)]
    for a, b in zip(points, points[1:]):
        if a.value == b.value:
            return CheckResult(False, "duplicate point cell", (a, b))
    expected = []
    lo = NEG_INF
    for p in points:
        expected.append(Interval(lo, p.value))
        lo = p.value
    expected.append(Interval(lo, POS_INF))
    exp = set(expected)
    seen = set()
    for c in intervals:
        if c not in exp:
            clash = [e for e in expected if _intervals_overlap(c, e)]
            return CheckResult(False, "interval does not fit between consecutive points", (c,) + tuple(clash[:1]))
        if c in seen:
            return CheckResult(False, "duplicate interval cell", (c, c))
        seen.add(c)
    for e in expected:
        if e not in seen:
            return CheckResult(False, f"gap: {e} is not covered", (e,))
    return CheckResult(True)


def _intervals_overlap(a: Interval, b: Interval) -> bool:
    return ext_lt(a.lo, b.hi) and ext_lt(b.lo, a.hi)


def is_decomposition(cells: Sequence, n: int) -> CheckResult:
    """Partition and cylindricity check of ``cells`` as a decomposition of Q^n.

    Over every base cell the fiber must be exactly ``(-inf, h1), Γ(h1),
    (h1, h2), ..., (hm, +inf)`` with the graph walls strictly ordered on the
    base and band walls equal on the base to the neighbouring graph walls;
    the projections are checked recursively.
    """
    cells = list(cells)
    for c in cells:
        if c.dim != n:
            return CheckResult(False, f"cell of dimension {c.dim} in Q^{n}", (c,))
    if n == 1:
        return _check_line(cells)
    groups = {}
    for c in cells:
        groups.setdefault(c.base, []).append(c)
    bases = list(groups)
    sub = is_decomposition(bases, n - 1)
    if not sub:
        return CheckResult(False, f"projection is not a decomposition: {sub.detail}", sub.witness)
    for B, fiber in groups.items():
        graphs = [c for c in fiber if isinstance(c, Graph)]
        bands = [c for c in fiber if isinstance(c, Band)]
        s = B.sample_point()
        graphs.sort(key=lambda c: evaluate(c.wall, s))
        for i, g1 in enumerate(graphs):
            for g2 in graphs[i + 1:]:
                if compare_on_cell(g1.wall, g2.wall, B) is not Order.LT:
                    return CheckResult(False, "graph cells over one base are not strictly ordered", (g1, g2))
        slots = [NEG_INF] + [g.wall for g in graphs] + [POS_INF]
        filled = [None] * (len(slots) - 1)
        for b in bands:
            j = _find_slot(b, slots, B)
            if j is None:
                clash = [c for c in fiber if c is not b]
                return CheckResult(False, "band does not fit between consecutive graphs", (b,) + tuple(clash[:1]))
            if filled[j] is not None:
                return CheckResult(False, "two bands overlap", (filled[j], b))
            filled[j] = b
        for j, b in enumerate(filled):
            if b is None:
                return CheckResult(False, f"gap above base {B} between walls {slots[j]} and {slots[j + 1]}", (B,))
    return CheckResult(True)


def _find_slot(b: Band, slots, B) -> Optional[int]:
    for j in range(len(slots) - 1):
        if (compare_on_cell(b.lo, slots[j], B) is Order.EQ
                and compare_on_cell(b.hi, slots[j + 1], B) is Order.EQ):
            return j
    return None


def check_decomposition(D: Decomposition) -> CheckResult:
    """:func:`is_decomposition` on ``D`` plus agreement with its stored base."""
    r = is_decomposition(D.cells, D.dim)
    if not r or D.base is None:
        return r
    if set(c.base for c in D.cells) != set(D.base.cells):
        return CheckResult(False, "stored base differs from the projections of the cells")
    return check_decomposition(D.base)


# ------------------------------------------------------------- coalescing

def _vertical_bounds(c):
    """``((f, strict), (g, strict))`` with ``f ⋈ last coordinate ⋈ g`` on ``c``."""
    if isinstance(c, Point):
        v = AffineFunc((), c.value)
        return (v, False), (v, False)
    if isinstance(c, Interval):
        lo = c.lo if is_inf(c.lo) else AffineFunc((), c.lo)
        hi = c.hi if is_inf(c.hi) else AffineFunc((), c.hi)
        return (lo, True), (hi, True)
    if isinstance(c, Graph):
        return (c.wall, False), (c.wall, False)
    return (c.lo, True), (c.hi, True)


def _bound_atoms(lower, upper, k: int) -> list:
    (f, fs), (g, gs) = lower, upper
    if f == g and not fs and not gs:
        return [_wall_atom("y", f, k, Rel.EQ)]
    atoms = []
    if not is_inf(f):
        atoms.append(_wall_atom(f, "y", k, Rel.LT if fs else Rel.LE))
    if not is_inf(g):
        atoms.append(_wall_atom("y", g, k, Rel.LT if gs else Rel.LE))
    return atoms


def coalesce(cells) -> list:
    """Few convex systems whose union is the union of ``cells``.

    The cells must come from one level of a cylindrical decomposition.
    Vertically adjacent cells over a common base join into one slab, and
    slabs with the same bounding walls are merged by coalescing their bases.
    """
    cells = list(dict.fromkeys(cells))
    if not cells:
        return []
    dim = cells[0].dim
    k = dim - 1
    by_base = {}
    for c in cells:
        by_base.setdefault(getattr(c, "base", None), []).append(c)
    slabs = {}
    for base, members in by_base.items():
        bounds = {c: _vertical_bounds(c) for c in members}
        by_lower = {bounds[c][0]: c for c in members}
        successors = {}
        for c in members:
            f, strict = bounds[c][1]
            nxt = by_lower.get((f, not strict))
            if nxt is not None and not is_inf(f):
                successors[c] = nxt
        later = set(successors.values())
        for c in members:
            if c in later:
                continue
            top = c
            while top in successors:
                top = successors[top]
            key = (bounds[c][0], bounds[top][1])
            slabs.setdefault(key, []).append(base)
    out = []
    for (lower, upper), bases in slabs.items():
        atoms = _bound_atoms(lower, upper, k)
        if k == 0:
            out.append(ConjSystem.make(1, atoms))
        else:
            for piece in coalesce(bases):
                out.append(piece.lift(dim).with_atoms(atoms))
    return out
