"""Stars of cells, their materialization as open cells, and open covers.

In a special decomposition the star of a cell is an open cell whose walls
are continuous piecewise affine: over each base cell ``B`` of the star of
the projection, the cells of the star fill ``(f_B, g_B)_B``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Union

from .arith import NEG_INF, POS_INF, AffineFunc, Infinity, eval_ext, ext_lt, is_inf
from .cells import (Band, CheckResult, Decomposition, Graph, Interval, Order, _Cell, coalesce,
                    compare_on_cell, ranges_meet)
from .decompose import is_special, linear_cdt, specialize
from .errors import DimensionError, PreconditionError
from .semilinear import (ConjSystem, Constraint, Rel, SemilinearSet, conj_subset, equal_sets,
                         feasible, is_empty, is_open, project_set, reduce_atoms, scale_point,
                         subset, union_all)


# ------------------------------------------------------------------- stars

def _as_set(X, dim: int) -> SemilinearSet:
    if isinstance(X, _Cell):
        S = X.as_set()
    elif isinstance(X, ConjSystem):
        S = SemilinearSet.from_conj(X)
    else:
        S = X
    if S.dim != dim:
        raise DimensionError(f"set of dimension {S.dim} against a decomposition of Q^{dim}")
    return S


def star_indices(D: Decomposition, X) -> list:
    """Indices of the cells of ``D`` whose closure meets ``X``.

    A cell can only be in the star of ``X`` if its projection is in the
    star of the projection of ``X``, which prunes the candidates level by
    level; the final test is always a symbolic closure intersection.
    """
    S = _as_set(X, D.dim)
    if D.base is None:
        candidates = range(len(D.cells))
    else:
        below = X.base if isinstance(X, _Cell) else project_set(S, D.dim - 1)
        candidates = sorted(i for b in star_indices(D.base, below) for i in D.fibers[b])
    out = []
    for i in candidates:
        cl = D.cells[i].closure()
        if any(feasible(cl & d) for d in S.disjuncts):
            out.append(i)
    return out


def star_indices_direct(D: Decomposition, X) -> list:
    """Definition-level star: every cell is tested, no pruning."""
    S = _as_set(X, D.dim)
    return [i for i, c in enumerate(D.cells)
            if any(feasible(c.closure() & d) for d in S.disjuncts)]


def star_cells(D: Decomposition, X) -> list:
    return [D.cells[i] for i in star_indices(D, X)]


def st(D: Decomposition, X) -> SemilinearSet:
    """Union of the star of ``X``."""
    return SemilinearSet(D.dim, tuple(D.cells[i].formula() for i in star_indices(D, X)))


class SpecialStars:
    """Stars of cells of a decomposition known to be special.

    There the frontier condition holds, so ``C ∩ cl(E) ≠ ∅`` iff
    ``C ⊆ cl(E)`` iff the sample point of ``C`` lies in ``cl(E)``; stars
    reduce to point evaluations. Results are memoized per level.
    """

    def __init__(self, D: Decomposition):
        self.D = D
        self._memo = {id(level): {} for level in D.tower()}

    def __call__(self, level: Decomposition, i: int) -> list:
        memo = self._memo[id(level)]
        hit = memo.get(i)
        if hit is not None:
            return hit
        s = level.cells[i].sample_point()
        if level.base is None:
            out = [j for j, c in enumerate(level.cells) if c.closure_contains(s)]
        else:
            below = self(level.base, level.base_index[i])
            nums, den = scale_point(s[:-1])
            y = s[-1]
            values = {}

            def at(w):
                if is_inf(w):
                    return w
                v = values.get(id(w))
                if v is None:
                    v = values[id(w)] = w.at_scaled(nums, den)
                return v

            out = []
            for b in below:
                for j in level.fibers[b]:
                    c = level.cells[j]
                    if isinstance(c, Graph):
                        if at(c.wall) == y:
                            out.append(j)
                    elif not ext_lt(y, at(c.lo)) and not ext_lt(at(c.hi), y):
                        out.append(j)
            out.sort()
        memo[i] = out
        return out


def _symbolic_stars(level: Decomposition, i: int) -> list:
    return star_indices(level, level.cells[i])


# -------------------------------------------------------------- open cells

@dataclass(frozen=True)
class PiecewiseAffineFunc:
    """A wall given piece by piece over pairwise disjoint base cells."""

    pieces: tuple

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple((c, w) for c, w in self.pieces))

    @property
    def domains(self) -> tuple:
        return tuple(c for c, _ in self.pieces)

    def constant(self) -> Optional[Infinity]:
        """The infinity this function is identically equal to, if any."""
        walls = {w for _, w in self.pieces if is_inf(w)}
        if len(walls) == 1 and all(is_inf(w) for _, w in self.pieces):
            return walls.pop()
        return None

    def __call__(self, point):
        for c, w in self.pieces:
            if c.contains(point):
                return eval_ext(w, point)
        raise PreconditionError(f"{point} lies outside the domain of the piecewise function")


@dataclass(frozen=True)
class OpenInterval:
    lo: Union[object, Infinity]
    hi: Union[object, Infinity]

    dim = 1

    def as_interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    def realized_set(self) -> SemilinearSet:
        return self.as_interval().as_set()


@dataclass(frozen=True)
class OpenBand:
    """``(lower, upper)`` over the open cell ``base``; walls share their domains."""

    base: Union["OpenBand", OpenInterval]
    lower: PiecewiseAffineFunc
    upper: PiecewiseAffineFunc

    @property
    def dim(self):
        return self.base.dim + 1

    def realized_set(self) -> SemilinearSet:
        return self._realized

    @cached_property
    def _realized(self) -> SemilinearSet:
        # pieces sharing both walls are merged through their domains
        k = self.base.dim
        y = AffineFunc.coordinate(k + 1, k)
        groups = {}
        for (B, f), (_, g) in zip(self.lower.pieces, self.upper.pieces):
            groups.setdefault((f, g), []).append(B)
        disjuncts = []
        for (f, g), domains in groups.items():
            atoms = []
            if not is_inf(f):
                atoms.append(Constraint.make(f.extend(k + 1) - y, Rel.LT))
            if not is_inf(g):
                atoms.append(Constraint.make(y - g.extend(k + 1), Rel.LT))
            for piece in coalesce(domains):
                disjuncts.append(piece.lift(k + 1).with_atoms(atoms))
        return SemilinearSet(k + 1, tuple(disjuncts))


OpenPLCell = Union[OpenInterval, OpenBand]


def realized_set(U: OpenPLCell) -> SemilinearSet:
    return U.realized_set()


def _materialize(D: Decomposition, i: int, stars) -> OpenPLCell:
    if D.base is None:
        lo, hi = POS_INF, NEG_INF
        for j in stars(D, i):
            a, b = D.cells[j].bounds
            if ext_lt(a, lo):
                lo = a
            if ext_lt(hi, b):
                hi = b
        return OpenInterval(lo, hi)
    b = D.base_index[i]
    base_cell = _materialize(D.base, b, stars)
    star = set(stars(D, i))
    lower, upper = [], []
    for bj in stars(D.base, b):
        fiber = D.fibers[bj]
        pos = [k for k, j in enumerate(fiber) if j in star]
        B = D.base.cells[bj]
        if not pos:
            raise PreconditionError(f"star misses the fiber over {B}; stars do not commute with projection")
        if pos != list(range(pos[0], pos[-1] + 1)):
            raise PreconditionError(f"star is not vertically connected over {B}")
        bottom, top = D.cells[fiber[pos[0]]], D.cells[fiber[pos[-1]]]
        if not isinstance(bottom, Band) or not isinstance(top, Band):
            raise PreconditionError(f"star ends on a graph over {B}; it is not open")
        lower.append((B, bottom.lo))
        upper.append((B, top.hi))
    return OpenBand(base_cell, PiecewiseAffineFunc(tuple(lower)), PiecewiseAffineFunc(tuple(upper)))


def star_open_cell(D: Decomposition, C, check: bool = True) -> OpenPLCell:
    """The star of the cell ``C`` of a special ``D`` as an open cell.

    ``C`` is a cell of ``D`` or its index. Raises PreconditionError when
    ``D`` is not special (the star need not be open then).
    """
    i = C if isinstance(C, int) else D.index.get(C)
    if i is None:
        raise PreconditionError("the cell is not a cell of the decomposition")
    if check:
        r = is_special(D)
        if not r:
            raise PreconditionError(f"decomposition is not special: {r.detail}")
    return _materialize(D, i, _symbolic_stars)


# ------------------------------------------------------------ verification

def continuity_violations(f: PiecewiseAffineFunc) -> list:
    """Pairs of pieces ``(A, B)`` with ``A ⊆ cl(B)`` where ``f_B`` differs from ``f_A`` on ``A``."""
    out = []
    for A, fa in f.pieces:
        for B, fb in f.pieces:
            if A is B or A == B:
                continue
            if not ranges_meet(_x1(A), _x1(B)):
                continue
            if not conj_subset(A.formula(), B.closure()):
                continue
            if compare_on_cell(fb, fa, A) is not Order.EQ:
                out.append((A, B))
    return out


def _x1(c):
    while c.dim > 1:
        c = c.base
    return c.bounds


def check_open_cell(U: OpenPLCell) -> CheckResult:
    """Structural invariants of an open cell, level by level."""
    if isinstance(U, OpenInterval):
        if not ext_lt(U.lo, U.hi):
            return CheckResult(False, "empty open interval", (U,))
        return CheckResult(True)
    sub = check_open_cell(U.base)
    if not sub:
        return sub
    if U.lower.domains != U.upper.domains:
        return CheckResult(False, "lower and upper walls have different domains", (U,))
    for B, f in U.lower.pieces:
        if B.dim != U.base.dim:
            return CheckResult(False, "piece domain of the wrong dimension", (B,))
    for (B, f), (_, g) in zip(U.lower.pieces, U.upper.pieces):
        if compare_on_cell(f, g, B) is not Order.LT:
            return CheckResult(False, "lower wall is not below the upper wall", (B,))
    domain = SemilinearSet(U.base.dim, tuple(B.formula() for B in U.lower.domains))
    if not equal_sets(domain, U.base.realized_set()):
        return CheckResult(False, "wall domains do not tile the base cell", (U,))
    for name, w in (("lower", U.lower), ("upper", U.upper)):
        bad = continuity_violations(w)
        if bad:
            return CheckResult(False, f"{name} wall is discontinuous", bad[0])
    return CheckResult(True)


def _frontier_pairs(D: Decomposition) -> list:
    """Pairs ``(i, j)`` with ``C_i ∩ cl(C_j) ≠ ∅``, pruned through the projections."""
    if D.base is None:
        r = D.x1_ranges
        pairs = [(i, j) for i in range(len(D.cells)) for j in range(len(D.cells))
                 if ranges_meet(r[i], r[j])
                 and feasible(D.cells[i].formula() & D.cells[j].closure())]
        return pairs
    pairs = []
    fibers = D.fibers
    for a, b in _frontier_pairs(D.base):
        for i in fibers[a]:
            fi = D.cells[i].formula()
            for j in fibers[b]:
                if feasible(fi & D.cells[j].closure()):
                    pairs.append((i, j))
    return pairs


def frontier_check(D: Decomposition) -> CheckResult:
    """Whenever a cell meets the closure of another it lies inside that closure."""
    for i, j in sorted(_frontier_pairs(D)):
        if i == j:
            continue
        if not conj_subset(D.cells[i].formula(), D.cells[j].closure()):
            return CheckResult(False, "cell meets a closure without being contained in it",
                               (D.cells[i], D.cells[j]))
    return CheckResult(True)


# ------------------------------------------------------------------ covers

@dataclass
class Cover:
    """An open cover together with the special decomposition it came from."""

    decomposition: Decomposition
    indices: list
    cells: list


def cover_with_decomposition(X: SemilinearSet, reduce: bool = True, check: bool = True) -> Cover:
    """Stars of the cells inside ``X`` of a special decomposition partitioning ``X``.

    With ``reduce`` only cells with no other cell of ``X`` in their
    frontier are kept: if ``C ⊆ cl(E)`` then ``st(E) ⊆ st(C)``, so the
    union is unchanged.
    """
    if check:
        if is_empty(X):
            raise PreconditionError("cannot cover the empty set")
        if not is_open(X):
            raise PreconditionError("the set to cover is not open")
    D = specialize(linear_cdt([reduce_atoms(X)], X.dim))
    stars = SpecialStars(D)
    inside = [i for i, c in enumerate(D.cells)
              if any(d.holds(c.sample_point()) for d in X.disjuncts)]
    if reduce:
        inside_set = set(inside)
        dominated = set()
        for j in inside:
            for i in stars(D, j):
                if i != j and i in inside_set:
                    dominated.add(i)
        inside = [i for i in inside if i not in dominated]
    cells = [_materialize(D, i, stars) for i in inside]
    return Cover(D, inside, cells)


def cover_open_set(X: SemilinearSet, reduce: bool = True) -> list:
    """Finitely many open cells whose union is the non-empty open set ``X``."""
    return cover_with_decomposition(X, reduce=reduce).cells


def cover_union(cells: Sequence[OpenPLCell], dim: int) -> SemilinearSet:
    return union_all(dim, (U.realized_set() for U in cells))


def minimize_cover(cells: Sequence[OpenPLCell], X: SemilinearSet) -> list:
    """Greedy removal, in input order, of cells not needed to cover ``X``."""
    out = []
    seen = set()
    for U in cells:
        if U not in seen:
            seen.add(U)
            out.append(U)
    k = 0
    while k < len(out):
        rest = out[:k] + out[k + 1:]
        if rest and subset(X, cover_union(rest, X.dim)):
            out = rest
        else:
            k += 1
    return out
