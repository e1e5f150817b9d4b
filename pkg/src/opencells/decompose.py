"""Cylindrical linear decompositions and their refinement to special ones."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .arith import NEG_INF, POS_INF, AffineFunc, evaluate, is_inf
from .cells import Band, CheckResult, Decomposition, Graph, line_decomposition, ranges_meet
from .errors import DimensionError, InputError, PreconditionError
from .fourier_motzkin import norm_eq
from .semilinear import (Constraint, Rel, SemilinearSet, conj_subset, feasible, intersect,
                         is_empty, subset)


def _canonical(coefs, const):
    """Sign-free normal form of a functional: only its zero set matters."""
    return norm_eq(tuple(coefs), const)


def _wall_of(coefs, const) -> AffineFunc:
    """Solve ``coefs·x + const = 0`` for the last coordinate."""
    a = coefs[-1]
    return AffineFunc(tuple(Fraction(-c, a) for c in coefs[:-1]), Fraction(-const, a))


def _functional(f: AffineFunc):
    row = f.integer_row()
    return row[:-1], row[-1]


def _wall_key(w: AffineFunc):
    return (w.coefs, w.const)


def _sign_invariant(funcs: Iterable, n: int) -> Decomposition:
    """A decomposition of Q^n on whose cells every functional has constant sign.

    ``funcs`` holds integer pairs ``(coefs, const)`` on Q^n.
    """
    funcs = {_canonical(c, k) for c, k in funcs if any(c)}
    if n == 1:
        return line_decomposition(Fraction(-k, c[0]) for c, k in funcs)
    walls = set()
    lower = set()
    for c, k in funcs:
        if c[-1]:
            walls.add(_wall_of(c, k))
        else:
            lower.add((c[:-1], k))
    walls = sorted(walls, key=_wall_key)
    lower |= _difference_functionals(walls)
    base = _sign_invariant(lower, n - 1)
    return stack(base, walls)


def _difference_functionals(walls):
    out = set()
    for f, g in combinations(walls, 2):
        d = f - g
        if not d.is_constant():
            out.add(_functional(d))
    return out


def _fiber(B, walls) -> list:
    s = B.sample_point()
    level = {}
    for w in walls:
        v = evaluate(w, s)
        if v not in level:
            level[v] = w
    cells = []
    lo = NEG_INF
    for v in sorted(level):
        w = level[v]
        cells.append(Band(B, lo, w, check=False))
        cells.append(Graph(B, w))
        lo = w
    cells.append(Band(B, lo, POS_INF, check=False))
    return cells


def stack(base: Decomposition, walls: Sequence[AffineFunc]) -> Decomposition:
    """Stack graphs and bands of ``walls`` over every cell of ``base``.

    The walls must be pairwise comparable on every base cell, so the order
    at the sample point is the order on the whole cell. Walls equal at the
    sample (hence on the cell) are merged.
    """
    walls = sorted(set(walls), key=_wall_key)
    cells = []
    for B in base.cells:
        cells.extend(_fiber(B, walls))
    return Decomposition(base.dim + 1, tuple(cells), base)


def _target_functionals(targets: Sequence[SemilinearSet], n: int):
    funcs = set()
    for A in targets:
        if A.dim != n:
            raise DimensionError(f"target of dimension {A.dim} for a decomposition of Q^{n}")
        for a in A.atoms():
            if not a.is_constant():
                funcs.add((a.coefs, a.const))
    return funcs


def linear_cdt(targets: Sequence[SemilinearSet], n: int) -> Decomposition:
    """A cylindrical linear decomposition of Q^n partitioning every target.

    Every atom of every target is sign-invariant on each output cell.
    """
    if n < 1:
        raise PreconditionError("dimension must be at least 1")
    return _sign_invariant(_target_functionals(targets, n), n)


def pwa_linearize(pieces: Sequence, n: int) -> Decomposition:
    """Decomposition adapted to a piecewise affine function.

    ``pieces`` is a sequence of ``(guard, AffineFunc)`` with pairwise
    disjoint guards. Each output cell lies in at most one guard, so the
    function restricted to a cell is a single affine piece.
    """
    pieces = list(pieces)
    for guard, f in pieces:
        if guard.dim != n or f.arity != n:
            raise DimensionError("guards and pieces must live on Q^n")
    for (g1, _), (g2, _) in combinations(pieces, 2):
        if not is_empty(intersect(g1, g2)):
            raise InputError("piece guards overlap")
    return linear_cdt([g for g, _ in pieces], n)


def piece_on_cell(pieces: Sequence, cell):
    """The affine piece whose guard contains ``cell`` (None outside all guards)."""
    s = cell.sample_point()
    for guard, f in pieces:
        if any(d.holds(s) for d in guard.disjuncts):
            return f
    return None


def top_walls(D: Decomposition) -> list:
    walls = set()
    for c in D.cells:
        for w in c.walls():
            walls.add(w)
    return sorted(walls, key=_wall_key)


def specialize(D: Decomposition) -> Decomposition:
    """A special linear decomposition refining ``D``.

    Walls of the top level form the family F; the base is a special
    decomposition partitioning the coincidence loci ``{f = g}`` of F and
    the cells of the projection of ``D``; every wall of F is stacked over
    every base cell.
    """
    if D.dim == 1:
        return D
    F = top_walls(D)
    lower = _difference_functionals(F)
    for B in D.base.cells:
        for a in B.formula().constraints:
            lower.add((a.coefs, a.const))
    base = specialize(_sign_invariant(lower, D.dim - 1))
    return stack(base, F)


# ------------------------------------------------------------------ checks

def closure_meets(D: Decomposition):
    """Pairs ``(i, j)`` of cell indices with ``cl(C_i) ∩ cl(C_j) ≠ ∅``.

    Closures of cells project onto closures of their bases, so candidate
    pairs are taken over meeting base pairs only.
    """
    if D.base is None:
        pairs = []
        r = D.x1_ranges
        for i in range(len(D.cells)):
            for j in range(len(D.cells)):
                if ranges_meet(r[i], r[j]):
                    pairs.append((i, j))
        return pairs
    below = closure_meets(D.base)
    fibers = D.fibers
    pairs = []
    for a, b in below:
        for i in fibers[a]:
            ci = D.cells[i].closure()
            for j in fibers[b]:
                if feasible(ci & D.cells[j].closure()):
                    pairs.append((i, j))
    return pairs


def is_special(D: Decomposition) -> CheckResult:
    """No graph ``Γ(h|A)`` passes strictly inside a band ``(f, g)_B`` at a
    point of ``cl(A) ∩ cl(B)``; recursively on the projection.

    The first violation is reported with graphs scanned by increasing cell
    dimension.
    """
    if D.dim == 1:
        return CheckResult(True)
    sub = is_special(D.base)
    if not sub:
        return CheckResult(False, f"projection is not special: {sub.detail}", sub.witness)
    base = D.base
    neighbours = {}
    for a, b in closure_meets(base):
        neighbours.setdefault(a, []).append(b)
    bi = D.base_index
    fibers = D.fibers
    graphs = [i for i, c in enumerate(D.cells) if isinstance(c, Graph)]
    graphs.sort(key=lambda i: (D.cells[i].cell_dim, i))
    for i in graphs:
        g = D.cells[i]
        A = g.base
        h = g.wall
        for b in sorted(neighbours.get(bi[i], ())):
            B = base.cells[b]
            common = A.closure() & B.closure()
            for j in fibers[b]:
                band = D.cells[j]
                if not isinstance(band, Band):
                    continue
                atoms = []
                if not is_inf(band.lo):
                    atoms.append(Constraint.make(band.lo - h, Rel.LT))
                if not is_inf(band.hi):
                    atoms.append(Constraint.make(h - band.hi, Rel.LT))
                if feasible(common.with_atoms(atoms)):
                    return CheckResult(False, "graph passes strictly inside a band over a shared closure point",
                                       (g, band))
    return CheckResult(True)


def refines(C: Decomposition, D: Decomposition) -> CheckResult:
    """Every cell of ``D`` is a union of cells of ``C``.

    Both are partitions of Q^n, so it suffices that each cell of ``C`` lies
    inside the cell of ``D`` containing its sample point.
    """
    if C.dim != D.dim:
        raise DimensionError(f"dimension mismatch: {C.dim} vs {D.dim}")
    for c in C.cells:
        d = D.cells[D.locate(c.sample_point())]
        if not conj_subset(c.formula(), d.formula()):
            return CheckResult(False, "cell straddles a cell of the coarser decomposition", (c, d))
    return CheckResult(True)


def partitions(D: Decomposition, A: SemilinearSet) -> CheckResult:
    """Every cell of ``D`` is inside ``A`` or disjoint from it."""
    for c in D.cells:
        f = c.formula()
        inside = any(d.holds(c.sample_point()) for d in A.disjuncts)
        if inside:
            if not subset(c.as_set(), A):
                return CheckResult(False, "cell meets the target and its complement", (c,))
        elif any(feasible(f & d) for d in A.disjuncts):
            return CheckResult(False, "cell meets the target and its complement", (c,))
    return CheckResult(True)


def stack_subsets(base: Decomposition, wall_sets) -> Decomposition:
    """Like :func:`stack` but with its own wall list above each base cell."""
    cells = []
    for B, walls in zip(base.cells, wall_sets):
        cells.extend(_fiber(B, sorted(set(walls), key=_wall_key)))
    return Decomposition(base.dim + 1, tuple(cells), base)
