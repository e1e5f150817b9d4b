"""Semilinear sets in disjunctive normal form and their exact set algebra.

Atoms are ``coefs·x + const ⋈ 0`` with ``⋈`` one of ``<``, ``<=``, ``=``.
Feasibility of a conjunction is decided by :mod:`fourier_motzkin`; every
boolean and topological operation is reduced to such feasibility tests.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from . import fourier_motzkin as fm
from .arith import NEG_INF, POS_INF, AffineFunc, ext_lt, integer_row, rat
from .errors import DimensionError, ResourceError

DEFAULT_CLAUSE_LIMIT = 100_000


class Rel(enum.Enum):
    LT = "<"
    LE = "<="
    EQ = "="


@dataclass(frozen=True)
class Constraint:
    """``coefs·x + const ⋈ 0`` with coprime integer coefficients.

    Build through :meth:`make` to get the normalized form. The all-zero row
    is reserved for the two constants (:data:`TRUE_ATOM`, :data:`FALSE_ATOM`).
    """

    coefs: tuple
    const: int
    rel: Rel

    @classmethod
    def make(cls, func, rel, const=None) -> "Constraint":
        """Normalize ``func ⋈ 0``; ``func`` is an AffineFunc or a coefficient list."""
        if isinstance(rel, str):
            rel = Rel(rel)
        if isinstance(func, AffineFunc):
            row = integer_row(func.coefs, func.const)
        else:
            row = integer_row([rat(c) for c in func], rat(const or 0))
        coefs, k = row[:-1], row[-1]
        if not any(coefs):
            if rel is Rel.EQ:
                ok = k == 0
            else:
                ok = fm.constant_truth(k, rel is Rel.LT)
            return true_atom(len(coefs)) if ok else false_atom(len(coefs))
        if rel is Rel.EQ:
            coefs, k = fm.norm_eq(coefs, k)
        return cls(tuple(coefs), k, rel)

    @property
    def dim(self) -> int:
        return len(self.coefs)

    @property
    def func(self) -> AffineFunc:
        return AffineFunc(self.coefs, self.const)

    def is_constant(self) -> bool:
        return not any(self.coefs)

    def truth(self) -> bool:
        """Truth value of a constant atom."""
        if self.rel is Rel.EQ:
            return self.const == 0
        return fm.constant_truth(self.const, self.rel is Rel.LT)

    def holds(self, point: Sequence[Fraction]) -> bool:
        v = self.const
        for c, x in zip(self.coefs, point):
            if c:
                v += c * x
        if self.rel is Rel.LT:
            return v < 0
        if self.rel is Rel.LE:
            return v <= 0
        return v == 0

    def holds_scaled(self, nums, den: int) -> bool:
        """``holds`` at the point ``nums / den`` (integers, ``den > 0``)."""
        v = self.const * den
        for c, x in zip(self.coefs, nums):
            if c:
                v += c * x
        if self.rel is Rel.LT:
            return v < 0
        if self.rel is Rel.LE:
            return v <= 0
        return v == 0

    def negations(self) -> tuple:
        """Atoms whose disjunction is the complement; pairwise disjoint."""
        neg = tuple(-c for c in self.coefs)
        if self.rel is Rel.LT:
            return (Constraint(neg, -self.const, Rel.LE),)
        if self.rel is Rel.LE:
            return (Constraint(neg, -self.const, Rel.LT),)
        return (Constraint(self.coefs, self.const, Rel.LT), Constraint(neg, -self.const, Rel.LT))

    def weakened(self) -> "Constraint":
        if self.rel is Rel.LT:
            return Constraint(self.coefs, self.const, Rel.LE)
        return self

    def lift(self, dim: int) -> "Constraint":
        return Constraint(self.coefs + (0,) * (dim - len(self.coefs)), self.const, self.rel)

    def __str__(self):
        return f"{self.func} {self.rel.value} 0"


_REL_KEY = {Rel.LT: "<", Rel.LE: "<=", Rel.EQ: "="}


def _atom_key(c: Constraint):
    return (c.coefs, c.const, _REL_KEY[c.rel])


def _range_of(i, eqs, rows):
    lo, hi = NEG_INF, POS_INF
    for coefs, const in eqs:
        a = coefs[i]
        if a:
            v = Fraction(-const, a)
            return v, v
    for coefs, const, _strict in rows:
        a = coefs[i]
        if a > 0:
            v = Fraction(-const, a)
            if hi is POS_INF or v < hi:
                hi = v
        elif a < 0:
            v = Fraction(-const, a)
            if lo is NEG_INF or v > lo:
                lo = v
    return lo, hi


def scale_point(point):
    """Integer numerators and common positive denominator of a rational point."""
    point = [x if isinstance(x, Fraction) else Fraction(x) for x in point]
    den = lcm(*(x.denominator for x in point)) if point else 1
    return [x.numerator * (den // x.denominator) for x in point], den


_SLACK = 1e-9
_SMALL = 8  # below this many candidates boxes cost more than they save


def _lo_float(v) -> float:
    if v is NEG_INF:
        return -np.inf
    f = float(v)
    return f - _SLACK * (1 + abs(f))


def _hi_float(v) -> float:
    if v is POS_INF:
        return np.inf
    f = float(v)
    return f + _SLACK * (1 + abs(f))


class BoxIndex:
    """Float bounding boxes of conjunctions, widened so pruning stays exact.

    A candidate is discarded only when its widened box misses the widened
    query, which implies the exact sets are disjoint.
    """

    def __init__(self, systems: Sequence["ConjSystem"], dim: int):
        self.systems = list(systems)
        k = len(self.systems)
        self.lo = np.full((k, dim), np.inf)
        self.hi = np.full((k, dim), -np.inf)
        for j, e in enumerate(self.systems):
            b = e.box
            if b is None:
                continue
            self.lo[j] = [_lo_float(l) for l, _ in b]
            self.hi[j] = [_hi_float(h) for _, h in b]

    def meeting(self, box, among=None):
        """Indices (from ``among`` or all) whose box meets ``box``."""
        idx = np.arange(len(self.systems)) if among is None else among
        if box is None:
            return idx[:0]
        qlo = np.array([_lo_float(l) for l, _ in box])
        qhi = np.array([_hi_float(h) for _, h in box])
        ok = np.all((self.lo[idx] <= qhi) & (self.hi[idx] >= qlo), axis=1)
        return idx[ok]

    def containing(self, point, among=None):
        idx = np.arange(len(self.systems)) if among is None else among
        q = np.array([float(x) for x in point])
        ok = np.all((self.lo[idx] <= q) & (self.hi[idx] >= q), axis=1)
        return idx[ok]


def boxes_meet(b1, b2) -> bool:
    if b1 is None or b2 is None:
        return False
    for (l1, h1), (l2, h2) in zip(b1, b2):
        if ext_lt(h1, l2) or ext_lt(h2, l1):
            return False
    return True


def true_atom(dim: int) -> Constraint:
    return Constraint((0,) * dim, 0, Rel.EQ)


def false_atom(dim: int) -> Constraint:
    return Constraint((0,) * dim, 1, Rel.LT)


@dataclass(frozen=True)
class ConjSystem:
    """A finite conjunction of atoms on Q^dim; the empty conjunction is Q^dim."""

    dim: int
    constraints: tuple = ()

    @classmethod
    def make(cls, dim: int, constraints: Iterable[Constraint] = ()) -> "ConjSystem":
        """Drop true constants, collapse to a single false atom if any is false."""
        eqs = set()
        ineqs = {}
        for c in constraints:
            coefs = c.coefs
            if len(coefs) != dim:
                raise DimensionError(f"atom of dimension {len(coefs)} in a system of dimension {dim}")
            if not any(coefs):
                if c.truth():
                    continue
                return cls(dim, (false_atom(dim),))
            if c.rel is Rel.EQ:
                eqs.add(c)
                continue
            # same normal: the larger constant, then strictness, is tighter
            old = ineqs.get(coefs)
            if old is None or c.const > old.const or (c.const == old.const and c.rel is Rel.LT):
                ineqs[coefs] = c
        atoms = list(eqs)
        atoms.extend(ineqs.values())
        atoms.sort(key=_atom_key)
        return cls(dim, tuple(atoms))

    def __and__(self, other: "ConjSystem") -> "ConjSystem":
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return ConjSystem.make(self.dim, self.constraints + other.constraints)

    def with_atoms(self, atoms: Iterable[Constraint]) -> "ConjSystem":
        return ConjSystem.make(self.dim, self.constraints + tuple(atoms))

    def lift(self, dim: int) -> "ConjSystem":
        if dim == self.dim:
            return self
        return ConjSystem(dim, tuple(c.lift(dim) for c in self.constraints))

    def weakened(self) -> "ConjSystem":
        return ConjSystem.make(self.dim, (c.weakened() for c in self.constraints))

    @cached_property
    def _rows(self):
        eqs, ineqs = set(), set()
        for c in self.constraints:
            if c.rel is Rel.EQ:
                eqs.add((c.coefs, c.const))
            else:
                ineqs.add((c.coefs, c.const, c.rel is Rel.LT))
        return frozenset(eqs), frozenset(ineqs)

    def holds(self, point) -> bool:
        nums, den = scale_point(point)
        return self.holds_scaled(nums, den)

    def holds_scaled(self, nums, den: int) -> bool:
        return all(c.holds_scaled(nums, den) for c in self.constraints)

    @cached_property
    def box(self):
        """Closed coordinate ranges of the set, None when it is empty."""
        eqs, ineqs = self._rows
        if not fm.feasible_rows(self.dim, eqs, ineqs):
            return None
        out = []
        for i in range(self.dim):
            res = fm.project_rows(self.dim, eqs, ineqs, 0, keep_only=i)
            if res is None:
                return None
            out.append(_range_of(i, *res))
        return tuple(out)

    def __str__(self):
        if not self.constraints:
            return "true"
        return " & ".join(str(c) for c in self.constraints)


@dataclass(frozen=True)
class SemilinearSet:
    """A union of conjunctions; no disjuncts is the empty set."""

    dim: int
    disjuncts: tuple = ()

    def __post_init__(self):
        for d in self.disjuncts:
            if d.dim != self.dim:
                raise DimensionError(f"disjunct of dimension {d.dim} in a set of dimension {self.dim}")

    @classmethod
    def universe(cls, dim: int) -> "SemilinearSet":
        return cls(dim, (ConjSystem(dim),))

    @classmethod
    def empty(cls, dim: int) -> "SemilinearSet":
        return cls(dim, ())

    @classmethod
    def of(cls, dim: int, *conjunctions) -> "SemilinearSet":
        """Build from iterables of atoms, one iterable per disjunct."""
        return cls(dim, tuple(ConjSystem.make(dim, atoms) for atoms in conjunctions))

    @classmethod
    def from_conj(cls, conj: ConjSystem) -> "SemilinearSet":
        return cls(conj.dim, (conj,))

    def atoms(self):
        for d in self.disjuncts:
            yield from d.constraints

    def __str__(self):
        if not self.disjuncts:
            return "false"
        return " | ".join(f"({d})" for d in self.disjuncts)


def atom(coefs, const, rel) -> Constraint:
    """Shorthand: ``atom([1, -1], 0, "<")`` is ``x1 - x2 < 0``."""
    return Constraint.make(list(coefs), rel, const)


# ---------------------------------------------------------------- feasibility

def feasible(system: ConjSystem) -> bool:
    eqs, ineqs = system._rows
    return fm.feasible_rows(system.dim, eqs, ineqs)


def witness(system: ConjSystem):
    """A rational point satisfying ``system`` or None when it is empty."""
    eqs, ineqs = system._rows
    point = fm.witness_rows(system.dim, eqs, ineqs)
    return None if point is None else tuple(point)


def is_empty(A: SemilinearSet) -> bool:
    return not any(feasible(d) for d in A.disjuncts)


def member(A: SemilinearSet, point: Sequence) -> bool:
    if len(point) != A.dim:
        raise DimensionError(f"point of length {len(point)} in dimension {A.dim}")
    nums, den = scale_point([rat(x) for x in point])
    return any(d.holds_scaled(nums, den) for d in A.disjuncts)


def _check_dims(A: SemilinearSet, B: SemilinearSet):
    if A.dim != B.dim:
        raise DimensionError(f"dimension mismatch: {A.dim} vs {B.dim}")


# ------------------------------------------------------------ boolean algebra

def simplify(A: SemilinearSet) -> SemilinearSet:
    """Drop empty and duplicate disjuncts."""
    out, seen = [], set()
    for d in A.disjuncts:
        if d not in seen and feasible(d):
            seen.add(d)
            out.append(d)
    return SemilinearSet(A.dim, tuple(out))


def subtract_conj(region: ConjSystem, others: Sequence[ConjSystem],
                  limit: int = DEFAULT_CLAUSE_LIMIT) -> list:
    """Pairwise disjoint convex pieces covering ``region`` minus ``others``.

    ``region minus e`` is split as ``(¬a1) ∪ (a1 ∧ ¬a2) ∪ ...`` over the
    atoms of ``e``, so pieces never overlap and empty ones are dropped.
    """
    pieces = [region] if feasible(region) else []
    for e in others:
        nxt = []
        for p in pieces:
            if not feasible(p & e):
                nxt.append(p)
                continue
            acc = p
            for a in e.constraints:
                for neg in a.negations():
                    q = acc.with_atoms((neg,))
                    if feasible(q):
                        nxt.append(q)
                acc = acc.with_atoms((a,))
        pieces = nxt
        if len(pieces) > limit:
            raise ResourceError(f"DNF exceeded {limit} clauses")
        if not pieces:
            break
    return pieces


def drop_redundant(conj: ConjSystem) -> ConjSystem:
    """Remove atoms implied by the remaining ones."""
    if not feasible(conj):
        return conj
    atoms = list(conj.constraints)
    k = 0
    while k < len(atoms):
        rest = ConjSystem.make(conj.dim, atoms[:k] + atoms[k + 1:])
        if not any(feasible(rest.with_atoms((neg,))) for neg in atoms[k].negations()):
            atoms.pop(k)
        else:
            k += 1
    return ConjSystem.make(conj.dim, atoms)


def reduce_atoms(A: SemilinearSet) -> SemilinearSet:
    """Same set, with empty disjuncts and implied atoms removed."""
    return simplify(SemilinearSet(A.dim, tuple(drop_redundant(d) for d in simplify(A).disjuncts)))


def complement(A: SemilinearSet, limit: int = DEFAULT_CLAUSE_LIMIT) -> SemilinearSet:
    pieces = subtract_conj(ConjSystem(A.dim), A.disjuncts, limit)
    return SemilinearSet(A.dim, tuple(pieces))


def intersect(A: SemilinearSet, B: SemilinearSet, limit: int = DEFAULT_CLAUSE_LIMIT) -> SemilinearSet:
    _check_dims(A, B)
    out = []
    for d in A.disjuncts:
        for e in B.disjuncts:
            p = d & e
            if feasible(p):
                out.append(p)
                if len(out) > limit:
                    raise ResourceError(f"DNF exceeded {limit} clauses")
    return simplify(SemilinearSet(A.dim, tuple(out)))


def union(A: SemilinearSet, B: SemilinearSet) -> SemilinearSet:
    _check_dims(A, B)
    return simplify(SemilinearSet(A.dim, A.disjuncts + B.disjuncts))


def union_all(dim: int, sets: Iterable[SemilinearSet]) -> SemilinearSet:
    disjuncts = []
    for A in sets:
        if A.dim != dim:
            raise DimensionError(f"dimension mismatch: {dim} vs {A.dim}")
        disjuncts.extend(A.disjuncts)
    return simplify(SemilinearSet(dim, tuple(disjuncts)))


def difference(A: SemilinearSet, B: SemilinearSet, limit: int = DEFAULT_CLAUSE_LIMIT) -> SemilinearSet:
    _check_dims(A, B)
    out = []
    for d in A.disjuncts:
        out.extend(subtract_conj(d, B.disjuncts, limit))
    return SemilinearSet(A.dim, tuple(out))


def _uncovered_point(piece: ConjSystem, index: BoxIndex, among):
    """A point of ``piece`` outside every indexed set in ``among``, or None.

    ``piece`` must be feasible. The witness of the current piece either
    lies outside all candidates (done) or selects a disjunct ``e`` to
    split by; each split piece avoids ``e`` so the search terminates.
    """
    stack = [(piece, among)]
    while stack:
        piece, among = stack.pop()
        w = witness(piece)
        nums, den = scale_point(w)
        hit = None
        for j in index.containing(w, among):
            if index.systems[j].holds_scaled(nums, den):
                hit = j
                break
        if hit is None:
            return w
        rest = among[among != hit]
        acc = piece
        for a in index.systems[hit].constraints:
            for neg in a.negations():
                q = acc.with_atoms((neg,))
                if feasible(q):
                    stack.append((q, rest))
            acc = acc.with_atoms((a,))
    return None


def subset_witness(A: SemilinearSet, B: SemilinearSet):
    """A point of ``A`` not in ``B`` or None when ``A ⊆ B``."""
    _check_dims(A, B)
    index = BoxIndex(B.disjuncts, B.dim)
    small = len(B.disjuncts) <= _SMALL
    for d in A.disjuncts:
        if not feasible(d):
            continue
        candidates = range(len(B.disjuncts)) if small else index.meeting(d.box)
        among = np.array([j for j in candidates if feasible(d & index.systems[j])],
                         dtype=np.int64)
        w = _uncovered_point(d, index, among)
        if w is not None:
            return w
    return None


def subset(A: SemilinearSet, B: SemilinearSet) -> bool:
    return subset_witness(A, B) is None


def equal_sets(A: SemilinearSet, B: SemilinearSet) -> bool:
    """True iff the symmetric difference of ``A`` and ``B`` is empty."""
    return subset(A, B) and subset(B, A)


def conj_subset(region: ConjSystem, target: ConjSystem) -> bool:
    """``region ⊆ target`` for two conjunctions, atom by atom."""
    for a in target.constraints:
        for neg in a.negations():
            if feasible(region.with_atoms((neg,))):
                return False
    return True


# ------------------------------------------------------------------- topology

def closure_set(A: SemilinearSet) -> SemilinearSet:
    """Topological closure.

    A non-empty convex polyhedron has as closure the system with every
    strict atom weakened; closure commutes with finite unions.
    """
    out = [d.weakened() for d in A.disjuncts if feasible(d)]
    return simplify(SemilinearSet(A.dim, tuple(out)))


def interior(A: SemilinearSet, limit: int = DEFAULT_CLAUSE_LIMIT) -> SemilinearSet:
    return reduce_atoms(complement(closure_set(complement(A, limit)), limit))


def _touches_closure_of_outside(piece: ConjSystem, others: Sequence[ConjSystem]) -> bool:
    """Does ``piece`` meet the closure of the complement of ``∪ others``?

    Depth-first subtraction starting from Q^n; any branch whose closure
    misses ``piece`` is pruned since its sub-branches have smaller closure.
    """
    dim = piece.dim
    stack = [(ConjSystem(dim), 0)]
    while stack:
        region, i = stack.pop()
        while i < len(others) and not feasible(region & others[i]):
            i += 1
        if i == len(others):
            return True
        acc = region
        for a in others[i].constraints:
            for neg in a.negations():
                q = acc.with_atoms((neg,))
                if feasible(q) and feasible(q.weakened() & piece):
                    stack.append((q, i + 1))
            acc = acc.with_atoms((a,))
    return False


def is_open(A: SemilinearSet) -> bool:
    """True iff ``A`` misses the closure of its complement.

    Near a point of a disjunct ``P`` only disjuncts whose closure meets
    ``P`` matter, so the complement is taken locally. Disjuncts made of
    strict inequalities are open and need no test.
    """
    pieces = [d for d in simplify(A).disjuncts]
    closures = [d.weakened() for d in pieces]
    index = BoxIndex(closures, A.dim)
    for p in pieces:
        if all(c.rel is Rel.LT for c in p.constraints):
            continue  # strict inequalities cut out an open set
        near = [pieces[j] for j in index.meeting(p.box)
                if pieces[j] is not p and feasible(closures[j] & p)]
        # p itself first, then the thickest neighbours: prunes the search early
        near.sort(key=lambda q: sum(c.rel is Rel.EQ for c in q.constraints))
        near.insert(0, p)
        if _touches_closure_of_outside(p, near):
            return False
    return True


def is_closed(A: SemilinearSet) -> bool:
    return equal_sets(A, closure_set(A))


def project_set(A: SemilinearSet, keep: int) -> SemilinearSet:
    """Image of ``A`` under the projection onto the first ``keep`` coordinates."""
    if not 0 < keep <= A.dim:
        raise DimensionError(f"cannot project dimension {A.dim} to {keep}")
    out = []
    for d in A.disjuncts:
        eqs, ineqs = d._rows
        res = fm.project_rows(A.dim, eqs, ineqs, keep)
        if res is None:
            continue
        kept_eqs, rows = res
        atoms = [Constraint(c[:keep], k, Rel.EQ) for c, k in kept_eqs]
        atoms += [Constraint(c[:keep], k, Rel.LT if s else Rel.LE) for c, k, s in rows]
        out.append(ConjSystem.make(keep, atoms))
    return simplify(SemilinearSet(keep, tuple(out)))


def lift_set(A: SemilinearSet, dim: int) -> SemilinearSet:
    """Cylinder ``A × Q^(dim - A.dim)``."""
    return SemilinearSet(dim, tuple(d.lift(dim) for d in A.disjuncts))
