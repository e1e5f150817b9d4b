"""Brute-force rational-grid oracles and seeded random instances.

The grid oracle only evaluates atoms at points; it shares no code with the
elimination engine and is used to corroborate its answers.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import rat
from .cells import Decomposition, line_decomposition
from .decompose import _difference_functionals, _sign_invariant, _wall_key, _wall_of, stack_subsets
from .errors import DimensionError, ResourceError
from .semilinear import ConjSystem, Constraint, Rel, SemilinearSet, interior, is_empty

DEFAULT_GRID_CAP = 10 ** 6


@dataclass(frozen=True)
class GridSpec:
    """Points ``a/q`` with ``|a/q| <= box_radius`` in every coordinate."""

    box_radius: Fraction
    denominator: int
    ambient_dim: int
    cap: int = DEFAULT_GRID_CAP

    def __post_init__(self):
        object.__setattr__(self, "box_radius", rat(self.box_radius))
        if self.box_radius <= 0 or self.denominator <= 0:
            raise ValueError("box radius and denominator must be positive")

    @property
    def side(self) -> int:
        return 2 * int(self.box_radius * self.denominator) + 1

    @property
    def size(self) -> int:
        return self.side ** self.ambient_dim

    def numerators(self) -> np.ndarray:
        """Integer grid ``a`` of shape (size, n); the points are ``a / q``."""
        if self.size > self.cap:
            raise ResourceError(f"grid of {self.size} points exceeds the cap {self.cap}")
        m = int(self.box_radius * self.denominator)
        axis = np.arange(-m, m + 1, dtype=np.int64)
        mesh = np.meshgrid(*([axis] * self.ambient_dim), indexing="ij")
        return np.stack([g.ravel() for g in mesh], axis=1)

    def points(self):
        q = self.denominator
        for row in self.numerators():
            yield tuple(Fraction(int(a), q) for a in row)


def default_grid(n: int) -> GridSpec:
    if n == 1:
        return GridSpec(Fraction(3), 8, 1)
    if n == 2:
        return GridSpec(Fraction(3), 4, 2)
    return GridSpec(Fraction(2), 2, n)


def _atom_values(atoms, grid: np.ndarray, q: int) -> np.ndarray:
    """``q * (coefs·x + const)`` on every grid point, one column per atom."""
    coefs = [a.coefs for a in atoms]
    consts = [a.const for a in atoms]
    big = max((abs(v) for row in coefs for v in row), default=0)
    bigk = max((abs(v) for v in consts), default=0)
    bound = (big * grid.shape[1] + bigk) * (int(np.abs(grid).max(initial=0)) + q + 1)
    if bound < 2 ** 62:
        M = np.array(coefs, dtype=np.int64).reshape(len(atoms), grid.shape[1])
        k = np.array(consts, dtype=np.int64)
        return grid @ M.T + q * k
    M = np.array(coefs, dtype=object).reshape(len(atoms), grid.shape[1])
    k = np.array(consts, dtype=object)
    return grid.astype(object) @ M.T + q * k


def membership(A: SemilinearSet, grid: GridSpec) -> np.ndarray:
    """Boolean vector: which grid points lie in ``A``."""
    if A.dim != grid.ambient_dim:
        raise DimensionError(f"set of dimension {A.dim} on a grid of dimension {grid.ambient_dim}")
    pts = grid.numerators()
    q = grid.denominator
    result = np.zeros(len(pts), dtype=bool)
    for d in A.disjuncts:
        if not d.constraints:
            result[:] = True
            break
        vals = _atom_values(d.constraints, pts, q)
        ok = np.ones(len(pts), dtype=bool)
        for col, a in enumerate(d.constraints):
            v = vals[:, col]
            if a.rel is Rel.LT:
                ok &= v < 0
            elif a.rel is Rel.LE:
                ok &= v <= 0
            else:
                ok &= v == 0
        result |= ok
    return result


def grid_compare(A: SemilinearSet, B: SemilinearSet, grid: GridSpec) -> list:
    """Grid points where membership in ``A`` and ``B`` differ."""
    if A.dim != B.dim:
        raise DimensionError(f"dimension mismatch: {A.dim} vs {B.dim}")
    diff = membership(A, grid) != membership(B, grid)
    pts = grid.numerators()[diff]
    q = grid.denominator
    return [tuple(Fraction(int(a), q) for a in row) for row in pts]


def grid_has_point(S: ConjSystem, grid: GridSpec) -> bool:
    return bool(membership(SemilinearSet.from_conj(S), grid).any())


# ------------------------------------------------------------ random sets

_RELS = (Rel.LT, Rel.LT, Rel.LE, Rel.LE, Rel.EQ)


def _random_atom(rng: random.Random, n: int, coef_bound: int, rels=_RELS) -> Constraint:
    while True:
        coefs = [rng.randint(-coef_bound, coef_bound) for _ in range(n)]
        if any(coefs):
            break
    const = rng.randint(-coef_bound, coef_bound)
    return Constraint.make(coefs, rng.choice(rels), const)


def random_instance(seed, n: int, max_atoms: int, coef_bound: int, rels=_RELS) -> SemilinearSet:
    """A seeded DNF with at most ``max_atoms`` atoms in 1 to 3 disjuncts."""
    rng = random.Random(f"instance:{seed}:{n}:{max_atoms}:{coef_bound}")
    total = rng.randint(1, max_atoms)
    k = rng.randint(1, min(3, total))
    sizes = [1] * k
    for _ in range(total - k):
        sizes[rng.randrange(k)] += 1
    disjuncts = [ConjSystem.make(n, [_random_atom(rng, n, coef_bound, rels) for _ in range(s)])
                 for s in sizes]
    return SemilinearSet(n, tuple(disjuncts))


def random_open_instance(seed, n: int, max_atoms: int, coef_bound: int) -> SemilinearSet:
    """Interior of a random set; the first non-empty one over sub-seeds."""
    for attempt in itertools.count():
        A = random_instance(f"{seed}/{attempt}", n, max_atoms, coef_bound)
        U = interior(A)
        if not is_empty(U):
            return U


def random_system(seed, n: int, max_atoms: int, coef_bound: int, box: int = 10) -> ConjSystem:
    """A random conjunction intersected with the box ``|x_i| <= box``."""
    rng = random.Random(f"system:{seed}:{n}")
    atoms = [_random_atom(rng, n, coef_bound) for _ in range(rng.randint(1, max_atoms))]
    for i in range(n):
        e = [0] * n
        e[i] = 1
        atoms.append(Constraint.make(e, Rel.LE, -box))
        e[i] = -1
        atoms.append(Constraint.make(e, Rel.LE, -box))
    return ConjSystem.make(n, atoms)


def random_decomposition(seed, n: int, max_constraints: int = 6, coef_bound: int = 3) -> Decomposition:
    """A cylindrical decomposition that is usually not special.

    The top-level walls come from random atoms; above each base cell a
    random subset of them is stacked, so walls appear and disappear
    between adjacent base cells.
    """
    rng = random.Random(f"decomposition:{seed}:{n}")
    k = rng.randint(1, max_constraints)
    atoms = [_random_atom(rng, n, coef_bound) for _ in range(k)]
    walls = sorted({_wall_of(a.coefs, a.const) for a in atoms if a.coefs[-1]}, key=_wall_key)
    lower = {(a.coefs[:-1], a.const) for a in atoms if not a.coefs[-1]}
    lower |= _difference_functionals(walls)
    if n == 1:
        return line_decomposition(rng.randint(-coef_bound, coef_bound) for _ in range(k))
    if n == 2:
        for _ in range(rng.randint(0, 2)):
            lower.add(((1,), rng.randint(-coef_bound, coef_bound)))
    base = _sign_invariant(lower, n - 1)
    choice = [[w for w in walls if rng.random() < 0.6] for _ in base.cells]
    return stack_subsets(base, choice)
