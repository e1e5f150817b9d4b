"""Fourier-Motzkin elimination over integer rows.

A system lives on Q^n and consists of

* equalities ``(coefs, const)`` meaning ``coefs·x + const = 0``;
* inequalities ``(coefs, const, strict)`` meaning ``coefs·x + const < 0``
  when ``strict`` and ``<= 0`` otherwise.

All coefficients are Python ints, rows are kept primitive (gcd 1) so that
syntactic duplicates collapse. Equalities are substituted out before any
inequality is touched.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

_CACHE_SIZE = 1 << 17


def _primitive(coefs, const):
    g = gcd(const, *coefs)
    if g > 1:
        return tuple(c // g for c in coefs), const // g
    return tuple(coefs), const


def norm_eq(coefs, const):
    coefs, const = _primitive(coefs, const)
    for c in coefs:
        if c:
            if c < 0:
                return tuple(-x for x in coefs), -const
            break
    else:
        if const < 0:
            return coefs, -const
    return coefs, const


def norm_ineq(coefs, const, strict):
    coefs, const = _primitive(coefs, const)
    return coefs, const, strict


def constant_truth(const, strict) -> bool:
    return const < 0 if strict else const <= 0


def _put(rows, coefs, const, strict) -> bool:
    """Insert a normalized inequality keeping the tightest row per normal.

    Returns False if the row is a false constant row.
    """
    if not any(coefs):
        return constant_truth(const, strict)
    old = rows.get(coefs)
    if old is None or const > old[0] or (const == old[0] and strict and not old[1]):
        rows[coefs] = (const, strict)
    return True


def _substitute(coefs, const, j, e_coefs, e_const):
    """Remove x_j from a row using the equality ``e`` (e_coefs[j] != 0)."""
    a = coefs[j]
    if not a:
        return coefs, const
    c = e_coefs[j]
    m = c if c > 0 else -c
    s = a if c > 0 else -a
    new = tuple(m * x - s * y for x, y in zip(coefs, e_coefs))
    return new, m * const - s * e_const


def _pick_eq_var(coefs, allowed):
    best = None
    for j in allowed:
        c = coefs[j]
        if c and (best is None or abs(c) <= abs(coefs[best])):
            best = j
    return best


def _eliminate(n, eqs, ineqs, variables, trace):
    """Eliminate ``variables`` from the system.

    Returns ``(remaining_eqs, rows)`` or None when infeasibility was
    detected. ``rows`` maps normals to ``(const, strict)``. Steps are
    appended to ``trace`` when it is a list.
    """
    allowed = sorted(variables)
    rows = {}
    pending = []
    for coefs, const in eqs:
        if not any(coefs):
            if const:
                return None
            continue
        pending.append((coefs, const))
    for coefs, const, strict in ineqs:
        if not _put(rows, coefs, const, strict):
            return None
    kept_eqs = []
    while pending:
        e_coefs, e_const = pending.pop()
        j = _pick_eq_var(e_coefs, allowed)
        if j is None:
            kept_eqs.append((e_coefs, e_const))
            continue
        if trace is not None:
            trace.append(("eq", j, e_coefs, e_const))
        nxt = []
        for coefs, const in pending:
            coefs, const = norm_eq(*_substitute(coefs, const, j, e_coefs, e_const))
            if not any(coefs):
                if const:
                    return None
                continue
            nxt.append((coefs, const))
        pending = nxt
        kept = []
        for coefs, const in kept_eqs:
            coefs, const = norm_eq(*_substitute(coefs, const, j, e_coefs, e_const))
            if not any(coefs):
                if const:
                    return None
                continue
            kept.append((coefs, const))
        kept_eqs = kept
        old = rows
        rows = {}
        for coefs, (const, strict) in old.items():
            coefs, const, strict = norm_ineq(*_substitute(coefs, const, j, e_coefs, e_const), strict)
            if not _put(rows, coefs, const, strict):
                return None
    remaining = [j for j in allowed if any(c[j] for c in rows)]
    while remaining:
        best = None
        best_cost = None
        for j in remaining:
            p = q = 0
            for coefs in rows:
                if coefs[j] > 0:
                    p += 1
                elif coefs[j] < 0:
                    q += 1
            cost = p * q - p - q
            if best is None or cost <= best_cost:
                best, best_cost = j, cost
        j = best
        upper, lower, nxt = [], [], {}
        for coefs, (const, strict) in rows.items():
            a = coefs[j]
            if a > 0:
                upper.append((coefs, const, strict))
            elif a < 0:
                lower.append((coefs, const, strict))
            else:
                nxt[coefs] = (const, strict)
        if trace is not None:
            trace.append(("ineq", j, upper, lower))
        for uc, uk, us in upper:
            a = uc[j]
            for lc, lk, ls in lower:
                b = -lc[j]
                coefs = tuple(b * x + a * y for x, y in zip(uc, lc))
                coefs, const, strict = norm_ineq(coefs, b * uk + a * lk, us or ls)
                if not _put(nxt, coefs, const, strict):
                    return None
        rows = nxt
        remaining = [v for v in remaining if v != j and any(c[v] for c in rows)]
    return kept_eqs, rows


@lru_cache(maxsize=_CACHE_SIZE)
def feasible_rows(n: int, eqs: frozenset, ineqs: frozenset) -> bool:
    result = _eliminate(n, eqs, ineqs, range(n), None)
    return result is not None


def _dot(coefs, const, values, skip):
    total = Fraction(const)
    for i, c in enumerate(coefs):
        if c and i != skip:
            total += c * values[i]
    return total


@lru_cache(maxsize=_CACHE_SIZE)
def witness_rows(n: int, eqs: frozenset, ineqs: frozenset):
    """A rational point of the system, or None."""
    trace = []
    # sorted input keeps the trace, hence the witness, independent of set order
    result = _eliminate(n, sorted(eqs), sorted(ineqs), range(n), trace)
    if result is None:
        return None
    values = [Fraction(0)] * n
    for step in reversed(trace):
        if step[0] == "eq":
            _, j, coefs, const = step
            values[j] = -_dot(coefs, const, values, j) / coefs[j]
            continue
        _, j, upper, lower = step
        # the system is feasible, so lo == hi only happens with both sides closed
        lo = hi = None
        for coefs, const, _strict in lower:
            v = _dot(coefs, const, values, j) / -coefs[j]
            if lo is None or v > lo:
                lo = v
        for coefs, const, _strict in upper:
            v = -_dot(coefs, const, values, j) / coefs[j]
            if hi is None or v < hi:
                hi = v
        if lo is not None and hi is not None:
            values[j] = lo if lo == hi else (lo + hi) / 2
        elif lo is not None:
            values[j] = lo + 1
        elif hi is not None:
            values[j] = hi - 1
        else:
            values[j] = Fraction(0)
    return tuple(values)


def project_rows(n: int, eqs, ineqs, keep: int, keep_only=None):
    """Eliminate coordinates ``keep..n-1``; None if the system is empty.

    With ``keep_only`` every coordinate but that one is eliminated. The
    returned rows are still written on Q^n with zero coefficients on the
    eliminated coordinates.
    """
    if keep_only is None:
        variables = range(keep, n)
    else:
        variables = [j for j in range(n) if j != keep_only]
    result = _eliminate(n, eqs, ineqs, variables, None)
    if result is None:
        return None
    kept_eqs, rows = result
    return kept_eqs, [(c, k, s) for c, (k, s) in rows.items()]


def clear_caches():
    feasible_rows.cache_clear()
    witness_rows.cache_clear()
