"""JSON encodings of sets, cells, decompositions, open cells and reports.

Rationals are strings ``"p/q"`` (``"p"`` when ``q = 1``), infinities are
``"+inf"`` and ``"-inf"``. Inside a decomposition a cell names its
projection by index into the base decomposition; standalone cells nest
their bases.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .arith import NEG_INF, POS_INF, AffineFunc, format_rational, is_inf, parse_rational
from .cells import Band, CheckResult, Decomposition, Graph, Interval, Point, _Cell
from .errors import DimensionError, InputError
from .semilinear import ConjSystem, Constraint, Rel, SemilinearSet
from .star import OpenBand, OpenInterval, PiecewiseAffineFunc


def _rational(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise InputError(f"expected a rational string, got {s!r}")
    try:
        return parse_rational(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {s!r}") from exc


def _field(obj, key):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"missing field {key!r}")
    return obj[key]


# ---------------------------------------------------------------- sets

def atom_to_json(c: Constraint) -> dict:
    return {"coef": [str(a) for a in c.coefs], "const": str(c.const), "rel": c.rel.value}


def atom_from_json(obj, dim: int) -> Constraint:
    coefs = [_rational(a) for a in _field(obj, "coef")]
    if len(coefs) != dim:
        raise DimensionError(f"atom with {len(coefs)} coefficients in dimension {dim}")
    rel = _field(obj, "rel")
    if rel not in ("<", "<=", "="):
        raise InputError(f"unknown relation {rel!r}")
    return Constraint.make(coefs, Rel(rel), _rational(_field(obj, "const")))


def set_to_json(A: SemilinearSet) -> dict:
    return {"dim": A.dim, "dnf": [[atom_to_json(c) for c in d.constraints] for d in A.disjuncts]}


def set_from_json(obj) -> SemilinearSet:
    dim = _field(obj, "dim")
    if not isinstance(dim, int) or dim < 1:
        raise InputError(f"bad dimension {dim!r}")
    dnf = _field(obj, "dnf")
    if not isinstance(dnf, list):
        raise InputError("dnf must be a list of conjunctions")
    disjuncts = []
    for conj in dnf:
        if not isinstance(conj, list):
            raise InputError("each conjunction must be a list of atoms")
        disjuncts.append(ConjSystem.make(dim, [atom_from_json(a, dim) for a in conj]))
    return SemilinearSet(dim, tuple(disjuncts))


# ---------------------------------------------------------------- walls

def _bound_to_json(v):
    if v is POS_INF:
        return "+inf"
    if v is NEG_INF:
        return "-inf"
    return format_rational(v)


def _bound_from_json(s):
    if s == "+inf":
        return POS_INF
    if s == "-inf":
        return NEG_INF
    return _rational(s)


def wall_to_json(w):
    if is_inf(w):
        return _bound_to_json(w)
    return {"coef": [format_rational(c) for c in w.coefs], "const": format_rational(w.const)}


def wall_from_json(obj, arity: int):
    if obj in ("+inf", "-inf"):
        return _bound_from_json(obj)
    coefs = [_rational(c) for c in _field(obj, "coef")]
    if len(coefs) != arity:
        raise DimensionError(f"wall of arity {len(coefs)} over Q^{arity}")
    return AffineFunc(tuple(coefs), _rational(_field(obj, "const")))


# ---------------------------------------------------------------- cells

def cell_to_json(c: _Cell, base_ref=None) -> dict:
    """Nested encoding; ``base_ref`` maps base cells to indices instead."""
    if isinstance(c, Point):
        return {"kind": "point", "value": format_rational(c.value)}
    if isinstance(c, Interval):
        return {"kind": "interval", "lo": _bound_to_json(c.lo), "hi": _bound_to_json(c.hi)}
    base = cell_to_json(c.base) if base_ref is None else base_ref[c.base]
    if isinstance(c, Graph):
        return {"kind": "graph", "base": base, "wall": wall_to_json(c.wall)}
    return {"kind": "band", "base": base, "lo": wall_to_json(c.lo), "hi": wall_to_json(c.hi)}


def cell_from_json(obj, bases=None) -> _Cell:
    """Inverse of :func:`cell_to_json`; ``bases`` resolves index references."""
    kind = _field(obj, "kind")
    try:
        if kind == "point":
            return Point(_rational(_field(obj, "value")))
        if kind == "interval":
            return Interval(_bound_from_json(_field(obj, "lo")), _bound_from_json(_field(obj, "hi")))
        if kind not in ("graph", "band"):
            raise InputError(f"unknown cell kind {kind!r}")
        ref = _field(obj, "base")
        if bases is None:
            base = cell_from_json(ref)
        else:
            if not isinstance(ref, int) or not 0 <= ref < len(bases):
                raise InputError(f"bad base reference {ref!r}")
            base = bases[ref]
        if kind == "graph":
            return Graph(base, wall_from_json(_field(obj, "wall"), base.dim))
        return Band(base, wall_from_json(_field(obj, "lo"), base.dim),
                    wall_from_json(_field(obj, "hi"), base.dim))
    except (TypeError, AttributeError) as exc:
        raise InputError(f"malformed cell {obj!r}") from exc


def decomposition_to_json(D: Decomposition) -> dict:
    if D.base is None:
        return {"dim": D.dim, "cells": [cell_to_json(c) for c in D.cells], "base": None}
    ref = D.base.index
    return {"dim": D.dim, "cells": [cell_to_json(c, ref) for c in D.cells],
            "base": decomposition_to_json(D.base)}


def decomposition_from_json(obj) -> Decomposition:
    dim = _field(obj, "dim")
    if not isinstance(dim, int) or dim < 1:
        raise InputError(f"bad dimension {dim!r}")
    raw_base = obj.get("base")
    base = None if raw_base is None else decomposition_from_json(raw_base)
    if (base is None) != (dim == 1):
        raise InputError("a decomposition needs a base exactly when dim > 1")
    if base is not None and base.dim != dim - 1:
        raise DimensionError(f"base of dimension {base.dim} under Q^{dim}")
    cells = _field(obj, "cells")
    if not isinstance(cells, list):
        raise InputError("cells must be a list")
    bases = None if base is None else base.cells
    return Decomposition(dim, tuple(cell_from_json(c, bases) for c in cells), base)


# ----------------------------------------------------------- open cells

def _pwa_to_json(f: PiecewiseAffineFunc) -> dict:
    return {"pwa": [{"cell": cell_to_json(c), "wall": wall_to_json(w)} for c, w in f.pieces]}


def _pwa_from_json(obj, arity: int) -> PiecewiseAffineFunc:
    pieces = _field(obj, "pwa")
    if not isinstance(pieces, list):
        raise InputError("pwa must be a list of pieces")
    return PiecewiseAffineFunc(tuple((cell_from_json(_field(p, "cell")),
                                      wall_from_json(_field(p, "wall"), arity)) for p in pieces))


def open_cell_to_json(U) -> dict:
    if isinstance(U, OpenInterval):
        return {"kind": "interval", "lo": _bound_to_json(U.lo), "hi": _bound_to_json(U.hi)}
    return {"kind": "band", "base": open_cell_to_json(U.base),
            "lo": _pwa_to_json(U.lower), "hi": _pwa_to_json(U.upper)}


def open_cell_from_json(obj):
    kind = _field(obj, "kind")
    if kind == "interval":
        return OpenInterval(_bound_from_json(_field(obj, "lo")), _bound_from_json(_field(obj, "hi")))
    if kind != "band":
        raise InputError(f"unknown open cell kind {kind!r}")
    base = open_cell_from_json(_field(obj, "base"))
    return OpenBand(base, _pwa_from_json(_field(obj, "lo"), base.dim),
                    _pwa_from_json(_field(obj, "hi"), base.dim))


def cover_to_json(cells) -> list:
    return [open_cell_to_json(U) for U in cells]


def cover_from_json(obj) -> list:
    if not isinstance(obj, list):
        raise InputError("a cover is a list of open cells")
    return [open_cell_from_json(U) for U in obj]


# -------------------------------------------------------------- reports

def value_to_json(x):
    """Encode a witness: points, cells, sets, decompositions or scalars."""
    if isinstance(x, _Cell):
        return cell_to_json(x)
    if isinstance(x, (OpenInterval, OpenBand)):
        return open_cell_to_json(x)
    if isinstance(x, SemilinearSet):
        return set_to_json(x)
    if isinstance(x, ConjSystem):
        return set_to_json(SemilinearSet.from_conj(x))
    if isinstance(x, Decomposition):
        return decomposition_to_json(x)
    if isinstance(x, Fraction):
        return format_rational(x)
    if is_inf(x):
        return _bound_to_json(x)
    if isinstance(x, (list, tuple)):
        return [value_to_json(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def report(check: str, result: CheckResult) -> dict:
    out = {"check": check, "status": "pass" if result.ok else "fail",
           "witnesses": [value_to_json(w) for w in result.witness]}
    if result.detail:
        out["detail"] = result.detail
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
