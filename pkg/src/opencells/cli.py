"""Command-line front end.

Exit status: 0 when the command succeeded and its checks passed, 1 when a
verification failed (the report carries a witness), 2 on bad input or
exhausted resources.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import jsonio
from .arith import parse_rational
from .cells import CheckResult, is_decomposition
from .decompose import is_special, linear_cdt, partitions, specialize
from .errors import OpenCellsError
from .oracle import GridSpec, default_grid, grid_compare, membership
from .render import render_svg
from .selftest import run_selftest
from .semilinear import equal_sets, is_open, subset
from .star import cover_open_set, cover_union, frontier_check, st, star_indices, star_open_cell


class UsageError(OpenCellsError):
    pass


def _read(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return jsonio.loads(text)


def _write(obj, out):
    text = obj if isinstance(obj, str) else jsonio.dumps(obj) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_sets(path: str) -> list:
    obj = _read(path)
    items = obj if isinstance(obj, list) else [obj]
    return [jsonio.set_from_json(x) for x in items]


def _read_set(path: str):
    sets = _read_sets(path)
    if len(sets) != 1:
        raise UsageError(f"{path} must hold a single set")
    return sets[0]


def _grid(args, dim: int):
    if args.grid_box is None and args.grid_denom is None:
        return default_grid(dim)
    g = default_grid(dim)
    box = args.grid_box if args.grid_box is not None else g.box_radius
    denom = args.grid_denom if args.grid_denom is not None else g.denominator
    return GridSpec(parse_rational(str(box)), denom, dim)


# ---------------------------------------------------------------- commands

def cmd_decompose(args) -> int:
    sets = _read_sets(args.input)
    dims = {A.dim for A in sets}
    if len(dims) != 1:
        raise UsageError("all input sets must have the same dimension")
    _write(jsonio.decomposition_to_json(linear_cdt(sets, dims.pop())), args.output)
    return 0


def cmd_specialize(args) -> int:
    D = jsonio.decomposition_from_json(_read(args.input))
    _write(jsonio.decomposition_to_json(specialize(D)), args.output)
    return 0


def cmd_star(args) -> int:
    D = jsonio.decomposition_from_json(_read(args.decomposition))
    if args.cell is not None:
        if not 0 <= args.cell < len(D.cells):
            raise UsageError(f"cell index {args.cell} out of range 0..{len(D.cells) - 1}")
        X = D.cells[args.cell]
    else:
        X = _read_set(args.set)
    indices = star_indices(D, X)
    S = st(D, X)
    out = {"indices": indices, "star": jsonio.set_to_json(S), "open": is_open(S), "open_cell": None}
    if args.cell is not None and is_special(D):
        out["open_cell"] = jsonio.open_cell_to_json(star_open_cell(D, args.cell, check=False))
    _write(out, args.output)
    return 0


def cmd_cover(args) -> int:
    X = _read_set(args.input)
    _write(jsonio.cover_to_json(cover_open_set(X)), args.output)
    return 0


def _grid_partition(D, grid) -> CheckResult:
    """Every grid point lies in exactly one cell."""
    counts = None
    for c in D.cells:
        m = membership(c.as_set(), grid).astype(int)
        counts = m if counts is None else counts + m
    bad = (counts != 1).nonzero()[0]
    if len(bad):
        point = grid.points()[int(bad[0])]
        return CheckResult(False, "grid point not in exactly one cell", (tuple(point),))
    return CheckResult(True)


def _verify_cover(cells, X, grid) -> CheckResult:
    dim = X.dim
    for U in cells:
        if U.dim != dim:
            return CheckResult(False, "cover cell of the wrong dimension", (U,))
        if not is_open(U.realized_set()):
            return CheckResult(False, "cover cell is not open", (U,))
        if not subset(U.realized_set(), X):
            return CheckResult(False, "cover cell is not inside the set", (U,))
    union = cover_union(cells, dim)
    if not equal_sets(union, X):
        return CheckResult(False, "union of the cover differs from the set", (union,))
    bad = grid_compare(union, X, grid)
    if bad:
        return CheckResult(False, "grid points where the union and the set disagree", tuple(bad[:5]))
    return CheckResult(True)


def cmd_verify(args) -> int:
    obj = _read(args.input)
    grid_given = args.grid_box is not None or args.grid_denom is not None
    if args.check == "cover":
        if args.set is None:
            raise UsageError("--check cover needs --set")
        cells = jsonio.cover_from_json(obj)
        X = _read_set(args.set)
        result = _verify_cover(cells, X, _grid(args, X.dim))
    else:
        D = jsonio.decomposition_from_json(obj)
        if args.check == "partition":
            result = is_decomposition(D.cells, D.dim)
            if result and args.set is not None:
                A = _read_set(args.set)
                result = partitions(D, A)
            if result and grid_given:
                result = _grid_partition(D, _grid(args, D.dim))
        elif args.check == "special":
            result = is_special(D)
        else:
            result = frontier_check(D)
    _write(jsonio.report(args.check, result), args.output)
    return 0 if result.ok else 1


def cmd_render(args) -> int:
    obj = _read(args.input)
    if isinstance(obj, list):
        target = jsonio.cover_from_json(obj)
    else:
        target = jsonio.decomposition_from_json(obj)
    _write(render_svg(target, args.bound), args.svg)
    return 0


def cmd_selftest(args) -> int:
    rep = run_selftest(args.seed)
    _write(rep, args.output)
    return 0 if rep["status"] == "pass" else 1


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="opencells",
                                description="Exact linear cell decompositions, stars and open covers.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_output(sp):
        sp.add_argument("-o", "--output", help="write JSON here instead of stdout")
        return sp

    sp = with_output(sub.add_parser("decompose", help="sign-invariant decomposition partitioning the input sets"))
    sp.add_argument("input", help="set JSON, or a list of sets")
    sp.set_defaults(func=cmd_decompose)

    sp = with_output(sub.add_parser("specialize", help="special refinement of a decomposition"))
    sp.add_argument("input")
    sp.set_defaults(func=cmd_specialize)

    sp = with_output(sub.add_parser("star", help="star of a cell or of a set"))
    sp.add_argument("--decomposition", required=True)
    which = sp.add_mutually_exclusive_group(required=True)
    which.add_argument("--cell", type=int, help="index of a top-level cell")
    which.add_argument("--set", help="set JSON")
    sp.set_defaults(func=cmd_star)

    sp = with_output(sub.add_parser("cover", help="cover an open set by open cells"))
    sp.add_argument("input", help="set JSON")
    sp.set_defaults(func=cmd_cover)

    sp = with_output(sub.add_parser("verify", help="check a decomposition or a cover"))
    sp.add_argument("input", help="decomposition JSON, or cover JSON for --check cover")
    sp.add_argument("--check", required=True, choices=["partition", "special", "frontier", "cover"])
    sp.add_argument("--set", help="set JSON: the covered set, or a set to be partitioned")
    sp.add_argument("--grid-box", help="grid half-width, a rational")
    sp.add_argument("--grid-denom", type=int, help="grid denominator")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("render", help="SVG of a decomposition or cover in dimension 1 or 2")
    sp.add_argument("input")
    sp.add_argument("--svg", required=True, help="output SVG file")
    sp.add_argument("--bound", type=int, help="half-width of the drawing window")
    sp.set_defaults(func=cmd_render)

    sp = with_output(sub.add_parser("selftest", help="seeded invariant suite"))
    sp.add_argument("--seed", type=int, default=42)
    sp.set_defaults(func=cmd_selftest)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except (OpenCellsError, ValueError, RuntimeError, RecursionError) as exc:
        print(f"opencells: error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
