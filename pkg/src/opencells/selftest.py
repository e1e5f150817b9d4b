"""A seeded run of the main invariants with a deterministic JSON report."""
from __future__ import annotations

from . import jsonio
from .cells import is_decomposition
from .decompose import is_special, linear_cdt, refines, specialize
from .fixtures import (box_set, l_shape_set, non_special_decomposition, non_special_star_cells,
                       star_point)
from .oracle import (GridSpec, default_grid, grid_compare, grid_has_point, random_decomposition,
                     random_open_instance, random_system)
from .semilinear import equal_sets, feasible, is_open, subset, witness
from .star import cover_open_set, cover_union, frontier_check, st, star_indices


def _entry(name: str, instances: int, failures: list) -> dict:
    return {"check": name, "status": "fail" if failures else "pass",
            "instances": instances, "failures": failures}


def check_fixture() -> dict:
    D = non_special_decomposition()
    failures = []
    i = D.locate(star_point())
    listed = {c for c, _ in non_special_star_cells()}
    if {D.cells[j] for j in star_indices(D, D.cells[i])} != listed:
        failures.append("star of the point differs from the listed cells")
    if is_open(st(D, D.cells[i])):
        failures.append("star of the point is open")
    if is_special(D) or frontier_check(D):
        failures.append("fixture passes a check it must fail")
    E = specialize(D)
    if not (is_special(E) and frontier_check(E) and refines(E, D)):
        failures.append("specialized fixture fails a check")
    if not all(is_open(st(E, c)) for c in E.cells):
        failures.append("some star of the specialized fixture is not open")
    return _entry("fixture", 1, failures)


def check_kernel(seed: int, count: int) -> dict:
    failures = []
    for k in range(count):
        n = 1 + k % 3
        S = random_system(f"{seed}/{k}", n, 4, 3, box=2)
        grid = GridSpec(2, 4 if n < 3 else 2, n)
        ok = feasible(S)
        if grid_has_point(S, grid) and not ok:
            failures.append({"instance": k, "problem": "grid point in an infeasible system"})
        if ok:
            w = witness(S)
            if w is None or not S.holds(w):
                failures.append({"instance": k, "problem": "witness does not satisfy the system"})
    return _entry("feasibility", count, failures)


def check_covers(seed: int, count: int) -> dict:
    failures = []
    for k in range(count):
        X = random_open_instance(f"{seed}/{k}", 2, 5, 3)
        cells = cover_open_set(X)
        U = cover_union(cells, 2)
        problems = []
        if not all(is_open(c.realized_set()) for c in cells):
            problems.append("cell not open")
        if not all(subset(c.realized_set(), X) for c in cells):
            problems.append("cell not inside the set")
        if not equal_sets(U, X) or grid_compare(U, X, default_grid(2)):
            problems.append("union differs from the set")
        if problems:
            failures.append({"instance": k, "problems": problems})
    for name, X in (("box", box_set()), ("l-shape", l_shape_set())):
        if not equal_sets(cover_union(cover_open_set(X), 2), X):
            failures.append({"instance": name, "problems": ["union differs from the set"]})
    return _entry("cover", count + 2, failures)


def check_specialize(seed: int, count: int) -> dict:
    failures = []
    for k in range(count):
        D = random_decomposition(f"{seed}/{k}", 2)
        E = specialize(D)
        names = [name for name, r in (("special", is_special(E)), ("refines", refines(E, D)),
                                      ("decomposition", is_decomposition(E.cells, 2)),
                                      ("frontier", frontier_check(E))) if not r]
        if names:
            failures.append({"instance": k, "failed": names})
    return _entry("specialize", count, failures)


def check_round_trip(seed: int, count: int) -> dict:
    failures = []
    for k in range(count):
        X = random_open_instance(f"{seed}/{k}", 2, 4, 3)
        text = jsonio.dumps(jsonio.set_to_json(X))
        if jsonio.set_from_json(jsonio.loads(text)) != X:
            failures.append({"instance": k, "object": "set"})
        D = linear_cdt([X], 2)
        if jsonio.decomposition_from_json(jsonio.decomposition_to_json(D)) != D:
            failures.append({"instance": k, "object": "decomposition"})
        cells = cover_open_set(X)
        if jsonio.cover_from_json(jsonio.cover_to_json(cells)) != cells:
            failures.append({"instance": k, "object": "cover"})
    return _entry("round-trip", count, failures)


def run_selftest(seed: int, scale: int = 1) -> dict:
    """All checks on instances derived from ``seed``; no timings, so reproducible."""
    checks = [
        check_fixture(),
        check_kernel(seed, 60 * scale),
        check_covers(seed, 8 * scale),
        check_specialize(seed, 8 * scale),
        check_round_trip(seed, 4 * scale),
    ]
    status = "pass" if all(c["status"] == "pass" for c in checks) else "fail"
    return {"seed": seed, "status": status, "checks": checks}
