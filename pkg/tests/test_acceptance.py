"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""
import subprocess
import sys
import time

import pytest

import lemma_checks as L
from opencells.cells import is_decomposition
from opencells.decompose import is_special, refines, specialize
from opencells.fixtures import non_special_decomposition, non_special_star_cells, star_point
from opencells.oracle import (GridSpec, default_grid, grid_compare, grid_has_point,
                              random_decomposition, random_open_instance, random_system)
from opencells.semilinear import SemilinearSet, equal_sets, feasible, is_open, subset, witness
from opencells.star import cover_union, cover_open_set, frontier_check, st, star_cells


@pytest.fixture
def verdict(capsys):
    def say(number, title, ok, elapsed, limit=None, note=""):
        status = "PASS" if ok and (limit is None or elapsed < limit) else "FAIL"
        timing = f"{elapsed:.1f}s" + (f", limit {limit}s" if limit is not None else "")
        extra = f"; {note}" if note else ""
        with capsys.disabled():
            print(f"\n[criterion {number}] {status}: {title} ({timing}{extra})")
    return say


def test_criterion_1_fixture(verdict):
    t0 = time.perf_counter()
    problems = []
    D = non_special_decomposition()
    C = D.cells[D.locate(star_point())]
    listed = [c for c, _ in non_special_star_cells()]
    star = star_cells(D, C)
    S = st(D, C)
    if set(star) != set(listed):
        problems.append("star cells differ from the listed cells")
    if not equal_sets(S, SemilinearSet(2, tuple(c.formula() for c in listed))):
        problems.append("star set differs from the union of the listed cells")
    if is_open(S):
        problems.append("star is open")
    if is_special(D):
        problems.append("fixture is special")
    if frontier_check(D):
        problems.append("fixture passes the frontier check")
    E = specialize(D)
    for name, r in (("special", is_special(E)), ("frontier", frontier_check(E)),
                    ("refines", refines(E, D))):
        if not r:
            problems.append(f"specialized fixture fails {name}")
    closed = [i for i, c in enumerate(E.cells) if not is_open(st(E, c))]
    if closed:
        problems.append(f"{len(closed)} stars of the specialized fixture are not open")
    elapsed = time.perf_counter() - t0
    verdict(1, "non-special fixture and its special refinement", not problems, elapsed, 5,
            f"{len(E.cells)} cells after specializing")
    assert problems == []
    assert elapsed < 5


def _cover_failures(X, grid):
    cells = cover_open_set(X)
    out = []
    if not all(is_open(U.realized_set()) for U in cells):
        out.append("open")
    if not all(subset(U.realized_set(), X) for U in cells):
        out.append("inside")
    U = cover_union(cells, X.dim)
    if not equal_sets(U, X):
        out.append("equal")
    if grid_compare(U, X, grid):
        out.append("grid")
    return out, len(cells)


def test_criterion_2_covers(verdict):
    t0 = time.perf_counter()
    failures = []
    sizes = []
    for n, count, atoms, coef in ((2, 100, 8, 5), (3, 20, 6, 3)):
        grid = default_grid(n)
        for seed in range(count):
            X = random_open_instance(seed, n, atoms, coef)
            bad, k = _cover_failures(X, grid)
            sizes.append(k)
            if bad:
                failures.append((n, seed, bad))
    elapsed = time.perf_counter() - t0
    verdict(2, "open covers of 100 planar and 20 spatial open sets", not failures, elapsed, 120,
            f"{sum(sizes)} cover cells, at most {max(sizes)} per set")
    assert failures == []
    assert elapsed < 120


def test_criterion_3_stratification(verdict):
    t0 = time.perf_counter()
    failures = []
    for seed in range(100):
        D = random_decomposition(seed, 2)
        E = specialize(D)
        names = [name for name, r in (("special", is_special(E)), ("refines", refines(E, D)),
                                      ("decomposition", is_decomposition(E.cells, 2)),
                                      ("frontier", frontier_check(E))) if not r]
        if names:
            failures.append((seed, names))
    elapsed = time.perf_counter() - t0
    verdict(3, "special refinements of 100 planar decompositions", not failures, elapsed, 120)
    assert failures == []
    assert elapsed < 120


def test_criterion_4_lemmas(verdict, capsys):
    t0 = time.perf_counter()
    failures = {}
    for name, check in L.LEMMAS.items():
        t = time.perf_counter()
        bad = [b for k in range(50) for b in check(k)]
        failures[name] = bad
        with capsys.disabled():
            print(f"\n    {name}: 50 instances, {len(bad)} failures ({time.perf_counter() - t:.1f}s)", end="")
    elapsed = time.perf_counter() - t0
    ok = not any(failures.values())
    verdict(4, "lemma-level property suite", ok, elapsed, 180)
    assert {k: v for k, v in failures.items() if v} == {}
    assert elapsed < 180


def test_criterion_5_kernel(verdict):
    t0 = time.perf_counter()
    grids = {1: GridSpec(10, 4, 1), 2: GridSpec(10, 4, 2), 3: GridSpec(10, 2, 3)}
    disagreements, bad_witness, decisive = [], [], 0
    for seed in range(1000):
        n = 1 + seed % 3
        S = random_system(seed, n, 5, 5, box=10)
        ok = feasible(S)
        if grid_has_point(S, grids[n]):
            decisive += 1
            if not ok:
                disagreements.append(seed)
        w = witness(S)
        if ok != (w is not None) or (w is not None and not S.holds(w)):
            bad_witness.append(seed)
    elapsed = time.perf_counter() - t0
    verdict(5, "feasibility against grid search on 1000 bounded systems",
            not disagreements and not bad_witness, elapsed, 60,
            f"grid decisive on {decisive}")
    assert disagreements == [] and bad_witness == []
    assert elapsed < 60


def test_criterion_6_selftest_determinism(verdict):
    t0 = time.perf_counter()
    cmd = [sys.executable, "-m", "opencells.cli", "selftest", "--seed", "42"]
    runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout and runs[0].stdout != b""
    passed = all(r.returncode == 0 for r in runs)
    elapsed = time.perf_counter() - t0
    verdict(6, "selftest --seed 42 report is byte-identical across two runs", same, elapsed,
            note="report status pass" if passed else "report status fail")
    assert same
    assert passed
