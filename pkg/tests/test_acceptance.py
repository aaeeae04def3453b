"""Acceptance criteria 1 to 8, run at their full limits.

Each test prints one line of the form ``PASS criterion k: ...`` or
``FAIL criterion k: ...`` (visible in ``pytest -v`` output) and then asserts.
"""

import itertools
import time

import pytest

from asmdpp.asm_dpp import (
    asm_formula,
    asm_refined_formula,
    asm_to_dpp,
    check_bijection,
    enumerate_asm,
    enumerate_asm_i,
    enumerate_dpp_i,
    main_bijection,
)
from asmdpp.patterns import flatten_rows, mt, mt_sign_rows, sgt
from asmdpp.rotation import rot
from asmdpp.suite import EXAMPLE_TRIANGLE, run_verify_grid, small_vectors

pytestmark = pytest.mark.acceptance


@pytest.fixture
def report(capsys):
    def emit(k, ok, detail, seconds):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {k}: {detail} ({seconds:.1f}s)")
    return emit


def _brute_asm_count(n):
    def good(line):
        s = 0
        for v in line:
            s += v
            if s not in (0, 1):
                return False
        return s == 1

    count = 0
    for flat in itertools.product((-1, 0, 1), repeat=n * n):
        rows = [flat[r * n:(r + 1) * n] for r in range(n)]
        if all(good(r) for r in rows) and all(good([rows[r][c] for r in range(n)]) for c in range(n)):
            count += 1
    return count


def test_criterion_1_asm_counts(report):
    t0 = time.perf_counter()
    brute = [_brute_asm_count(n) for n in (1, 2, 3)] + [len(enumerate_asm(4))]
    formula = [asm_formula(n) for n in range(1, 6)]
    dt = time.perf_counter() - t0
    ok = brute == [1, 2, 7, 42] and formula == [1, 2, 7, 42, 429] and dt < 60
    report(1, ok, f"brute {brute}, formula {formula}", dt)
    assert ok


def test_criterion_2_refined_asm_equals_dpp(report):
    t0 = time.perf_counter()
    rows = {}
    for n in range(1, 5):
        a = [len(enumerate_asm_i(n, i)) for i in range(1, n + 1)]
        d = [len(enumerate_dpp_i(n, i)) for i in range(1, n + 1)]
        f = [asm_refined_formula(n, i) for i in range(1, n + 1)]
        rows[n] = (a, d, f)
    dt = time.perf_counter() - t0
    ok = all(a == d == f for a, d, f in rows.values()) and dt < 60
    report(2, ok, "; ".join(f"n={n}: {a}" for n, (a, _, _) in rows.items()), dt)
    assert ok


def test_criterion_3_main_bijection(report):
    t0 = time.perf_counter()
    results = {(i, x): check_bijection(main_bijection(3, i, x)) for i in (1, 2, 3) for x in (0, 1)}
    dt = time.perf_counter() - t0
    ok = all(results.values()) and dt < 300
    bad = [k for k, v in results.items() if not v]
    report(3, ok, f"main_bijection(3, i, x) for {len(results)} cases" + (f", failing {bad}" if bad else ""), dt)
    assert ok


def test_criterion_4_asm_to_dpp(report):
    t0 = time.perf_counter()
    results = {(i, x): check_bijection(asm_to_dpp(4, i, x)) for i in (1, 2, 3, 4) for x in (0, 1)}
    dt = time.perf_counter() - t0
    ok = all(results.values()) and dt < 600
    bad = [k for k, v in results.items() if not v]
    report(4, ok, f"asm_to_dpp(4, i, x) for {len(results)} cases" + (f", failing {bad}" if bad else ""), dt)
    assert ok


def test_criterion_5_verify_grid(report):
    t0 = time.perf_counter()
    results = run_verify_grid()
    dt = time.perf_counter() - t0
    names = {r.name for r in results}
    expected = {"alpha", "chu_vandermonde", "b_recurrence", "det_product", "cramer", "zero", "rotate_mt"}
    ok = all(r.ok for r in results) and names == expected and dt < 600
    summary = ", ".join(f"{r.name} {r.checked}{'' if r.ok else ' FAILED'}" for r in results)
    report(5, ok, summary, dt)
    for r in results:
        assert r.ok, (r.name, r.counterexample)
    assert ok


def test_criterion_6_rotation_sizes(report):
    t0 = time.perf_counter()
    bad = []
    cases = list(small_vectors(3, 0, 3))
    for k in cases:
        n = len(k)
        if mt(k).size != (-1) ** (n - 1) * mt(rot(k)).size:
            bad.append(k)
    dt = time.perf_counter() - t0
    ok = not bad and len(cases) == 4 + 16 + 64
    report(6, ok, f"{len(cases)} vectors" + (f", failing {bad[:5]}" if bad else ""), dt)
    assert ok


def test_criterion_7_gamma_sizes(report):
    t0 = time.perf_counter()
    bad = []
    cases = list(small_vectors(3, 0, 3))
    for k in cases:
        if mt(k).size != sgt(k).size:
            bad.append(k)
    dt = time.perf_counter() - t0
    ok = not bad and len(cases) == 84
    report(7, ok, f"{len(cases)} vectors" + (f", failing {bad[:5]}" if bad else ""), dt)
    assert ok


def test_criterion_8_triangle_sign(report):
    t0 = time.perf_counter()
    k = EXAMPLE_TRIANGLE[-1]
    flat = ("i", flatten_rows(EXAMPLE_TRIANGLE))
    sign = mt_sign_rows(EXAMPLE_TRIANGLE)
    member = mt(k).contains(flat)
    dt = time.perf_counter() - t0
    ok = EXAMPLE_TRIANGLE == ((4,), (3, 5), (3, 4, 5), (3, 3, 4, 5), (5, 3, 1, 4, 6)) and sign == -1 and member
    report(8, ok, f"sign {sign}, member of MT{k}: {member}", dt)
    assert ok
