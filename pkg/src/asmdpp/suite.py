"""The verification grid and the acceptance checks, as plain functions.

Each check returns a `CheckResult`; the command line's `verify` and
`selftest` subcommands are thin wrappers around these.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from . import asm_dpp as ad
from .linalg import SignedMatrix, cramer, det_product, row_domain
from .patterns import mt, mt_sign_rows, sgt
from .rotation import e_zero, f_zero, prep_elementary, rot, rotate_mt
from .signed import interval, parity_sign, signed
from .sijection import Report, Sijection, SijectionError, matcher, verify
from .subsets import alpha, b_recurrence, chu_vandermonde


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class Budget:
    """Wall-clock allowance shared by a run; `check` raises once it is spent."""

    seconds: float
    start: float = field(default_factory=time.monotonic)

    def __post_init__(self):
        if self.seconds <= 0:
            raise BudgetExceeded(f"time budget must be positive, got {self.seconds}")

    def elapsed(self) -> float:
        return time.monotonic() - self.start

    def check(self):
        if self.elapsed() > self.seconds:
            raise BudgetExceeded(f"time budget of {self.seconds:g}s exhausted after {self.elapsed():.1f}s")


@dataclass
class CheckResult:
    name: str
    ok: bool
    checked: int = 0
    seconds: float = 0.0
    detail: str = ""
    counterexample: Optional[dict] = None

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checked": self.checked,
                "seconds": round(self.seconds, 3), "detail": self.detail,
                "counterexample": self.counterexample}


# ---------------------------------------------------------------- grid

def alpha_grid() -> Iterator[tuple]:
    for a, b, c in itertools.product(range(-3, 4), repeat=3):
        yield f"alpha({a},{b},{c})", lambda a=a, b=b, c=c: alpha(a, b, c)


def cv_grid() -> Iterator[tuple]:
    for a in range(1, 5):
        for b in range(0, 5):
            for c in range(0, 5):
                yield f"chu_vandermonde({a},{b},{c})", lambda a=a, b=b, c=c: chu_vandermonde(a, b, c)


def b_recurrence_grid() -> Iterator[tuple]:
    for n in range(1, 4):
        for i in range(1, n + 1):
            yield f"b_recurrence({n},{i})", lambda n=n, i=i: b_recurrence(n, i)


def toy_matrix(rng: random.Random, m: int) -> SignedMatrix:
    """Entries are signed intervals with at most two elements."""
    def entry():
        a = rng.randint(-1, 1)
        return interval(a, a + rng.randint(-3, 1))

    return SignedMatrix(tuple(tuple(entry() for _ in range(m)) for _ in range(m)))


def det_product_grid(seeds: int = 3) -> Iterator[tuple]:
    for m in range(1, 4):
        for s in range(seeds):
            rng = random.Random(1000 * m + s)
            P, Q = toy_matrix(rng, m), toy_matrix(rng, m)
            yield f"det_product(m={m},seed={s})", lambda P=P, Q=Q: det_product(P, Q)


def cramer_toy(m: int, seed: int, j: int) -> Sijection:
    """Cramer's rule on a random toy system; rows are matched by `matcher`."""
    rng = random.Random(7000 + 100 * m + seed)
    P = toy_matrix(rng, m)
    X = tuple(interval(0, rng.randint(-1, 1)) for _ in range(m))
    rows, Y = [], []
    for r in range(m):
        D = row_domain(P, X, r)
        s = D.size
        Yr = signed(1 if s >= 0 else -1, interval(1, abs(s)))
        Y.append(Yr)
        rows.append(matcher(D, Yr, f"row{r}"))
    return cramer(P, X, Y, rows, j)


def cramer_grid(seeds: int = 2) -> Iterator[tuple]:
    for m in range(1, 4):
        for s in range(seeds):
            for j in range(m):
                yield f"cramer(m={m},seed={s},j={j})", lambda m=m, s=s, j=j: cramer_toy(m, s, j)


def small_vectors(max_n: int = 3, lo: int = 0, hi: int = 3) -> Iterator[tuple]:
    for n in range(1, max_n + 1):
        yield from itertools.product(range(lo, hi + 1), repeat=n)


def zero_grid() -> Iterator[tuple]:
    for k in small_vectors():
        for j in range(1, len(k) + 1):
            yield f"e_zero({k},{j})", lambda k=k, j=j: e_zero(k, j)
            yield f"f_zero({k},{j})", lambda k=k, j=j: f_zero(k, j)
            if len(k) >= 2:
                yield f"prep_elementary({k},{j})", lambda k=k, j=j: prep_elementary(k, j)


def rotate_grid(x: int = 0, impl: str = "fallback") -> Iterator[tuple]:
    for k in small_vectors():
        yield f"rotate_mt({k})", lambda k=k: rotate_mt(k, x, impl)


GRID: dict[str, Callable[[], Iterator[tuple]]] = {
    "alpha": alpha_grid,
    "chu_vandermonde": cv_grid,
    "b_recurrence": b_recurrence_grid,
    "det_product": det_product_grid,
    "cramer": cramer_grid,
    "zero": zero_grid,
    "rotate_mt": rotate_grid,
}


def run_grid(name: str, cases: Iterator[tuple], budget: Budget | None = None) -> CheckResult:
    """verify() every sijection produced by `cases`; stop at the first failure."""
    t0 = time.monotonic()
    count = 0
    for label, make in cases:
        if budget:
            budget.check()
        try:
            rep = verify(make())
        except (SijectionError, AssertionError, ValueError) as exc:
            rep = Report(False, label, 0, {"kind": f"construction failed: {exc}"})
        count += 1
        if not rep.ok:
            return CheckResult(name, False, count, time.monotonic() - t0, label, rep.counterexample)
    return CheckResult(name, True, count, time.monotonic() - t0)


def run_verify_grid(budget: Budget | None = None, only: list | None = None) -> list:
    return [run_grid(name, gen(), budget) for name, gen in GRID.items() if only is None or name in only]


# ---------------------------------------------------------------- acceptance

EXAMPLE_TRIANGLE = ((4,), (3, 5), (3, 4, 5), (3, 3, 4, 5), (5, 3, 1, 4, 6))


def _timed(name, fn, limit) -> CheckResult:
    t0 = time.monotonic()
    ok, checked, detail = fn()
    dt = time.monotonic() - t0
    if dt > limit:
        ok = False
        detail = (detail + "; " if detail else "") + f"took {dt:.1f}s > {limit}s"
    return CheckResult(name, ok, checked, dt, detail)


def check_counts():
    brute = [len(ad.enumerate_asm(n)) for n in range(1, 5)]
    formula = [ad.asm_formula(n) for n in range(1, 6)]
    ok = brute == [1, 2, 7, 42] and formula == [1, 2, 7, 42, 429]
    return ok, 9, f"brute={brute} formula={formula}"


def check_refined_counts():
    bad = []
    for n in range(1, 5):
        a = [len(ad.enumerate_asm_i(n, i)) for i in range(1, n + 1)]
        d = [len(ad.enumerate_dpp_i(n, i)) for i in range(1, n + 1)]
        if a != d:
            bad.append((n, a, d))
    return not bad, 10, str(bad) if bad else ""


def _bijection_grid(make, n, ids, xs=(0, 1)):
    count = 0
    for i in ids:
        for x in xs:
            b = make(n, i, x)
            if not ad.check_bijection(b):
                return False, count, f"{b.name} is not a bijection"
            count += b.domain.size
    return True, count, ""


def check_main():
    return _bijection_grid(ad.main_bijection, 3, range(1, 4))


def check_asm_to_dpp():
    return _bijection_grid(ad.asm_to_dpp, 4, range(1, 5))


def check_rotation_sizes():
    count = 0
    for k in small_vectors():
        n = len(k)
        if mt(k).size != parity_sign(n - 1) * mt(rot(k)).size:
            return False, count, f"k={k}"
        count += 1
    return True, count, ""


def check_gamma_sizes():
    count = 0
    for k in small_vectors():
        if mt(k).size != sgt(k).size:
            return False, count, f"k={k}"
        count += 1
    return True, count, ""


def check_triangle_sign():
    s = mt_sign_rows(EXAMPLE_TRIANGLE)
    return s == -1, 1, f"sign={s}"


def acceptance(budget: Budget | None = None) -> list:
    """Criteria 1-8 with their time limits; stops early if the budget runs out."""
    out = []

    def add(res):
        out.append(res)
        if budget:
            budget.check()

    add(_timed("1 counts", check_counts, 60))
    add(_timed("2 refined counts", check_refined_counts, 60))
    add(_timed("3 main_bijection n=3", check_main, 300))
    add(_timed("4 asm_to_dpp n=4", check_asm_to_dpp, 600))
    t0 = time.monotonic()
    grid = run_verify_grid(budget)
    dt = time.monotonic() - t0
    bad = [g for g in grid if not g.ok]
    ok = not bad and dt <= 600
    detail = "; ".join(f"{g.name}: {g.detail}" for g in bad) or f"{sum(g.checked for g in grid)} sijections"
    add(CheckResult("5 verify grid", ok, sum(g.checked for g in grid), dt, detail,
                    bad[0].counterexample if bad else None))
    add(_timed("6 rotation size law", check_rotation_sizes, 600))
    add(_timed("7 gamma size contract", check_gamma_sizes, 600))
    add(_timed("8 triangle sign", check_triangle_sign, 60))
    return out
