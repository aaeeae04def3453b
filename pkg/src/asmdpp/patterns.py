"""Gelfand–Tsetlin patterns, monotone triangles, arrow patterns and the
two sijections π and Γ that relate them.

Encodings
---------
* GT(k) is the recursive indexed union over the box [k1,k2] x ... x [k_{n-1},k_n]
  of GT(l); an element is a nested chain ('x', ('i', l), ...) ending in the
  one-point element ('i', ()).  `gt_rows` unpacks it into rows.
* A monotone triangle is stored as the flat tuple of its rows, top to bottom.
* Arrow patterns of order n are tuples of codes over the positions (p, q),
  1 <= p < q <= n, in lexicographic order: 0 = ↙, 1 = ↘, 2 = ↙↘.
* Arrow rows are tuples of codes 0 = ↖, 1 = ↗, 2 = ↖↗.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .signed import Box, Finite, IndexedUnion, Singleton, neg
from .sijection import Sijection, matcher

SW, SE, SWSE = 0, 1, 2
NW, NE, NWNE = 0, 1, 2
ARROW_GLYPHS = {SW: "↙", SE: "↘", SWSE: "↙↘"}
ROW_GLYPHS = {NW: "↖", NE: "↗", NWNE: "↖↗"}

IMPLEMENTATIONS = ("fallback", "parti")

GT_POINT = Singleton(())


# ---------------------------------------------------------------- GT patterns

@lru_cache(maxsize=None)
def gt(k: tuple):
    """The signed set GT(k)."""
    k = tuple(k)
    if len(k) <= 1:
        return GT_POINT
    bounds = tuple((k[i], k[i + 1]) for i in range(len(k) - 1))
    return IndexedUnion(Box(bounds), lambda t: gt(t[1]), label=("GT", k))


def gt_rows(k: tuple, e) -> list:
    """Rows of a GT element, top row first, bottom row k last."""
    rows = [tuple(k)]
    while e[0] == "x":
        rows.append(e[1][1])
        e = e[2]
    return rows[::-1]


def gt_element(rows) -> tuple:
    """Inverse of `gt_rows` (the bottom row is not stored in the element)."""
    e = ("i", ())
    for r in rows[:-1]:
        e = ("x", ("i", tuple(r)), e)
    return e


def gt_shift(k: tuple, e, d: int):
    """Add d to every entry of a GT element of GT(k) (the bottom row lives in k)."""
    if e[0] == "x":
        return ("x", ("i", tuple(v + d for v in e[1][1])), gt_shift(e[1][1], e[2], d))
    return e


# ---------------------------------------------------------------- monotone triangles

def interlaces(l, k) -> bool:
    """True iff l interlaces k in the extended sense (conditions (a)-(d))."""
    n = len(k)
    if len(l) != n - 1:
        return False
    # 1-based accessors
    K = (None,) + tuple(k)
    L = (None,) + tuple(l)
    for i in range(1, n):
        lo, hi = min(K[i], K[i + 1]), max(K[i], K[i + 1])
        if not lo <= L[i] <= hi:
            return False
    for i in range(2, n):
        if K[i - 1] <= K[i] <= K[i + 1] and L[i - 1] == K[i] == L[i]:
            return False
    for i in range(1, n):
        if K[i] > L[i] == K[i + 1]:
            if not (i <= n - 2 and L[i + 1] == L[i] == K[i + 1]):
                return False
        if K[i] == L[i] > K[i + 1]:
            if not (i >= 2 and L[i - 1] == L[i] == K[i]):
                return False
    return True


def interlacing_rows(k) -> list:
    """All l with l interlacing k, in lexicographic order."""
    n = len(k)
    if n <= 1:
        return [()]
    ranges = [range(min(k[i], k[i + 1]), max(k[i], k[i + 1]) + 1) for i in range(n - 1)]
    return [l for l in itertools.product(*ranges) if interlaces(l, k)]


def split_rows(flat, n: int) -> list:
    rows, pos = [], 0
    for r in range(1, n + 1):
        rows.append(tuple(flat[pos:pos + r]))
        pos += r
    return rows


def flatten_rows(rows) -> tuple:
    return tuple(v for r in rows for v in r)


def mt_sign_rows(rows) -> int:
    """(-1)^r with r = strict row descents + special quadruple patterns."""
    r = 0
    n = len(rows)
    for i in range(n):
        row = rows[i]
        r += sum(1 for j in range(len(row) - 1) if row[j] > row[j + 1])
    # T_{i,j} > T_{i-1,j} = T_{i,j+1} = T_{i-1,j+1} > T_{i,j+2}, 1 <= j <= i-2
    for i in range(3, n + 1):
        cur, up = rows[i - 1], rows[i - 2]
        for j in range(1, i - 1):
            if cur[j - 1] > up[j - 1] == cur[j] == up[j] > cur[j + 1]:
                r += 1
    return -1 if r % 2 else 1


@lru_cache(maxsize=None)
def _mt_table(k: tuple) -> tuple:
    def rec(row):
        if len(row) == 1:
            return [[row]]
        out = []
        for l in interlacing_rows(row):
            for above in rec(l):
                out.append(above + [row])
        return out

    if not k:
        return ((),)
    return tuple(flatten_rows(rs) for rs in rec(tuple(k)))


def mt(k: tuple) -> Finite:
    """MT(k): monotone triangles with bottom row k, as flat row tuples."""
    k = tuple(k)
    n = len(k)
    return Finite(("MT", k), lambda: _mt_table(k), sign=lambda v: mt_sign_rows(split_rows(v, n)),
                  dimension=n * (n + 1) // 2)


def mt_i(k: tuple, i: int) -> Finite:
    """MT_i(k): k_1 in the first position in exactly the last i rows."""
    k = tuple(k)
    n = len(k)

    def ok(v):
        rows = split_rows(v, n)
        if i < 1 or i > n:
            return False
        if any(rows[r - 1][0] != k[0] for r in range(n - i + 1, n + 1)):
            return False
        return n - i < 1 or rows[n - i - 1][0] != k[0]

    return Finite(("MTi", k, i), lambda: [v for v in _mt_table(k) if ok(v)],
                  sign=lambda v: mt_sign_rows(split_rows(v, n)), dimension=n * (n + 1) // 2)


def mt_upper_i(k: tuple, i: int) -> Finite:
    """MT^i(k): k_n in the last position in exactly the last i rows."""
    k = tuple(k)
    n = len(k)

    def ok(v):
        rows = split_rows(v, n)
        if i < 1 or i > n:
            return False
        if any(rows[r - 1][r - 1] != k[-1] for r in range(n - i + 1, n + 1)):
            return False
        return n - i < 1 or rows[n - i - 1][n - i - 1] != k[-1]

    return Finite(("MTu", k, i), lambda: [v for v in _mt_table(k) if ok(v)],
                  sign=lambda v: mt_sign_rows(split_rows(v, n)), dimension=n * (n + 1) // 2)


def triangle_text(rows) -> str:
    """Centered triangular layout of a monotone triangle."""
    n = len(rows)
    w = max((len(str(v)) for r in rows for v in r), default=1)
    lines = []
    for idx, r in enumerate(rows):
        pad = " " * ((n - 1 - idx) * (w + 1) // 2)
        lines.append(pad + " ".join(str(v).rjust(w) for v in r))
    return "\n".join(lines)


# ---------------------------------------------------------------- ASM <-> MT

def asm_to_mt(A) -> tuple:
    """Row r of the triangle lists the columns with partial column sum 1 after row r."""
    n = len(A)
    sums = [0] * n
    rows = []
    for r in range(n):
        for c in range(n):
            sums[c] += A[r][c]
        rows.append(tuple(c + 1 for c in range(n) if sums[c] == 1))
    return flatten_rows(rows)


def mt_to_asm(flat, n: int) -> tuple:
    rows = split_rows(flat, n)
    out = []
    prev = set()
    for r in rows:
        cur = set(r)
        out.append(tuple((1 if c in cur else 0) - (1 if c in prev else 0) for c in range(1, n + 1)))
        prev = cur
    return tuple(out)


# ---------------------------------------------------------------- arrow patterns

def ap_positions(n: int) -> list:
    return [(p, q) for p in range(1, n + 1) for q in range(p + 1, n + 1)]


def _code_sign(codes, double) -> int:
    return -1 if sum(1 for c in codes if c == double) % 2 else 1


@lru_cache(maxsize=None)
def _ap_table(n: int) -> tuple:
    return tuple(itertools.product(range(3), repeat=len(ap_positions(n))))


def arrow_patterns(n: int) -> Finite:
    """AP_n, sign -1 iff an odd number of ↙↘ entries."""
    return Finite(("AP", n), lambda: _ap_table(n), sign=lambda t: _code_sign(t, SWSE))


def arrow_rows(n: int) -> Finite:
    """AR_n, sign -1 iff an odd number of ↖↗ entries."""
    return Finite(("AR", n), lambda: itertools.product(range(3), repeat=n), sign=lambda t: _code_sign(t, NWNE))


def ap_dict(n: int, T) -> dict:
    return dict(zip(ap_positions(n), T))


def ap_from_dict(n: int, d: dict) -> tuple:
    return tuple(d[pq] for pq in ap_positions(n))


def delta_sw(c) -> int:
    return 1 if c in (SW, SWSE) else 0


def delta_se(c) -> int:
    return 1 if c in (SE, SWSE) else 0


def deformation(n: int, T) -> tuple:
    """c(T) = (c_1(T), ..., c_n(T))."""
    d = ap_dict(n, T)
    out = []
    for i in range(1, n + 1):
        out.append(sum(delta_sw(d[(i, j)]) for j in range(i + 1, n + 1))
                   - sum(delta_se(d[(j, i)]) for j in range(1, i)))
    return tuple(out)


def deform(k, T) -> tuple:
    """d(k, T) = k + c(T)."""
    c = deformation(len(k), T)
    return tuple(a + b for a, b in zip(k, c))


@lru_cache(maxsize=None)
def sgt(k: tuple) -> IndexedUnion:
    """SGT(k) = ⨆_{T ∈ AP_n} GT(d(k, T))."""
    k = tuple(k)
    return IndexedUnion(arrow_patterns(len(k)), lambda t: gt(deform(k, t[1])), label=("SGT", k))


def ap_text(n: int, T) -> str:
    """Triangular layout, t_{1,n} on top, bottom row t_{1,2} ... t_{n-1,n}."""
    d = ap_dict(n, T)
    lines = []
    for diff in range(n - 1, 0, -1):
        cells = [ARROW_GLYPHS[d[(p, p + diff)]] for p in range(1, n - diff + 1)]
        lines.append(" " * (diff - 1) + " ".join(cells))
    return "\n".join(lines)


# ---------------------------------------------------------------- π and Γ

def pi_target(k, i: int) -> tuple:
    """(k_1, ..., k_{i-1}, k_{i+1}+1, k_i-1, k_{i+2}, ...) for 1-based i."""
    k = list(k)
    k[i - 1], k[i] = k[i] + 1, k[i - 1] - 1
    return tuple(k)


def _check_impl(impl: str):
    if impl not in IMPLEMENTATIONS:
        raise ValueError(f"unknown implementation {impl!r}")
    if impl == "parti":
        raise NotImplementedError(
            "the faithful construction of π and Γ is not bundled; use impl='fallback'")


@lru_cache(maxsize=None)
def pi_sij(k: tuple, i: int, impl: str = "fallback") -> Sijection:
    """π_{k,i}: GT(k) => -GT(pi_target(k, i)), 1 <= i <= n-1."""
    k = tuple(k)
    if not 1 <= i <= len(k) - 1:
        raise ValueError("pi_sij needs 1 <= i <= n-1")
    _check_impl(impl)
    return matcher(gt(k), neg(gt(pi_target(k, i))), f"pi({k},{i})")


@lru_cache(maxsize=None)
def gamma(k: tuple, x: int = 0, impl: str = "fallback") -> Sijection:
    """Γ_{k,x}: MT(k) => SGT(k).  The fallback ignores x."""
    k = tuple(k)
    _check_impl(impl)
    return matcher(mt(k), sgt(k), f"gamma({k})")
