"""Alternating sign matrices, descending plane partitions, and the
bijections between them.

Encodings
---------
* An ASM is a tuple of row tuples; inside signed sets it is stored flat
  (row-major, length n*n).
* A DPP is a tuple of row tuples; inside signed sets it is stored flat with
  the rows separated by 0 (parts are positive, so this is unambiguous).
  The empty DPP is ().
* Matrices of signed sets are 0-based.  The matrix P of the main
  construction has rows and columns labelled 2..n, so entry (r, c) of the
  stored matrix is P_{r+2, c+2}; the auxiliary matrices S, T, W, U are
  labelled 1..m and stored with offset 1.  Every entry function below takes
  the 1-based labels and the matrix builders do the shift.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

from .linalg import (
    SignedMatrix,
    cramer,
    det_entrywise,
    det_product,
    determinant,
    perm_inverse,
    product_matrix,
    row_domain,
    solve_zero,
)
from .patterns import (
    _check_impl,
    asm_to_mt,
    flatten_rows,
    interlacing_rows,
    mt,
    mt_i,
    mt_to_asm,
    mt_upper_i,
    split_rows,
)
from .rotation import negrev, rot, rotate_mt
from .signed import (
    EMPTY,
    Finite,
    IndexedUnion,
    KSubsets,
    Product,
    Union,
    canonical_encode,
    element_to_json,
    int_union,
    interval,
    jidx,
    neg,
    parity_sign,
    signed,
)
from .sijection import (
    Sijection,
    SijectionError,
    cancel_sij,
    compose,
    compose_all,
    empty_sij,
    fiberwise,
    from_bijection,
    identity_sij,
    invert,
    move_right,
    opposite_sij,
    product_sij,
    relabel,
    signed_sij,
    sum_sij,
    union_unit,
)
from .subsets import (
    b_recurrence,
    b_recurrence_domain,
    b_set,
    binom_complement,
    chu_vandermonde,
    complement,
    cv_left,
    cv_right,
    subset_string,
)


# ---------------------------------------------------------------- ASMs

def _asm_rows(n: int):
    """Backtracking over rows; column partial sums stay in {0, 1}."""

    def rows_for(sums):
        # nonzero entries alternate +1, -1, ..., +1 along the row
        out = []

        def rec(c, row, last):
            if c == n:
                if last == 1:
                    out.append(tuple(row))
                return
            row.append(0)
            rec(c + 1, row, last)
            row.pop()
            want = 1 if last in (0, -1) else -1
            if (want == 1 and sums[c] == 0) or (want == -1 and sums[c] == 1):
                row.append(want)
                rec(c + 1, row, want)
                row.pop()

        rec(0, [], 0)
        return out

    def rec(r, sums, acc):
        if r == n:
            if all(s == 1 for s in sums):
                yield tuple(acc)
            return
        for row in rows_for(sums):
            new = tuple(s + v for s, v in zip(sums, row))
            acc.append(row)
            yield from rec(r + 1, new, acc)
            acc.pop()

    yield from rec(0, (0,) * n, [])


@lru_cache(maxsize=None)
def _asm_table(n: int) -> tuple:
    return tuple(sorted(_asm_rows(n)))


def enumerate_asm(n: int) -> list:
    """All n x n alternating sign matrices, sorted."""
    return list(_asm_table(n))


def enumerate_asm_i(n: int, i: int) -> list:
    """ASMs whose top-row 1 is in column i (1-based)."""
    return [A for A in _asm_table(n) if A[0][i - 1] == 1]


def is_asm(A) -> bool:
    n = len(A)
    if any(len(r) != n for r in A):
        return False
    for line in list(A) + [tuple(A[r][c] for r in range(n)) for c in range(n)]:
        nz = [v for v in line if v]
        if any(v not in (-1, 1) for v in nz) or not nz or nz[0] != 1:
            return False
        if any(nz[k] == nz[k + 1] for k in range(len(nz) - 1)) or sum(nz) != 1:
            return False
    return True


def asm_flat(A) -> tuple:
    return tuple(v for r in A for v in r)


def asm_matrix(flat, n: int) -> tuple:
    return tuple(tuple(flat[r * n:(r + 1) * n]) for r in range(n))


def asm_set(n: int, i: int | None = None) -> Finite:
    """ASM_n (i=None) or ASM_{n,i} as an all-positive signed set of flat tuples.

    For i outside 1..n the set is empty.
    """
    if i is None:
        return Finite(("ASM", n), lambda: [asm_flat(A) for A in _asm_table(n)])
    if not 1 <= i <= n:
        return Finite(("ASM", n, i), lambda: [])
    return Finite(("ASM", n, i), lambda: [asm_flat(A) for A in enumerate_asm_i(n, i)])


def asm_reflect(A) -> tuple:
    """Column reversal: moves the top-row 1 from column i to n+1-i."""
    return tuple(tuple(reversed(r)) for r in A)


def asm_rotate90(A, direction: str = "ccw") -> tuple:
    """Quarter turn; 'ccw' sends the top row to the left column."""
    n = len(A)
    if direction == "ccw":
        return tuple(tuple(A[c][n - 1 - r] for c in range(n)) for r in range(n))
    if direction == "cw":
        return tuple(tuple(A[n - 1 - c][r] for c in range(n)) for r in range(n))
    raise ValueError(f"unknown direction {direction!r}")


def asm_to_mt_lower(A) -> tuple:
    """ASM_{n,i} -> MT_i(1..n): quarter turn counterclockwise, then columns of ones."""
    return asm_to_mt(asm_rotate90(A, "ccw"))


def mt_lower_to_asm(flat, n: int) -> tuple:
    return asm_rotate90(mt_to_asm(flat, n), "cw")


def asm_to_mt_upper(A) -> tuple:
    """ASM_{n,i} -> MT^i(1..n): reflect, then quarter turn clockwise."""
    return asm_to_mt(asm_rotate90(asm_reflect(A), "cw"))


def mt_upper_to_asm(flat, n: int) -> tuple:
    return asm_reflect(asm_rotate90(mt_to_asm(flat, n), "ccw"))


def asm_formula(n: int) -> int:
    """prod_{j=0}^{n-1} (3j+1)! / (n+j)!"""
    num = den = 1
    for j in range(n):
        num *= math.factorial(3 * j + 1)
        den *= math.factorial(n + j)
    assert num % den == 0
    return num // den


def asm_refined_formula(n: int, i: int) -> int:
    """|ASM_{n,i}| = C(n+i-2, n-1) C(2n-i-1, n-1) / C(3n-2, 2n-1) * |ASM_n|."""
    if not 1 <= i <= n:
        return 0
    num = math.comb(n + i - 2, n - 1) * math.comb(2 * n - i - 1, n - 1) * asm_formula(n)
    den = math.comb(3 * n - 2, 2 * n - 1)
    assert num % den == 0
    return num // den


# ---------------------------------------------------------------- DPPs

def is_dpp(rows, n: int | None = None) -> bool:
    prev = None
    for r, row in enumerate(rows):
        if not row or any(row[t] < row[t + 1] for t in range(len(row) - 1)) or row[-1] < 1:
            return False
        if n is not None and row[0] > n:
            return False
        if row[0] <= len(row):
            return False
        if prev is not None:
            if len(row) >= len(prev) or row[0] > len(prev):
                return False
            # shifted layout: position t sits under position t+1 of the row above
            if any(row[t] >= prev[t + 1] for t in range(len(row))):
                return False
        prev = row
    return True


def _dpp_rows(n: int):
    def rows_below(prev):
        # candidate rows of length < len(prev), first part in (len, len(prev)]
        for length in range(1, len(prev)):
            caps = [prev[t + 1] - 1 for t in range(length)]
            for first in range(length + 1, min(len(prev), caps[0]) + 1):
                yield from _weak_rows(first, caps, length)

    def rec(acc):
        yield tuple(acc)
        src = rows_below(acc[-1]) if acc else first_rows()
        for row in src:
            acc.append(row)
            yield from rec(acc)
            acc.pop()

    def first_rows():
        for length in range(1, n):
            for first in range(length + 1, n + 1):
                yield from _weak_rows(first, [n] * length, length)

    yield from rec([])


def _weak_rows(first, caps, length):
    """Weakly decreasing positive rows starting with `first`, entry t <= caps[t]."""

    def rec(t, last, acc):
        if t == length:
            yield tuple(acc)
            return
        for v in range(min(last, caps[t]), 0, -1):
            acc.append(v)
            yield from rec(t + 1, v, acc)
            acc.pop()

    if first > caps[0]:
        return
    yield from rec(1, first, [first])


@lru_cache(maxsize=None)
def _dpp_table(n: int) -> tuple:
    return tuple(sorted(_dpp_rows(n)))


def enumerate_dpp(n: int) -> list:
    """All DPPs with parts <= n, as tuples of rows."""
    return list(_dpp_table(n))


def dpp_count_of(rows, v: int) -> int:
    return sum(1 for r in rows for x in r if x == v)


def enumerate_dpp_i(n: int, i: int) -> list:
    """DPPs with parts <= n and exactly i-1 parts equal to n."""
    return [D for D in _dpp_table(n) if dpp_count_of(D, n) == i - 1]


def dpp_flat(rows) -> tuple:
    out = []
    for k, r in enumerate(rows):
        if k:
            out.append(0)
        out.extend(r)
    return tuple(out)


def dpp_rows(flat) -> tuple:
    if not flat:
        return ()
    rows, cur = [], []
    for v in flat:
        if v == 0:
            rows.append(tuple(cur))
            cur = []
        else:
            cur.append(v)
    rows.append(tuple(cur))
    return tuple(rows)


def dpp_set(n: int, i: int | None = None) -> Finite:
    if i is None:
        return Finite(("DPP", n), lambda: [dpp_flat(D) for D in _dpp_table(n)])
    return Finite(("DPP", n, i), lambda: [dpp_flat(D) for D in enumerate_dpp_i(n, i)])


# ---------------------------------------------------------------- MT_i and MT^i

def _check_weak(k):
    if any(k[a] > k[a + 1] for a in range(len(k) - 1)):
        raise ValueError(f"{k} is not weakly increasing")


def mti_target(k: tuple, i: int) -> IndexedUnion:
    """⨆_{j=0}^{i-1} (-1)^j C([i-1], j) x MT(k1+j+1, k2, ..., kn)."""
    k = tuple(k)
    return int_union(0, i - 1, lambda j: signed(parity_sign(j), Product(KSubsets(i - 1, j), mt((k[0] + j + 1,) + k[1:]))),
                     label=("MTiT", k, i))


def mti_upper_target(k: tuple, i: int) -> IndexedUnion:
    """⨆_{j=0}^{i-1} (-1)^j C([i-1], j) x MT(k1, ..., k_{n-1}, kn-j-1)."""
    k = tuple(k)
    return int_union(0, i - 1, lambda j: signed(parity_sign(j), Product(KSubsets(i - 1, j), mt(k[:-1] + (k[-1] - j - 1,)))),
                     label=("MTuT", k, i))


def _toggle(A: tuple, v: int) -> tuple:
    return tuple(a for a in A if a != v) if v in A else tuple(sorted(A + (v,)))


@lru_cache(maxsize=None)
def mti_sij(k: tuple, i: int) -> Sijection:
    """MT_i(k) => ⨆_{j=0}^{i-1} (-1)^j C([i-1], j) x MT(k1+j+1, k2, ..., kn).

    k must be weakly increasing with k1 < k2.  For i = 1 the bottom-left
    entry is raised by one.  For i > 1 the triangle splits along its
    second-to-last row (k1, l) into MT_{i-1}(k1, l); after the recursion,
    the element i-1 of the subset is added or removed to either reach the
    left side or cancel.
    """
    k = tuple(k)
    _check_weak(k)
    if i < 1:
        raise ValueError("mti_sij needs i >= 1")
    n = len(k)
    if n >= 2 and k[0] >= k[1]:
        raise ValueError("mti_sij needs k1 < k2")
    dom, cod = mt_i(k, i), mti_target(k, i)
    name = f"mti({k},{i})"
    k1 = k[0]

    def bottom(j):
        return (k1 + j + 1,) + k[1:]

    if i == 1:
        return relabel(dom, cod, lambda e: ("x", jidx(0), ("p", ("i", ()), ("i", e[1][:-n] + bottom(0)))), name)

    if n == 1:
        # MT_i((k1)) is empty for i >= 2; cancel inside the codomain
        def fn0(x):
            _, (_, _, (_, A, _)) = x
            A2 = _toggle(A[1], i - 1)
            return ("R", ("x", jidx(len(A2)), ("p", ("i", A2), ("i", bottom(len(A2))))))

        return Sijection(dom, cod, fn0, name)

    ls = tuple(interlacing_rows(k[1:]))
    L = Finite(("MTiL", k), lambda: ls)
    D1 = IndexedUnion(L, lambda t: mt_i((k1,) + t[1], i - 1), label=("MTi1", k, i))
    D2 = IndexedUnion(L, lambda t: mti_target((k1,) + t[1], i - 1), label=("MTi2", k, i))

    def f1(e):
        flat = e[1]
        second = flat[-(2 * n - 1):-n]
        return ("x", ("i", second[1:]), ("i", flat[:-n]))

    s1 = relabel(dom, D1, f1, "mti.split")
    s2 = fiberwise(D1, D2, lambda t: mti_sij((k1,) + t[1], i - 1), "mti.rec")

    def first_case(p, l):
        # True when the bottom-left entry must stay <= k1+p+1
        a = k1 + p + 1
        l2 = l[0] if l else None
        return a < k[1] or (a == k[1] and (l2 is None or k[1] < l2))

    def fn3(x):
        side, e = x
        if side == "L":
            _, (_, l), (_, pt, (_, (_, A), (_, U))) = e
            p = pt[1][0]
            if first_case(p, l):
                j, A2 = p, A
            else:
                j, A2 = p + 1, A + (i - 1,)
            return ("R", ("x", jidx(j), ("p", ("i", A2), ("i", U + bottom(j)))))
        _, _, (_, (_, A), (_, T)) = e
        second = T[-(2 * n - 1):-n]
        p = second[0] - k1 - 1
        l = second[1:]
        U = T[:-n]
        if first_case(p, l):
            if len(A) == p and (i - 1) not in A:
                return ("L", ("x", ("i", l), ("x", jidx(p), ("p", ("i", A), ("i", U)))))
        elif len(A) == p + 1 and (i - 1) in A:
            return ("L", ("x", ("i", l), ("x", jidx(p), ("p", ("i", A[:-1]), ("i", U)))))
        A2 = _toggle(A, i - 1)
        return ("R", ("x", jidx(len(A2)), ("p", ("i", A2), ("i", U + bottom(len(A2))))))

    s3 = Sijection(D2, cod, fn3, "mti.combine")
    return compose_all(s1, s2, s3, name=name)


def _flat_negrev(flat, n):
    return flatten_rows([negrev(r) for r in split_rows(flat, n)])


@lru_cache(maxsize=None)
def mti_upper_sij(k: tuple, i: int) -> Sijection:
    """MT^i(k) => ⨆_{j=0}^{i-1} (-1)^j C([i-1], j) x MT(k1, ..., kn-j-1).

    Mirror image of `mti_sij` under T -> -reverse(T) row by row.
    """
    k = tuple(k)
    _check_weak(k)
    n = len(k)
    kk = negrev(k)
    a = relabel(mt_upper_i(k, i), mt_i(kk, i), lambda e: ("i", _flat_negrev(e[1], n)), "mtu.mirror")

    def fc(e):
        _, t, (_, A, (_, T)) = e
        return ("x", t, ("p", A, ("i", _flat_negrev(T, n))))

    c = relabel(mti_target(kk, i), mti_upper_target(k, i), fc, "mtu.unmirror")
    return compose_all(a, mti_sij(kk, i), c, name=f"mti_upper({k},{i})")


# ---------------------------------------------------------------- ASM recurrence

def asm_rec_domain(n: int, i: int) -> IndexedUnion:
    """⨆_{j=1}^{n} (-1)^{j+1} C([2n-i-1], n-i-j+1) x ASM_{n,j}."""
    return int_union(
        1, n,
        lambda j: signed(parity_sign(j + 1), Product(KSubsets(2 * n - i - 1, n - i - j + 1), asm_set(n, j))),
        label=("ASMrec", n, i),
    )


@lru_cache(maxsize=None)
def asm_recurrence(n: int, i: int, x: int = 0, impl: str = "fallback") -> Sijection:
    """⨆_{j=1}^{n} (-1)^{j+1} C([2n-i-1], n-i-j+1) x ASM_{n,j} => ASM_{n,i}."""
    if not 1 <= i <= n:
        raise ValueError("asm_recurrence needs 1 <= i <= n")
    N = 2 * n - i - 1
    ID = tuple(range(1, n + 1))
    D0 = asm_rec_domain(n, i)

    # reflect ASM_{n,j} -> ASM_{n,n+1-j}, reindex j -> n+1-j
    D1 = int_union(1, n, lambda j: signed(parity_sign(n - j), Product(KSubsets(N, j - i), asm_set(n, j))),
                   label=("ASMrec1", n, i))

    def f1(e):
        _, t, (_, A, M) = e
        R = asm_flat(asm_reflect(asm_matrix(M[1], n)))
        return ("x", jidx(n + 1 - t[1][0]), ("p", A, ("i", R)))

    s1 = relabel(D0, D1, f1, "asmrec.reflect")

    # complement inside [2n-i-1] and reindex j -> 2n-1-j
    D2 = int_union(0, N, lambda j: signed(parity_sign(n - j - 1), Product(KSubsets(N, j), asm_set(n, 2 * n - j - 1))),
                   label=("ASMrec2", n, i))

    def f2(e):
        _, t, (_, A, M) = e
        return ("x", jidx(2 * n - 1 - t[1][0]), ("p", ("i", complement(A[1], N)), M))

    s2 = relabel(D1, D2, f2, "asmrec.complement")

    # ASM_{n,m} -> MT_m(1..n)
    D3 = int_union(0, N, lambda j: signed(parity_sign(n - j - 1), Product(KSubsets(N, j), mt_i(ID, 2 * n - j - 1))),
                   label=("ASMrec3", n, i))

    def f3(e):
        _, t, (_, A, M) = e
        return ("x", t, ("p", A, ("i", asm_to_mt_lower(asm_matrix(M[1], n)))))

    s3 = relabel(D2, D3, f3, "asmrec.to_mt")

    # MT_m(1..n) => ⨆_p (-1)^p C([m-1], p) x MT(2+p, 2, ..., n)
    D4 = int_union(0, N, lambda j: signed(parity_sign(n - j - 1), Product(KSubsets(N, j), mti_target(ID, 2 * n - j - 1))),
                   label=("ASMrec4", n, i))
    s4 = fiberwise(D3, D4, lambda t: signed_sij(parity_sign(n - t[1][0] - 1), product_sij(
        identity_sij(KSubsets(N, t[1][0])), mti_sij(ID, 2 * n - t[1][0] - 1))), "asmrec.mti")

    # regroup by p
    def mt_p(p):
        return mt((2 + p,) + ID[1:])

    D5 = int_union(0, 2 * n - 2, lambda p: signed(parity_sign(n + p - 1), Product(cv_left(p + 1, N, 2 * n - p - 2), mt_p(p))),
                   label=("ASMrec5", n, i))

    def f5(e):
        _, t, (_, A, (_, pt, (_, P, T))) = e
        return ("x", pt, ("p", ("x", t, ("p", A, P)), T))

    s5 = relabel(D4, D5, f5, "asmrec.regroup")

    # Chu–Vandermonde with a = p+1, b = 2n-i-1, c = 2n-p-2
    D6 = int_union(0, 2 * n - 2, lambda p: signed(parity_sign(n + p - 1), Product(cv_right(p + 1, N, 2 * n - p - 2), mt_p(p))),
                   label=("ASMrec6", n, i))
    s6 = fiberwise(D5, D6, lambda t: signed_sij(parity_sign(n + t[1][0] - 1), product_sij(
        chu_vandermonde(t[1][0] + 1, N, 2 * n - t[1][0] - 2), identity_sij(mt_p(t[1][0])))), "asmrec.cv")

    # reindex q = 2n-2-p: C([i-1], q) x MT(2n-q, 2, ..., n)
    def kq(q):
        return (2 * n - q,) + ID[1:]

    D7 = int_union(0, i - 1, lambda q: signed(parity_sign(n + q - 1), Product(KSubsets(i - 1, q), mt(kq(q)))),
                   label=("ASMrec7", n, i))

    def f7(e):
        _, t, rest = e
        return ("x", jidx(2 * n - 2 - t[1][0]), rest)

    s7 = relabel(D6, D7, f7, "asmrec.reindex")

    # rotation: MT(2n-q, 2, ..., n) => (-1)^{n-1} MT(2, ..., n, n-q)
    D8 = int_union(0, i - 1, lambda q: signed(parity_sign(n + q - 1), Product(
        KSubsets(i - 1, q), signed(parity_sign(n - 1), mt(rot(kq(q)))))), label=("ASMrec8", n, i))
    s8 = fiberwise(D7, D8, lambda t: signed_sij(parity_sign(n + t[1][0] - 1), product_sij(
        identity_sij(KSubsets(i - 1, t[1][0])), rotate_mt(kq(t[1][0]), x, impl))), "asmrec.rotate")

    # subtract 1 from every entry
    D9 = mti_upper_target(ID, i)

    def f9(e):
        _, t, (_, A, (_, T)) = e
        return ("x", t, ("p", A, ("i", tuple(v - 1 for v in T))))

    s9 = relabel(D8, D9, f9, "asmrec.shift")
    s10 = invert(mti_upper_sij(ID, i))
    s11 = relabel(mt_upper_i(ID, i), asm_set(n, i), lambda e: ("i", asm_flat(mt_upper_to_asm(e[1], n))), "asmrec.to_asm")
    return compose_all(s1, s2, s3, s4, s5, s6, s7, s8, s9, s10, s11, name=f"asm_recurrence({n},{i})")


# ---------------------------------------------------------------- matrices P, S, T, W

def p_main(n: int, i: int, j: int):
    """(-1)^{j+1} C([2n-i-1], n-i-j+1)."""
    return signed(parity_sign(j + 1), KSubsets(2 * n - i - 1, n - i - j + 1))


def p_entry(n: int, i: int, j: int):
    """P_{i,j} for 2 <= i, j <= n, with an extra -[0,0] on the diagonal."""
    q = p_main(n, i, j)
    return Union(q, neg(interval(0, 0))) if i == j else q


def p_matrix(n: int) -> SignedMatrix:
    m = n - 1
    return SignedMatrix(tuple(tuple(p_entry(n, r + 2, c + 2) for c in range(m)) for r in range(m)))


def s_entry(n: int, i: int, j: int):
    return signed(parity_sign(i + j), KSubsets(n, j - i))


def s_matrix(n: int, m: int) -> SignedMatrix:
    return SignedMatrix(tuple(tuple(s_entry(n, r + 1, c + 1) for c in range(m)) for r in range(m)))


def t_main(n: int, i: int, j: int):
    """(-1)^j C([n-i-2], j-1), taken empty when n-i-j-1 < 0."""
    if n - i - j - 1 < 0:
        return EMPTY
    return signed(parity_sign(j), KSubsets(n - i - 2, j - 1))


def t_entry(n: int, i: int, j: int):
    return Union(t_main(n, i, j), signed(parity_sign(i + j + 1), KSubsets(n, j - i)))


def t_matrix(n: int, m: int) -> SignedMatrix:
    return SignedMatrix(tuple(tuple(t_entry(n, r + 1, c + 1) for c in range(m)) for r in range(m)))


def w_entry(n: int, i: int, j: int, refined: int | None = None, size: int | None = None):
    """W_{i,j}; with `refined` = j0 the last row (i = size) is C([n+j-j0], n-1)."""
    if refined is not None and i == size:
        return KSubsets(n + j - refined, n - 1)
    base = KSubsets(i + j, j - 1)
    return Union(base, interval(0, 0)) if i == j else base


def w_matrix(n: int, refined: int | None = None) -> SignedMatrix:
    m = n - 2 if refined is None else n - 1
    return SignedMatrix(tuple(tuple(w_entry(n, r + 1, c + 1, refined, m) for c in range(m)) for r in range(m)))


def _sub(M: SignedMatrix, rows, cols) -> SignedMatrix:
    return SignedMatrix(tuple(tuple(M.rows[r][c] for c in cols) for r in rows))


def _only_element(S):
    (e,) = list(S.elements())
    assert S.sign(e) == 1
    return e


def _prepend_unit(D, S):
    """D => det(S) x D for det(S) a single positive point."""
    s0 = _only_element(determinant(S))
    return from_bijection(determinant(D), Product(determinant(S), determinant(D)),
                          lambda e: ("p", s0, e), lambda e: e[2], "unit")


def _append_unit(D, S):
    s0 = _only_element(determinant(S))
    return from_bijection(determinant(D), Product(determinant(D), determinant(S)),
                          lambda e: ("p", e, s0), lambda e: e[1], "unit")


def _same_elements(S, T, name="same"):
    return relabel(S, T, lambda e: e, name)


# ---------------------------------------------------------------- LGV

class _Geometry:
    """Sources, sinks and step encodings for the path matrices W.

    Row r (0-based, label i = r+1) starts at (0, i+1) and its entries list
    the positions of right steps.  In the refined matrix the top row starts
    at (j0-2, n-1) and its entries list the positions of down steps.  Sink
    c ends at (c, 0).
    """

    def __init__(self, n, refined=None):
        self.n = n
        self.refined = refined
        self.m = n - 2 if refined is None else n - 1

    def is_top(self, r):
        return self.refined is not None and r == self.m - 1

    def has_blank(self, r):
        return not self.is_top(r)

    def source(self, r):
        if self.is_top(r):
            return (self.refined - 2, self.n - 1)
        return (0, r + 2)

    def steps(self, r, c, sub):
        x0, y0 = self.source(r)
        total = (c - x0) + y0
        s = set(sub)
        if self.is_top(r):
            return tuple("D" if t in s else "R" for t in range(1, total + 1))
        return tuple("R" if t in s else "D" for t in range(1, total + 1))

    def subset(self, r, steps):
        mark = "D" if self.is_top(r) else "R"
        return tuple(t + 1 for t, st in enumerate(steps) if st == mark)

    def points(self, r, steps):
        x, y = self.source(r)
        out = [(x, y)]
        for st in steps:
            if st == "R":
                x += 1
            else:
                y -= 1
            out.append((x, y))
        return out

    def row_of_path(self, r, steps):
        x, y = self.source(r)
        head = (self.n,) * (self.refined - 1) if self.is_top(r) else (r + 2,)
        hs = []
        for st in steps:
            if st == "R":
                if y > 0:
                    hs.append(y)
            else:
                y -= 1
        return head + tuple(hs)

    def path_of_row(self, r, row):
        head = self.refined - 1 if self.is_top(r) else 1
        hs = row[head:]
        x0, y = self.source(r)
        rights = r - x0  # identity sink c = r
        zeros = rights - len(hs)
        if zeros < 0:
            raise SijectionError(f"row {row} does not fit source {r}")
        steps = []
        for h in hs:
            steps += ["D"] * (y - h) + ["R"]
            y = h
        steps += ["D"] * y + ["R"] * zeros
        return tuple(steps)


@lru_cache(maxsize=None)
def lgv_dpp_sij(n: int, refined: int | None = None) -> Sijection:
    """det(W) => DPP_{n-1} (or det(W^j) => DPP_{n,j} when refined=j >= 2).

    Intersecting families cancel by swapping tails at the lexicographically
    first shared lattice point, between the two smallest rows through it.
    The [0,0] diagonal element marks an unused source.  Survivors are
    non-intersecting families with the identity permutation; recording the
    heights of right steps (plus the extra step at the source) gives the
    rows of a DPP, top path first.
    """
    if n < 2:
        raise ValueError("lgv_dpp_sij needs n >= 2")
    if refined is not None and not 2 <= refined <= n:
        raise ValueError("refined LGV needs 2 <= j <= n")
    G = _Geometry(n, refined)
    m = G.m
    W = w_matrix(n, refined)
    dom = determinant(W)
    cod = dpp_set(n - 1) if refined is None else dpp_set(n, refined)

    def entry(r, c, steps):
        v = ("i", G.subset(r, steps))
        return ("L", v) if (c == r and G.has_blank(r)) else v

    def fn(x):
        side, e = x
        if side == "R":
            rows = dpp_rows(e[1])
            by_src = {}
            for row in rows:
                r = (m - 1) if (refined is not None and row[0] == n) else row[0] - 2
                by_src[r] = row
            ents = []
            for r in range(m):
                if r in by_src:
                    ents.append(entry(r, r, G.path_of_row(r, by_src[r])))
                else:
                    ents.append(("R", ("i", (0,))))
            return ("L", ("x", ("i", tuple(range(m))), ("p",) + tuple(ents)))
        _, (_, pi), (_, *ents) = e
        paths = {}
        for r in range(m):
            ent = ents[r]
            if pi[r] == r and G.has_blank(r):
                if ent[0] == "R":
                    continue
                ent = ent[1]
            paths[r] = G.steps(r, pi[r], ent[1])
        pts = {r: G.points(r, s) for r, s in paths.items()}
        occ = {}
        for r, ps in pts.items():
            for p in ps:
                occ.setdefault(p, []).append(r)
        shared = [p for p, rs in occ.items() if len(rs) >= 2]
        if shared:
            v = min(shared)
            r, s = sorted(occ[v])[:2]
            ir, is_ = pts[r].index(v), pts[s].index(v)
            new_r = paths[r][:ir] + paths[s][is_:]
            new_s = paths[s][:is_] + paths[r][ir:]
            sigma = list(pi)
            sigma[r], sigma[s] = pi[s], pi[r]
            ents = list(ents)
            ents[r] = entry(r, sigma[r], new_r)
            ents[s] = entry(s, sigma[s], new_s)
            return ("L", ("x", ("i", tuple(sigma)), ("p",) + tuple(ents)))
        if tuple(pi) != tuple(range(m)):
            raise SijectionError(f"non-intersecting family with permutation {pi}")
        rows = [G.row_of_path(r, paths[r]) for r in sorted(paths, reverse=True)]
        return ("R", ("i", dpp_flat(rows)))

    return Sijection(dom, cod, fn, f"lgv({n},{refined})")


# ---------------------------------------------------------------- det(P) => DPP

def _r_entry_sij(n: int, S: SignedMatrix, P: SignedMatrix, i: int, j: int) -> Sijection:
    """R_ij => T_ij for R = S P (0-based i, j; labels i+1, j+1)."""
    i1, j1 = i + 1, j + 1
    R = product_matrix(S, P).rows[i][j]
    c = n - i1 - j1 - 1
    Rm = signed(parity_sign(j1), cv_left(n + j1, n, c))
    Rd = signed(parity_sign(i1 + j1 + 1), KSubsets(n, j1 - i1))

    def f(e):
        _, pt, (_, se, pe) = e
        p = pt[1][0]
        p1 = p + 1
        if p == j:
            if pe[0] == "R":
                return ("R", se)
            pe = pe[1]
        return ("L", ("x", jidx(p1 - i1), ("p", se, ("i", complement(pe[1], 2 * n - p1 - 2)))))

    split = relabel(R, Union(Rm, Rd), f, "R.split")
    if c < 0:
        main = empty_sij(Rm, t_main(n, i1, j1))
    else:
        sg = parity_sign(j1)
        main = compose(signed_sij(sg, chu_vandermonde(n + j1, n, c)), signed_sij(sg, binom_complement(n - i1 - 2, c)))
    return compose(split, sum_sij(main, identity_sij(Rd)), name=f"R->T({i},{j})")


def _u_entry_sij(n: int, W: SignedMatrix, S: SignedMatrix, i: int, j: int) -> Sijection:
    """U_ij => -T_ij for U = W S and a non-refined row i (0-based)."""
    i1, j1 = i + 1, j + 1
    U = product_matrix(W, S).rows[i][j]
    Um = cv_left(i1 + 2, n, j1 - 1)
    Ud = signed(parity_sign(i1 + j1), KSubsets(n, j1 - i1))
    negA = neg(t_main(n, i1, j1))

    def f(e):
        _, pt, (_, we, se) = e
        p = pt[1][0]
        p1 = p + 1
        if p == i:
            if we[0] == "R":
                return ("R", se)
            we = we[1]
        return ("L", ("x", jidx(j1 - p1), ("p", se, ("i", complement(we[1], i1 + p1)))))

    split = relabel(U, Union(Um, Ud), f, "U.split")
    main = compose(chu_vandermonde(i1 + 2, n, j1 - 1), _same_elements(cv_right(i1 + 2, n, j1 - 1), negA))
    join = _same_elements(Union(negA, Ud), neg(t_entry(n, i1, j1)), "U.join")
    return compose_all(split, sum_sij(main, identity_sij(Ud)), join, name=f"U->-T({i},{j})")


def _drop_last(n: int, T: SignedMatrix, col: int, target, last_to):
    """det(M) => target for a matrix whose last row is nonzero only in `col`.

    Terms are (π, e) with π(m-1) = col; the result is (π~, e[:-1]) with π~
    the permutation of the remaining rows and columns, plus `last_to`
    applied to the last entry (None drops it).
    """
    m = T.m
    keep = [c for c in range(m) if c != col]
    pos = {c: k for k, c in enumerate(keep)}
    back = {k: c for c, k in pos.items()}

    def f(e):
        _, (_, pi), (_, *ents) = e
        if pi[m - 1] != col:
            raise SijectionError("unexpected term in the expansion")
        small = ("x", ("i", tuple(pos[c] for c in pi[:m - 1])), ("p",) + tuple(ents[:m - 1]))
        if last_to is None:
            return small
        return ("p", small, last_to(ents[m - 1]))

    return relabel(determinant(T), target, f, "expand")


@lru_cache(maxsize=None)
def from_det(n: int) -> Sijection:
    """det(P) => (-1)^{n-1} DPP_{n-1}.

    det(P) => det(S) x det(P) => det(SP) => det(T) => -det(T~) on one side,
    det(W) => det(W) x det(S~) => det(WS~) => (-1)^{n-2} det(T~) on the
    other, and LGV from det(W) to DPP_{n-1}; T~ is T without its last row
    and column and W has size n-2.
    """
    if n < 2:
        raise ValueError("from_det needs n >= 2")
    m = n - 1
    P, S, T = p_matrix(n), s_matrix(n, m), t_matrix(n, m)
    Tt = _sub(T, range(m - 1), range(m - 1))
    R = product_matrix(S, P)
    chain1 = compose_all(
        _prepend_unit(P, S),
        invert(det_product(S, P)),
        det_entrywise(R, T, lambda i, j: _r_entry_sij(n, S, P, i, j)),
        _drop_last(n, T, m - 1, neg(determinant(Tt)), None),
    )
    M = n - 2
    W, S2 = w_matrix(n), s_matrix(n, M)
    U = product_matrix(W, S2)
    negT = SignedMatrix(tuple(tuple(neg(e) for e in row) for row in Tt.rows))
    chain2 = compose_all(
        _append_unit(W, S2),
        invert(det_product(W, S2)),
        det_entrywise(U, negT, lambda i, j: _u_entry_sij(n, W, S2, i, j)),
        _same_elements(determinant(negT), signed(parity_sign(M), determinant(Tt))),
    )
    sg = parity_sign(n - 1)
    return compose_all(chain1, invert(signed_sij(sg, chain2)), signed_sij(sg, lgv_dpp_sij(n)), name=f"from_det({n})")


# ---------------------------------------------------------------- row sijections

def _main_x(n: int, c: int):
    """X_c = B_{n,1} x ASM_{n,c} ⊔ -(ASM_{n,1} x B_{n,c})."""
    return Union(Product(b_set(n, 1), asm_set(n, c)), neg(Product(asm_set(n, 1), b_set(n, c))))


@lru_cache(maxsize=None)
def _main_row(n: int, r1: int, x: int, impl: str) -> Sijection:
    """⨆_{c=2}^{n} P_{r1,c} x X_c => ∅."""
    P = p_matrix(n)
    X = tuple(_main_x(n, c) for c in range(2, n + 1))
    r = r1 - 2
    Xr = X[r]
    M = int_union(2, n, lambda c: Product(p_main(n, r1, c), _main_x(n, c)), label=("mainM", n, r1))

    def f0(e):
        _, qt, (_, pe, xe) = e
        q = qt[1][0]
        if q == r:
            if pe[0] == "R":
                return ("R", xe)
            pe = pe[1]
        return ("L", ("x", jidx(q + 2), ("p", pe, xe)))

    split = relabel(row_domain(P, X, r), Union(M, neg(Xr)), f0, "main.split")

    Z = Product(p_main(n, r1, 1), _main_x(n, 1))

    def fz(y):
        _, (_, q, xe) = y
        side, (_, a, b) = xe
        return ("L", ("p", q, ("R" if side == "L" else "L", ("p", b, a))))

    zero = Sijection(Z, EMPTY, fz, "main.zero")
    Full = Union(M, Z)
    pad = invert(compose(sum_sij(identity_sij(M), zero), union_unit(M)))
    A1, B1 = asm_set(n, 1), b_set(n, 1)
    F = Union(Product(B1, asm_rec_domain(n, r1)), neg(Product(A1, b_recurrence_domain(n, r1))))

    def ff(e):
        if e[0] == "L":
            _, (_, ct, (_, qe, xe)) = e
        else:
            ct, (_, qe, xe) = jidx(1), e[1]
        side, (_, u, v) = xe
        return (side, ("p", u, ("x", ct, ("p", qe, v))))

    regroup = relabel(Full, F, ff, "main.regroup")
    rec = sum_sij(product_sij(identity_sij(B1), asm_recurrence(n, r1, x, impl)),
                  opposite_sij(product_sij(identity_sij(A1), _b_rec(n, r1))))
    to_x = compose_all(pad, regroup, rec)
    return compose_all(split, sum_sij(to_x, identity_sij(neg(Xr))), cancel_sij(Xr), name=f"main_row({n},{r1})")


@lru_cache(maxsize=None)
def _b_rec(n: int, i: int) -> Sijection:
    return b_recurrence(n, i)


def _asm_y(n: int, r1: int):
    return neg(Product(KSubsets(2 * n - r1 - 1, n - r1), asm_set(n, 1)))


@lru_cache(maxsize=None)
def _asm_row(n: int, r1: int, x: int, impl: str) -> Sijection:
    """⨆_{c=2}^{n} P_{r1,c} x ASM_{n,c} => -C([2n-r1-1], n-r1) x ASM_{n,1}."""
    P = p_matrix(n)
    X = tuple(asm_set(n, c) for c in range(2, n + 1))
    r = r1 - 2
    Ar = asm_set(n, r1)
    M = int_union(2, n, lambda c: Product(p_main(n, r1, c), asm_set(n, c)), label=("asmM", n, r1))

    def f0(e):
        _, qt, (_, pe, xe) = e
        q = qt[1][0]
        if q == r:
            if pe[0] == "R":
                return ("R", xe)
            pe = pe[1]
        return ("L", ("x", jidx(q + 2), ("p", pe, xe)))

    split = relabel(row_domain(P, X, r), Union(M, neg(Ar)), f0, "asmrow.split")
    Z1 = Product(p_main(n, r1, 1), asm_set(n, 1))

    def fj(e):
        if e[0] == "L":
            return e[1]
        return ("x", jidx(1), e[1])

    phi = compose(relabel(Union(M, Z1), asm_rec_domain(n, r1), fj, "asmrow.join"), asm_recurrence(n, r1, x, impl))
    mr = move_right(phi, M, Z1)
    negZ = neg(Z1)

    def fr(e):
        if e[0] == "L":
            inner = e[1]
            return ("L", inner[1]) if inner[0] == "R" else ("R", ("L", inner[1]))
        return ("R", ("R", e[1]))

    shuffle = relabel(Union(Union(Ar, negZ), neg(Ar)), Union(negZ, Union(Ar, neg(Ar))), fr, "asmrow.shuffle")
    return compose_all(split, sum_sij(mr, identity_sij(neg(Ar))), shuffle,
                       sum_sij(identity_sij(negZ), cancel_sij(Ar)), union_unit(negZ), name=f"asm_row({n},{r1})")


# ---------------------------------------------------------------- bijections

@dataclass
class Bijection:
    """A sijection between two all-positive sets, read as a bijection."""

    sij: Sijection
    name: str = "bijection"

    @property
    def domain(self):
        return self.sij.domain

    @property
    def codomain(self):
        return self.sij.codomain

    def __call__(self, e):
        y = self.sij(("L", e))
        if y[0] != "R":
            raise SijectionError(f"{self.name}: {e!r} was cancelled on its own side")
        return y[1]

    def inverse(self, e):
        y = self.sij(("R", e))
        if y[0] != "L":
            raise SijectionError(f"{self.name}: {e!r} was cancelled on its own side")
        return y[1]

    def pairs(self) -> list:
        """(left, right) for every left element, sorted by canonical encoding of the left."""
        out = [(e, self(e)) for e in self.domain.elements()]
        return sorted(out, key=lambda p: canonical_encode(p[0]))


def _check_ni(n, i, impl="fallback"):
    if n < 1 or not 1 <= i <= n:
        raise ValueError("need n >= 1 and 1 <= i <= n")
    _check_impl(impl)


def _swap_bij(S, T, f, name):
    return Bijection(from_bijection(S, T, f, f, name), name)


@lru_cache(maxsize=None)
def main_bijection(n: int, i: int, x: int = 0, impl: str = "fallback") -> Bijection:
    """DPP_{n-1} x B_{n,1} x ASM_{n,i} -> DPP_{n-1} x ASM_{n,1} x B_{n,i}."""
    _check_ni(n, i, impl)
    D = dpp_set(n - 1)
    left = Product(D, b_set(n, 1), asm_set(n, i))
    right = Product(D, asm_set(n, 1), b_set(n, i))
    name = f"main({n},{i},{x})"
    if i == 1:
        return _swap_bij(left, right, lambda e: ("p", e[1], e[3], e[2]), name)
    m = n - 1
    P = p_matrix(n)
    X = tuple(_main_x(n, c) for c in range(2, n + 1))
    rows = [_main_row(n, r1, x, impl) for r1 in range(2, n + 1)]
    jj = i - 2
    sz = solve_zero(P, X, rows, jj)
    dP = determinant(P)
    BA, AB = Product(b_set(n, 1), asm_set(n, i)), Product(asm_set(n, 1), b_set(n, i))
    La, LY = Product(dP, BA), Product(dP, AB)

    def fsplit(e):
        _, d, (side, v) = e
        return (side, ("p", d, v))

    split = relabel(sz.domain, Union(La, neg(LY)), fsplit, "main.distribute")
    core = move_right(compose(invert(split), sz), La, neg(LY))
    core = compose(core, relabel(Union(EMPTY, LY), LY, lambda e: e[1], "main.unwrap"))
    sg = parity_sign(m - 1 + 1)  # (-1)^{n-1}
    fd = from_det(n)
    sD = signed(sg, D)

    def flat3(e):
        _, d, (_, a, b) = e
        return ("p", d, a, b)

    lfd = compose(product_sij(fd, identity_sij(BA)), _flatten_signed(sD, BA, sg, left))
    rfd = compose(product_sij(fd, identity_sij(AB)), _flatten_signed(sD, AB, sg, right))
    whole = compose_all(invert(lfd), core, rfd)
    return Bijection(signed_sij(sg, whole), name)


def _flatten_signed(sD, pair, sg, target):
    """(sg D) x (U x V) => sg (D x U x V), same elements reshaped."""

    def f(e):
        _, d, (_, a, b) = e
        return ("p", d, a, b)

    return relabel(Product(sD, pair), signed(sg, target), f, "flatten")


@lru_cache(maxsize=None)
def asm_to_dpp(n: int, i: int, x: int = 0, impl: str = "fallback") -> Bijection:
    """DPP_{n-1} x ASM_{n,i} -> ASM_{n,1} x DPP_{n,i}."""
    _check_ni(n, i, impl)
    D = dpp_set(n - 1)
    left = Product(D, asm_set(n, i))
    right = Product(asm_set(n, 1), dpp_set(n, i))
    name = f"asm_to_dpp({n},{i},{x})"
    if i == 1:
        return _swap_bij(left, right, lambda e: ("p", e[2], e[1]), name)
    m = n - 1
    jj = i - 2
    P, S, T = p_matrix(n), s_matrix(n, m), t_matrix(n, m)
    A1, Ai = asm_set(n, 1), asm_set(n, i)
    X = tuple(asm_set(n, c) for c in range(2, n + 1))
    Y = tuple(_asm_y(n, r1) for r1 in range(2, n + 1))
    rows = [_asm_row(n, r1, x, impl) for r1 in range(2, n + 1)]
    cram = cramer(P, X, Y, rows, jj)
    Pj = P.replace_column(jj, Y)
    Rj = product_matrix(S, Pj)
    keep = [c for c in range(m) if c != jj]
    Tj = _sub(T, range(m - 1), keep)
    Tp = SignedMatrix(tuple(
        tuple((neg(A1) if r == m - 1 else EMPTY) if c == jj else T.rows[r][c] for c in range(m))
        for r in range(m)))

    def col_sij(r):
        # ⨆_p S_{r,p} x Y_p => -(C([-1],0) or ∅) x ASM_{n,1} => T'_{r,jj}
        i1 = r + 1
        cc = n - i1 - 1
        dom = Rj.rows[r][jj]
        mid = neg(Product(cv_left(n, n, cc), A1))

        def f(e):
            _, pt, (_, se, (_, (_, csub), a)) = e
            p1 = pt[1][0] + 1
            return ("p", ("x", jidx(p1 - i1), ("p", se, ("i", complement(csub, 2 * n - p1 - 2)))), a)

        s1 = relabel(dom, mid, f, "Q.split")
        s2 = opposite_sij(product_sij(chu_vandermonde(n, n, cc), identity_sij(A1)))
        s3 = relabel(s2.codomain, Tp.rows[r][jj], lambda e: e[2], "Q.unit")
        return compose_all(s1, s2, s3)

    def phi(r, c):
        return col_sij(r) if c == jj else _r_entry_sij(n, S, P, r, c)

    sg1 = -parity_sign(m - 1 + jj)
    chain1 = compose_all(
        cram,
        _prepend_unit(Pj, S),
        invert(det_product(S, Pj)),
        det_entrywise(Rj, Tp, phi),
        _drop_last(n, Tp, jj, signed(sg1, Product(determinant(Tj), A1)), lambda a: a),
    )

    Wj = w_matrix(n, i)
    Uj = product_matrix(Wj, S)
    V = SignedMatrix(tuple(
        tuple(KSubsets(c - i + 1, c - i + 2) if r == m - 1 else neg(T.rows[r][c]) for c in range(m))
        for r in range(m)))

    def bottom_sij(c):
        c1 = c + 1
        cc = c1 - i + 1
        dom = Uj.rows[m - 1][c]
        if cc < 0:
            return empty_sij(dom, V.rows[m - 1][c])

        def f(e):
            _, pt, (_, de, se) = e
            p1 = pt[1][0] + 1
            return ("x", jidx(c1 - p1), ("p", se, de))

        return compose(relabel(dom, cv_left(n, n, cc), f, "Wbottom.split"), chu_vandermonde(n, n, cc))

    def psi(r, c):
        return bottom_sij(c) if r == m - 1 else _u_entry_sij(n, Wj, S, r, c)

    sg2 = parity_sign(jj)
    chain2 = compose_all(
        _append_unit(Wj, S),
        invert(det_product(Wj, S)),
        det_entrywise(Uj, V, psi),
        _drop_last(n, V, jj, signed(sg2, determinant(Tj)), None),
    )
    sg = parity_sign(n - 1)
    assert sg == sg1 * sg2
    # left end: (-1)^{n-1} DPP_{n-1} x ASM_{n,i}
    fd = from_det(n)
    lfd = compose(product_sij(fd, identity_sij(Ai)),
                  relabel(Product(signed(sg, D), Ai), signed(sg, left), lambda e: e, "flat"))
    # right end: chain2 x id, re-signed, then LGV
    c2 = compose(product_sij(chain2, identity_sij(A1)),
                 _same_elements(Product(signed(sg2, determinant(Tj)), A1), signed(sg2, Product(determinant(Tj), A1))))
    c2 = signed_sij(sg1 * sg2, c2)
    lg = signed_sij(sg, compose(product_sij(lgv_dpp_sij(n, i), identity_sij(A1)),
                                relabel(Product(dpp_set(n, i), A1), right, lambda e: ("p", e[2], e[1]), "swap")))
    whole = compose_all(invert(lfd), chain1, invert(c2), lg)
    return Bijection(signed_sij(sg, whole), name)


# ---------------------------------------------------------------- text / JSON rendering

def dpp_text(rows) -> str:
    if not rows:
        return "∅"
    return " / ".join(" ".join(str(v) for v in r) for r in rows)


def asm_text(A) -> str:
    return "[" + ",".join("[" + ",".join(str(v) for v in r) + "]" for r in A) + "]"


def _render_factor(kind, e, n):
    v = e[1]
    if kind == "dpp":
        return dpp_text(dpp_rows(v))
    if kind == "asm":
        return asm_text(asm_matrix(v, n))
    return subset_string(v)


TABLE_KINDS = {
    "main": (("dpp", "b", "asm"), ("dpp", "asm", "b")),
    "asmdpp": (("dpp", "asm"), ("asm", "dpp")),
}


def table_lines(problem: str, n: int, i: int, x: int = 0, impl: str = "fallback", fmt: str = "text") -> list:
    """The full correspondence table, one line per left element, canonically sorted.

    Every left element appears once, and the right elements are checked to
    be distinct and to exhaust the right side.
    """
    if problem not in TABLE_KINDS:
        raise ValueError(f"unknown problem {problem!r}")
    bij = main_bijection(n, i, x, impl) if problem == "main" else asm_to_dpp(n, i, x, impl)
    pairs = bij.pairs()
    rights = [r for _, r in pairs]
    if len(set(rights)) != len(rights):
        raise SijectionError(f"{bij.name} is not injective")
    if set(rights) != set(bij.codomain.elements()):
        raise SijectionError(f"{bij.name} is not surjective")
    lk, rk = TABLE_KINDS[problem]
    out = []
    for a, b in pairs:
        if fmt == "json":
            out.append(json.dumps({"left": element_to_json(a), "right": element_to_json(b)}, separators=(",", ":")))
        else:
            ls = ", ".join(_render_factor(k, f, n) for k, f in zip(lk, a[1:]))
            rs = ", ".join(_render_factor(k, f, n) for k, f in zip(rk, b[1:]))
            out.append(f"({ls}) ↔ ({rs})")
    return out


def _all_pairs_check(bij: Bijection) -> bool:
    """Total and injective over the full domain, and onto the codomain."""
    seen = set()
    for e in bij.domain.elements():
        y = bij(e)
        if y in seen or not bij.codomain.contains(y):
            return False
        seen.add(y)
    return len(seen) == bij.codomain.size


def check_bijection(bij: Bijection) -> bool:
    try:
        return _all_pairs_check(bij)
    except SijectionError:
        return False


