"""Sijections between sets of subsets: interval splitting, trinomial
revision, Chu–Vandermonde, and the binomial recursion for the sets B_{n,i}.

Subsets of [m] are stored as sorted integer tuples inside ('i', c).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .signed import (
    Finite,
    Interval,
    KSubsets,
    Product,
    Union,
    int_union,
    jidx,
    parity_sign,
    signed,
)
from .sijection import (
    Sijection,
    compose_all,
    empty_sij,
    fiber_matcher,
    fiberwise,
    from_bijection,
    identity_sij,
    product_sij,
    signed_sij,
)


# ---------------------------------------------------------------- helpers

def complement(c, m: int) -> tuple:
    """Complement of the sorted tuple c inside [m]."""
    s = set(c)
    return tuple(x for x in range(1, m + 1) if x not in s)


def subset_string(c) -> str:
    """Digit string of a subset, e.g. (1, 3, 4) -> '134'; '∅' for empty."""
    if not c:
        return "∅"
    if all(0 <= x <= 9 for x in c):
        return "".join(str(x) for x in c)
    return "{" + ",".join(str(x) for x in c) + "}"


def compositions_from_bars(bars, total: int, parts: int) -> tuple:
    """Weak composition encoded by bar positions in a stars-and-bars word.

    The word has ``total + parts - 1`` letters; `bars` lists the ``parts - 1``
    bar positions (1-based).  Returns the part sizes.
    """
    ext = (0,) + tuple(bars) + (total + parts,)
    return tuple(ext[m] - ext[m - 1] - 1 for m in range(1, parts + 1))


def bars_from_composition(pi) -> tuple:
    out = []
    acc = 0
    for m, p in enumerate(pi[:-1], start=1):
        acc += p
        out.append(acc + m)
    return tuple(out)


# ---------------------------------------------------------------- alpha

def alpha(a: int, b: int, c: int) -> Sijection:
    """[a, c] => [a, b] ⊔ [b+1, c], a normal sijection.

    Each integer x has either no points or exactly two points of opposite
    parity among the three intervals; those two points are paired.
    """
    S = Interval(a, c)
    L, R = Interval(a, b), Interval(b + 1, c)
    T = Union(L, R)

    def key(x):
        return x[1][1][0] if x[0] == "L" else x[1][1][1][0]

    def points(v):
        e = ("i", (v,))
        out = []
        if S.contains(e):
            out.append(("L", e))
        if L.contains(e):
            out.append(("R", ("L", e)))
        if R.contains(e):
            out.append(("R", ("R", e)))
        return out

    return fiber_matcher(S, T, key, points, f"alpha({a},{b},{c})")


# ---------------------------------------------------------------- trinomial revision

def trinomial_forward(a: int, b: int, c: int, A: tuple, Bp: tuple) -> tuple:
    """(A, B') in C([a+b+c], a) x C([b+c], b) -> (B, C') in C([a+b+c], b) x C([a+c], c)."""
    N = a + b + c
    compA = complement(A, N)
    B = tuple(compA[x - 1] for x in Bp)
    compB = complement(B, N)
    AB = set(A) | set(B)
    pos = {v: k for k, v in enumerate(compB, start=1)}
    Cp = tuple(pos[v] for v in compB if v not in AB)
    return B, Cp


def trinomial_backward(a: int, b: int, c: int, B: tuple, Cp: tuple) -> tuple:
    N = a + b + c
    compB = complement(B, N)
    C = tuple(compB[x - 1] for x in Cp)
    A = complement(tuple(sorted(set(B) | set(C))), N)
    compA = complement(A, N)
    pos = {v: k for k, v in enumerate(compA, start=1)}
    Bp = tuple(pos[v] for v in B)
    return A, Bp


def trinomial(a: int, b: int, c: int) -> Sijection:
    """C([a+b+c], a) x C([b+c], b) => C([a+b+c], b) x C([a+c], c)."""
    N = a + b + c
    dom = Product(KSubsets(N, a), KSubsets(b + c, b))
    cod = Product(KSubsets(N, b), KSubsets(a + c, c))
    if a < 0 or b < 0 or c < 0:
        return empty_sij(dom, cod, f"trinomial({a},{b},{c})")

    def f(e):
        B, Cp = trinomial_forward(a, b, c, e[1][1], e[2][1])
        return ("p", ("i", B), ("i", Cp))

    def g(e):
        A, Bp = trinomial_backward(a, b, c, e[1][1], e[2][1])
        return ("p", ("i", A), ("i", Bp))

    return from_bijection(dom, cod, f, g, f"trinomial({a},{b},{c})")


# ---------------------------------------------------------------- Chu–Vandermonde

def cv_left(a: int, b: int, c: int):
    """⨆_{j=0}^{c} (-1)^j C([b], j) x C([a+c-j-1], a-1)."""
    return int_union(
        0, c,
        lambda j: signed(parity_sign(j), Product(KSubsets(b, j), KSubsets(a + c - j - 1, a - 1))),
        label=("CV", a, b, c),
    )


def cv_right(a: int, b: int, c: int):
    if a >= b:
        return KSubsets(a + c - b - 1, c)
    return signed(parity_sign(c), KSubsets(b - a, c))


def chu_vandermonde(a: int, b: int, c: int) -> Sijection:
    """Signed Chu–Vandermonde identity for a >= 1, b >= 0.

    The left side is ⨆_j (-1)^j C([b], j) x C([a+c-j-1], a-1); an element is
    a set J and a weak composition π of c - |J| into a parts (stars and bars).
    The right side is C([a+c-b-1], c) when a >= b and (-1)^c C([b-a], c)
    otherwise.  The involution moves the smallest i <= min(a, b) with i in J
    or π_i > 0 between J and π_i.
    """
    if a < 1 or b < 0:
        raise ValueError("chu_vandermonde needs a >= 1 and b >= 0")
    dom, cod = cv_left(a, b, c), cv_right(a, b, c)
    name = f"cv({a},{b},{c})"
    if c < 0:
        return empty_sij(dom, cod, name)
    r = min(a, b)

    def left_elem(J, pi):
        j = len(J)
        return ("x", jidx(j), ("p", ("i", tuple(J)), ("i", bars_from_composition(pi))))

    def fn(x):
        side, e = x
        if side == "R":
            C = e[1]
            if a >= b:
                N = a + c - b - 1
                rest = compositions_from_bars(complement(C, N), c, a - b)
                return ("L", left_elem((), (0,) * b + rest))
            return ("L", left_elem(tuple(v + a for v in C), (0,) * a))
        _, t, pe = e
        j = t[1][0]
        J = pe[1][1]
        pi = list(compositions_from_bars(pe[2][1], c - j, a))
        Jset = set(J)
        for i in range(1, r + 1):
            if i in Jset:
                pi[i - 1] += 1
                return ("L", left_elem(tuple(v for v in J if v != i), pi))
            if pi[i - 1] > 0:
                pi[i - 1] -= 1
                return ("L", left_elem(tuple(sorted(J + (i,))), pi))
        if a >= b:
            rest = pi[b:]
            stars = complement(bars_from_composition(rest), a + c - b - 1)
            return ("R", ("i", stars))
        return ("R", ("i", tuple(v - a for v in J)))

    return Sijection(dom, cod, fn, name)


# ---------------------------------------------------------------- binomial complement

def binom_complement(m: int, k: int) -> Sijection:
    """C([m], k) => C([m], m-k) by complementation inside [m] (m >= 0)."""

    def f(e):
        return ("i", complement(e[1], m))

    return from_bijection(KSubsets(m, k), KSubsets(m, m - k), f, f, f"compl({m},{k})")


# ---------------------------------------------------------------- B_{n,i}

@lru_cache(maxsize=None)
def _b_table(n: int, i: int) -> tuple:
    if not 1 <= i <= n:
        return ()
    med = n + i - 1
    lows = itertools.combinations(range(1, med), n - 1)
    out = []
    for lo in lows:
        for hi in itertools.combinations(range(med + 1, 3 * n - 1), n - 1):
            out.append(lo + (med,) + hi)
    return tuple(out)


def b_set(n: int, i: int) -> Finite:
    """B_{n,i}: (2n-1)-subsets of [3n-2] with median n+i-1."""
    return Finite(("B", n, i), lambda: _b_table(n, i), dimension=2 * n - 1)


def b_all(n: int) -> Finite:
    return Finite(("Ball", n), lambda: [c for i in range(1, n + 1) for c in _b_table(n, i)],
                  dimension=2 * n - 1)


def b_split_forward(n: int, i: int, c: tuple) -> tuple:
    lo = c[: n - 1]
    hi = tuple(x - (n + i - 1) for x in c[n:])
    return lo, hi


def b_split_backward(n: int, i: int, lo: tuple, hi: tuple) -> tuple:
    return tuple(lo) + (n + i - 1,) + tuple(x + n + i - 1 for x in hi)


def b_split(n: int, i: int) -> Sijection:
    """B_{n,i} => C([n+i-2], n-1) x C([2n-i-1], n-1)."""
    cod = Product(KSubsets(n + i - 2, n - 1), KSubsets(2 * n - i - 1, n - 1))

    def f(e):
        lo, hi = b_split_forward(n, i, e[1])
        return ("p", ("i", lo), ("i", hi))

    def g(e):
        return ("i", b_split_backward(n, i, e[1][1], e[2][1]))

    return from_bijection(b_set(n, i), cod, f, g, f"b_split({n},{i})")


def b_recurrence_domain(n: int, i: int):
    """⨆_{j=1}^{n} (-1)^{j+1} C([2n-i-1], n-i-j+1) x B_{n,j}."""
    return int_union(
        1, n,
        lambda j: signed(parity_sign(j + 1), Product(KSubsets(2 * n - i - 1, n - i - j + 1), b_set(n, j))),
        label=("Brec", n, i),
    )


def b_recurrence(n: int, i: int) -> Sijection:
    """⨆_{j=1}^{n} (-1)^{j+1} C([2n-i-1], n-i-j+1) x B_{n,j} => B_{n,i}."""
    D0 = b_recurrence_domain(n, i)

    # split each B_{n,j}
    D1 = int_union(
        1, n,
        lambda j: signed(parity_sign(j + 1), Product(
            KSubsets(2 * n - i - 1, n - i - j + 1),
            Product(KSubsets(n + j - 2, n - 1), KSubsets(2 * n - j - 1, n - 1)))),
        label=("Brec1", n, i),
    )
    s1 = fiberwise(D0, D1, lambda t: signed_sij(
        parity_sign(t[1][0] + 1),
        product_sij(identity_sij(KSubsets(2 * n - i - 1, n - i - t[1][0] + 1)), b_split(n, t[1][0]))))

    # reindex j -> j + 1 and apply the trinomial revision
    def d3_fam(j):
        return signed(parity_sign(j), Product(
            KSubsets(2 * n - i - 1, n - 1), KSubsets(n - i, j), KSubsets(2 * n - j - 2, n - 1)))

    D3 = int_union(0, n - 1, d3_fam, label=("Brec3", n, i))

    def f3(e):
        _, t, p = e
        j = t[1][0] - 1
        A, (_, Bp, Y) = p[1], p[2]
        B, Cp = trinomial_forward(n - i - j, n - 1, j, A[1], Bp[1])
        return ("x", jidx(j), ("p", ("i", B), ("i", Cp), Y))

    def g3(e):
        _, t, p = e
        j = t[1][0]
        _, B, Cp, Y = p
        A, Bp = trinomial_backward(n - i - j, n - 1, j, B[1], Cp[1])
        return ("x", jidx(j + 1), ("p", ("i", A), ("p", ("i", Bp), Y)))

    s3 = from_bijection(D1, D3, f3, g3, "Brec.trinomial")

    # factor out C([2n-i-1], n-1)
    X = KSubsets(2 * n - i - 1, n - 1)
    CVL = cv_left(n, n - i, n - 1)
    D4 = Product(X, CVL)

    def f4(e):
        _, t, (_, x, J, Y) = e
        return ("p", x, ("x", t, ("p", J, Y)))

    def g4(e):
        _, x, (_, t, (_, J, Y)) = e
        return ("x", t, ("p", x, J, Y))

    s4 = from_bijection(D3, D4, f4, g4, "Brec.factor")
    s5 = product_sij(identity_sij(X), chu_vandermonde(n, n - i, n - 1))
    D5 = s5.codomain

    def f6(e):
        _, hi, lo = e
        return ("i", b_split_backward(n, i, lo[1], hi[1]))

    def g6(e):
        lo, hi = b_split_forward(n, i, e[1])
        return ("p", ("i", hi), ("i", lo))

    s6 = from_bijection(D5, b_set(n, i), f6, g6, "Brec.join")
    return compose_all(s1, s3, s4, s5, s6, name=f"b_recurrence({n},{i})")
