"""Determinants of matrices of signed sets and bijective linear algebra.

A matrix is a tuple of rows of signed sets (0-based indices).  Its
determinant is the signed set

    det(P) = ⨆_{π ∈ S_m} P[0][π(0)] x ... x P[m-1][π(m-1)],

with elements ('x', ('i', π), ('p', e_0, ..., e_{m-1})) and π stored as a
0-based permutation tuple; permutations enumerate lexicographically and
carry the sign of their inversion count.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .signed import (
    EMPTY,
    Finite,
    IndexedUnion,
    Product,
    SignedSet,
    int_union,
    jidx,
)
from .sijection import (
    Sijection,
    SijectionError,
    compose,
    empty_sij,
    fiberwise,
    identity_sij,
    invert,
    product_sij,
)


def perm_sign(p: Sequence[int]) -> int:
    inv = sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])
    return -1 if inv % 2 else 1


def perm_inverse(p: Sequence[int]) -> tuple:
    out = [0] * len(p)
    for k, v in enumerate(p):
        out[v] = k
    return tuple(out)


@lru_cache(maxsize=None)
def _perms(m: int) -> tuple:
    return tuple(itertools.permutations(range(m)))


def permutations_set(m: int) -> Finite:
    """The signed set of permutations of {0..m-1}, sign = parity."""
    return Finite(("Sym", m), lambda: _perms(m), sign=perm_sign)


@dataclass(frozen=True)
class SignedMatrix:
    """Square matrix of signed sets."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix of signed sets must be square")

    @property
    def m(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def replace_column(self, j: int, col: Sequence[SignedSet]) -> "SignedMatrix":
        """P^j: column j replaced by `col`, other entries shared by reference."""
        return SignedMatrix(tuple(r[:j] + (col[i],) + r[j + 1:] for i, r in enumerate(self.rows)))

    def sizes(self) -> list:
        return [[e.size for e in r] for r in self.rows]


def as_matrix(P) -> SignedMatrix:
    return P if isinstance(P, SignedMatrix) else SignedMatrix(tuple(tuple(r) for r in P))


def determinant(P) -> IndexedUnion:
    P = as_matrix(P)
    m = P.m
    return IndexedUnion(
        permutations_set(m),
        lambda t: Product(*(P.rows[i][t[1][i]] for i in range(m))),
        label=("det", P.rows),
    )


def int_det(M) -> int:
    """Integer determinant by Bareiss elimination (test oracle)."""
    from fractions import Fraction

    A = [[Fraction(x) for x in r] for r in M]
    m = len(A)
    det = Fraction(1)
    for c in range(m):
        piv = next((r for r in range(c, m) if A[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, m):
            f = A[r][c] / A[c][c]
            for k in range(c, m):
                A[r][k] -= f * A[c][k]
    return int(det)


# ---------------------------------------------------------------- entrywise

def det_entrywise(P, Q, phi: Callable[[int, int], Sijection]) -> Sijection:
    """det(P) => det(Q) from entry sijections ``phi(i, j): P_ij => Q_ij``."""
    P, Q = as_matrix(P), as_matrix(Q)
    dom, cod = determinant(P), determinant(Q)
    memo = {}

    def get(i, j):
        if (i, j) not in memo:
            memo[(i, j)] = phi(i, j)
        return memo[(i, j)]

    def fiber(t):
        return product_sij(*(get(i, t[1][i]) for i in range(P.m)))

    return fiberwise(dom, cod, fiber, "det_entrywise")


# ---------------------------------------------------------------- product

def product_matrix(P, Q) -> SignedMatrix:
    """R_ij = ⨆_p P_ip x Q_pj (index element ('i', (p,)), p 0-based)."""
    P, Q = as_matrix(P), as_matrix(Q)
    if P.m != Q.m:
        raise ValueError("dimension mismatch")
    m = P.m

    def entry(i, j):
        return int_union(0, m - 1, lambda p: Product(P.rows[i][p], Q.rows[p][j]),
                         label=("Rprod", P.rows[i], Q.column(j)))

    return SignedMatrix(tuple(tuple(entry(i, j) for j in range(m)) for i in range(m)))


def det_product(P, Q) -> Sijection:
    """det(R) => det(P) x det(Q) with R = product_matrix(P, Q).

    A term of det(R) is (π, (l_i, x_i, y_i)_i) with x_i in P[i][l_i] and y_i
    in Q[l_i][π(i)].  If the l_i repeat, the smallest pair i < j with
    l_i = l_j is used to cancel against π∘(i j) with y_i and y_j swapped.
    Otherwise l is a permutation λ and the term is matched with
    (λ, x) x (π∘λ⁻¹, z) where z_{l_i} = y_i.
    """
    P, Q = as_matrix(P), as_matrix(Q)
    if P.m != Q.m:
        raise ValueError("dimension mismatch")
    m = P.m
    R = product_matrix(P, Q)
    dom = determinant(R)
    cod = Product(determinant(P), determinant(Q))

    def fn(x):
        side, e = x
        if side == "R":
            (_, lt, xs), (_, tt, zs) = e[1], e[2]
            lam, tau = lt[1], tt[1]
            pi = tuple(tau[lam[i]] for i in range(m))
            slots = tuple(("x", jidx(lam[i]), ("p", xs[1 + i], zs[1 + lam[i]])) for i in range(m))
            return ("L", ("x", ("i", pi), ("p",) + slots))
        _, pt, slots = e
        pi = pt[1]
        slots = slots[1:]
        ls = [s[1][1][0] for s in slots]
        pair = next(((i, j) for j in range(m) for i in range(j) if ls[i] == ls[j]), None)
        if pair is not None:
            i, j = pair
            sigma = list(pi)
            sigma[i], sigma[j] = sigma[j], sigma[i]
            new = list(slots)
            (_, ti, (_, xi, yi)), (_, tj, (_, xj, yj)) = slots[i], slots[j]
            new[i] = ("x", ti, ("p", xi, yj))
            new[j] = ("x", tj, ("p", xj, yi))
            return ("L", ("x", ("i", tuple(sigma)), ("p",) + tuple(new)))
        lam = tuple(ls)
        tau = [0] * m
        zs = [None] * m
        for i in range(m):
            tau[lam[i]] = pi[i]
            zs[lam[i]] = slots[i][2][2]
        xs = tuple(slots[i][2][1] for i in range(m))
        return ("R", ("p", ("x", ("i", lam), ("p",) + xs), ("x", ("i", tuple(tau)), ("p",) + tuple(zs))))

    return Sijection(dom, cod, fn, "det_product")


# ---------------------------------------------------------------- Cramer's rule

def row_domain(P, X: Sequence[SignedSet], i: int) -> IndexedUnion:
    """⨆_q P_iq x X_q, the domain every row sijection for `cramer` must have."""
    P = as_matrix(P)
    X = tuple(X)
    return int_union(0, P.m - 1, lambda q: Product(P.rows[i][q], X[q]),
                     label=("row", P.rows[i], X))


def cramer(P, X: Sequence[SignedSet], Y: Sequence[SignedSet], rows: Sequence[Sijection], j: int) -> Sijection:
    """det(P) x X_j => det(P^j), where P^j has column j replaced by Y.

    ``rows[i]`` must be a sijection ``row_domain(P, X, i) => Y[i]``.
    """
    P = as_matrix(P)
    X, Y = tuple(X), tuple(Y)
    m = P.m
    if len(rows) != m or any(r is None for r in rows):
        raise SijectionError("cramer: missing row sijection")
    for i, r in enumerate(rows):
        if r.domain != row_domain(P, X, i) or r.codomain != Y[i]:
            raise SijectionError(f"cramer: row sijection {i} has the wrong shape")
    Pj = P.replace_column(j, Y)
    Sym = permutations_set(m)

    def mid_family(t):
        pi = t[1]
        s = perm_inverse(pi)[j]
        return Product(*(row_domain(P, X, k) if k == s else P.rows[k][pi[k]] for k in range(m)))

    D = IndexedUnion(Sym, mid_family, label=("cramerD", P.rows, X, j))

    def fiber(t):
        pi = t[1]
        s = perm_inverse(pi)[j]
        return product_sij(*(rows[k] if k == s else identity_sij(P.rows[k][pi[k]]) for k in range(m)))

    rho = fiberwise(D, determinant(Pj), fiber, "cramer.rows")
    target = Product(determinant(P), X[j])

    def kappa(x):
        side, e = x
        if side == "R":
            (_, pt, ps), xe = e[1], e[2]
            pi = pt[1]
            s = perm_inverse(pi)[j]
            slots = list(ps[1:])
            slots[s] = ("x", jidx(j), ("p", slots[s], xe))
            return ("L", ("x", pt, ("p",) + tuple(slots)))
        _, pt, ps = e
        pi = pt[1]
        s = perm_inverse(pi)[j]
        slots = list(ps[1:])
        _, qt, (_, a, xe) = slots[s]
        q = qt[1][0]
        if q == j:
            slots[s] = a
            return ("R", ("p", ("x", pt, ("p",) + tuple(slots)), xe))
        p = perm_inverse(pi)[q]
        sigma = list(pi)
        sigma[s], sigma[p] = sigma[p], sigma[s]
        b = slots[p]
        slots[s] = a
        slots[p] = ("x", qt, ("p", b, xe))
        return ("L", ("x", ("i", tuple(sigma)), ("p",) + tuple(slots)))

    k = Sijection(D, target, kappa, "cramer.cancel")
    return compose(invert(k), rho, name=f"cramer[{j}]")


def solve_zero(P, X: Sequence[SignedSet], rows: Sequence[Sijection], j: int) -> Sijection:
    """det(P) x X_j => ∅ from row sijections ``⨆_q P_iq x X_q => ∅``."""
    P = as_matrix(P)
    phi = cramer(P, X, [EMPTY] * P.m, rows, j)
    return compose(phi, empty_sij(phi.codomain, EMPTY), name=f"solve_zero[{j}]")
