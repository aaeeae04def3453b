"""Rotation of monotone triangles: MT(k) => (-1)^{n-1} MT(rot(k)).

The signed sets E_j(k), F_j(k) and their primed variants are indexed by
pairs U ⊆ V.  A pair is coded as a vector over the ground set with entries
0 (not in V), 1 (in V but not in U) and 2 (in U); its sign is (-1)^{|U|}.
Throughout, a parameter ``s = +1`` selects the E family (entries shifted
up by ε) and ``s = -1`` the F family (entries shifted down).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .patterns import (
    NE,
    NW,
    NWNE,
    arrow_patterns,
    arrow_rows,
    ap_dict,
    ap_from_dict,
    ap_positions,
    deform,
    gamma,
    gt,
    gt_element,
    gt_rows,
    gt_shift,
    mt,
    pi_sij,
    pi_target,
    sgt,
)
from .signed import (
    EMPTY,
    Box,
    Finite,
    IndexedUnion,
    KSubsets,
    Opposite,
    Product,
    Union,
    int_union,
    jidx,
    neg,
    parity_sign,
    signed,
)
from .sijection import (
    Sijection,
    compose,
    compose_all,
    empty_sij,
    fiber_matcher,
    fiberwise,
    from_bijection,
    identity_sij,
    invert,
    move_right,
    normal_union_sij,
    opposite_sij,
    product_sij,
    signed_sij,
    sum_sij,
    union_to_empty,
)
from .subsets import chu_vandermonde, complement, cv_left, cv_right


# ---------------------------------------------------------------- index sets

@lru_cache(maxsize=None)
def vu_set(ground: int, j: int) -> Finite:
    """Pairs U ⊆ V with V a j-subset of a ground set of the given size."""

    def factory():
        for codes in itertools.product(range(3), repeat=max(ground, 0)):
            if sum(1 for c in codes if c) == j:
                yield codes

    return Finite(("VU", ground, j), factory, sign=lambda c: parity_sign(sum(1 for x in c if x == 2)))


def eps_of(codes) -> tuple:
    return tuple(1 if c == 2 else 0 for c in codes)


def _shift(k, eps, s):
    return tuple(a + s * b for a, b in zip(k, eps))


@lru_cache(maxsize=None)
def eps_set(k: tuple, j: int, s: int = 1) -> IndexedUnion:
    """E_j(k) for s = 1, F_j(k) for s = -1."""
    return IndexedUnion(vu_set(len(k), j), lambda t: gt(_shift(k, eps_of(t[1]), s)), label=("E", k, j, s))


@lru_cache(maxsize=None)
def eps_prime_set(k: tuple, j: int, s: int = 1) -> IndexedUnion:
    """E'_j(k) for s = 1, F'_j(k) for s = -1 (V inside {2, ..., n})."""
    return IndexedUnion(vu_set(len(k) - 1, j),
                        lambda t: gt((k[0],) + _shift(k[1:], eps_of(t[1]), s)), label=("E'", k, j, s))


# ---------------------------------------------------------------- prep_elementary

def _prep_dom_bounds(k, eps):
    return tuple((k[i] + eps[i], k[i + 1] + eps[i + 1]) for i in range(len(k) - 1))


def _prep_cod_bounds(k, eps):
    return tuple((k[i] + eps[i], k[i + 1] + eps[i]) for i in range(len(k) - 1))


@lru_cache(maxsize=None)
def prep_domain(k: tuple, j: int) -> IndexedUnion:
    return IndexedUnion(vu_set(len(k), j), lambda t: Box(_prep_dom_bounds(k, eps_of(t[1]))),
                        label=("prepD", k, j))


@lru_cache(maxsize=None)
def prep_main(k: tuple, j: int) -> IndexedUnion:
    return IndexedUnion(vu_set(len(k) - 1, j), lambda t: Box(_prep_cod_bounds(k, eps_of(t[1]))),
                        label=("prepC", k, j))


def _prep_fibre(k, j, x):
    """Points over x in the domain and in the main part of the codomain."""
    n = len(k)
    e = ("i", x)
    dom_pts, cod_pts = [], []
    for t, st in vu_set(n, j).items():
        B = Box(_prep_dom_bounds(k, eps_of(t[1])))
        if B.contains(e):
            dom_pts.append((("x", t, e), st * B.sign(e)))
    for t, st in vu_set(n - 1, j).items():
        B = Box(_prep_cod_bounds(k, eps_of(t[1])))
        if B.contains(e):
            cod_pts.append((("x", t, e), st * B.sign(e)))
    return dom_pts, cod_pts


@lru_cache(maxsize=None)
def _prep_residual_table(k: tuple, j: int) -> dict:
    """x -> signed multiplicity of domain minus main codomain over x (nonzero only)."""
    n = len(k)
    ranges = [range(min(k[i], k[i + 1]) - 1, max(k[i], k[i + 1]) + 3) for i in range(n - 1)]
    out = {}
    for x in itertools.product(*ranges):
        d, c = _prep_fibre(k, j, x)
        m = sum(s for _, s in d) - sum(s for _, s in c)
        if m:
            out[x] = m
    return out


@lru_cache(maxsize=None)
def prep_residual(k: tuple, j: int) -> IndexedUnion:
    """Degenerate correction points: |m| copies of x with sign(m), each with some x_i = x_{i+1} + 1."""
    table = _prep_residual_table(k, j)
    copies = max((abs(m) for m in table.values()), default=0)

    def fam(t):
        c = t[1][0]
        return Finite(("prepX", k, j, c), lambda: [x for x, m in table.items() if abs(m) > c],
                      sign=lambda x: 1 if table[x] > 0 else -1, dimension=len(k) - 1)

    return IndexedUnion(Finite(("copies", copies), lambda: [(c,) for c in range(copies)]), fam,
                        label=("prepXU", k, j))


def gt_degenerate(x) -> bool:
    """GT(x) is empty when x_i = x_{i+1} + 1 for some i (length >= 2)."""
    return any(x[i] == x[i + 1] + 1 for i in range(len(x) - 1))


@lru_cache(maxsize=None)
def prep_elementary(k: tuple, j: int) -> Sijection:
    """Normal sijection from

    ⨆_{V ∈ C([n], j)} ⨆_{U ⊆ V} (-1)^{|U|} ∏_i [k_i + ε_i, k_{i+1} + ε_{i+1}]
    to
    (⨆_{V ∈ C([n-1], j)} ⨆_{U ⊆ V} (-1)^{|U|} ∏_i [k_i + ε_i, k_{i+1} + ε_i]) ⊔ X,

    where X holds the signed difference of the two sides as explicit points;
    every point of X has some x_i = x_{i+1} + 1, so GT vanishes on it, and X
    is empty for n = 2.  Points over each x are paired in canonical order.
    """
    k = tuple(k)
    n = len(k)
    if n < 2:
        raise ValueError("prep_elementary needs n >= 2")
    X = prep_residual(k, j)
    for x in _prep_residual_table(k, j):
        if n == 2 or not gt_degenerate(x):
            raise AssertionError(f"non-degenerate correction point {x} for {k}, {j}")
    dom, cod = prep_domain(k, j), Union(prep_main(k, j), X)
    table = _prep_residual_table(k, j)

    def key(x):
        if x[0] == "L":
            return x[1][2][1]
        return x[1][1][2][1]

    def points(v):
        d, c = _prep_fibre(k, j, v)
        out = [("L", e) for e, _ in d] + [("R", ("L", e)) for e, _ in c]
        for cp in range(abs(table.get(v, 0))):
            out.append(("R", ("R", ("x", ("i", (cp,)), ("i", v)))))
        return out

    return fiber_matcher(dom, cod, key, points, f"prep({k},{j})")


# ---------------------------------------------------------------- E_j, F_j => ∅

def negrev(v) -> tuple:
    return tuple(-a for a in reversed(v))


def gt_negrev(k, e):
    """GT(k) -> GT(-rev k), entrywise negation with reversed rows (sign-preserving)."""
    return gt_element([negrev(r) for r in gt_rows(k, e)])


@lru_cache(maxsize=None)
def zero_sij(k: tuple, j: int, s: int = 1) -> Sijection:
    """E_j(k) => ∅ (s = 1) or F_j(k) => ∅ (s = -1), for j >= 1."""
    k = tuple(k)
    n = len(k)
    dom = eps_set(k, j, s)
    name = f"{'E' if s > 0 else 'F'}zero({k},{j})"
    if j < 1:
        raise ValueError("zero_sij needs j >= 1")
    if j > n:
        return empty_sij(dom, EMPTY, name)
    if s < 0:
        kk = negrev(k)

        def f(e):
            _, t, g = e
            return ("x", ("i", t[1][::-1]), gt_negrev(_shift(k, eps_of(t[1]), -1), g))

        def b(e):
            _, t, g = e
            return ("x", ("i", t[1][::-1]), gt_negrev(_shift(kk, eps_of(t[1]), 1), g))

        rel = from_bijection(dom, eps_set(kk, j, 1), f, b, "negrev")
        return compose(rel, zero_sij(kk, j, 1), name=name)
    if n == 1:
        def fn(x):
            _, (_, t, g) = x
            return ("L", ("x", ("i", (3 - t[1][0],)), g))

        return Sijection(dom, EMPTY, fn, name)

    prep = prep_elementary(k, j)
    nu = normal_union_sij(prep, gt)

    def f1(e):
        _, t, (_, l, g) = e
        return ("x", ("x", t, l), g)

    def b1(e):
        _, (_, t, l), g = e
        return ("x", t, ("x", l, g))

    s1 = from_bijection(dom, nu.domain, f1, b1, "prep.relabel")
    box = Box(tuple((k[i], k[i + 1]) for i in range(n - 1)))
    T3 = IndexedUnion(box, lambda l: eps_set(l[1], j, 1), label=("Erec", k, j))

    def f3(e):
        _, tt, g = e
        assert tt[0] == "L", "correction points carry no GT patterns"
        _, t, x = tt[1]
        return ("x", ("i", _shift(x[1], eps_of(t[1]), -1)), ("x", t, g))

    def b3(e):
        _, l, (_, t, g) = e
        x = _shift(l[1], eps_of(t[1]), 1)
        return ("x", ("L", ("x", t, ("i", x))), g)

    s3 = from_bijection(nu.codomain, T3, f3, b3, "prep.regroup")
    s4 = union_to_empty(T3, lambda l: zero_sij(l[1], j, 1))
    return compose_all(s1, nu, s3, s4, name=name)


def e_zero(k, j) -> Sijection:
    return zero_sij(tuple(k), j, 1)


def f_zero(k, j) -> Sijection:
    return zero_sij(tuple(k), j, -1)


# ---------------------------------------------------------------- E'_j, F'_j

def _first_plus(k, d):
    return (k[0] + d,) + tuple(k[1:])


@lru_cache(maxsize=None)
def prime_target(k: tuple, j: int, s: int = 1) -> IndexedUnion:
    """⨆_{i=0}^{j} (-1)^{j-i} C([j], i) x GT(k_1 + s i, k_2, ..., k_n)."""
    return int_union(0, j, lambda i: signed(parity_sign(j - i), Product(KSubsets(j, i), gt(_first_plus(k, s * i)))),
                     label=("Rp", k, j, s))


@lru_cache(maxsize=None)
def prime_sij(k: tuple, j: int, s: int = 1) -> Sijection:
    """E'_j(k) => prime_target(k, j, 1) (s = 1) or the F' analogue (s = -1)."""
    k = tuple(k)
    dom, cod = eps_prime_set(k, j, s), prime_target(k, j, s)
    name = f"{'E' if s > 0 else 'F'}prime({k},{j})"
    if j == 0:
        return from_bijection(dom, cod, lambda e: ("x", jidx(0), ("p", ("i", ()), e[2])),
                              lambda e: ("x", ("i", (0,) * (len(k) - 1)), e[2][2]), name)
    k1 = _first_plus(k, s)
    A, B = eps_prime_set(k1, j - 1, s), eps_prime_set(k, j - 1, s)
    M = Union(neg(A), B)

    def split(e):
        if e[0] == "L":
            _, t, g = e[1]
            return ("x", ("i", (0,) + t[1]), g)
        side, (_, t, g) = e[1]
        return ("x", ("i", ((2,) if side == "L" else (1,)) + t[1]), g)

    def unsplit(e):
        _, t, g = e
        c, rest = t[1][0], ("i", t[1][1:])
        if c == 0:
            return ("L", ("x", rest, g))
        return ("R", ("L" if c == 2 else "R", ("x", rest, g)))

    psi0 = from_bijection(Union(dom, M), eps_set(k, j, s), split, unsplit, "split1")
    psi = compose(psi0, zero_sij(k, j, s))
    mr = move_right(psi, dom, M)
    tgt = Union(A, neg(B))
    b1 = from_bijection(mr.codomain, tgt, lambda e: e[1], lambda e: ("R", e), "unwrap")
    s2 = sum_sij(prime_sij(k1, j - 1, s), opposite_sij(prime_sij(k, j - 1, s)))

    def join(e):
        side, (_, it, (_, Bs, g)) = e
        i = it[1][0]
        if side == "L":
            return ("x", jidx(i + 1), ("p", ("i", Bs[1] + (j,)), g))
        return ("x", jidx(i), ("p", Bs, g))

    def unjoin(e):
        _, it, (_, Bs, g) = e
        i = it[1][0]
        if j in Bs[1]:
            return ("L", ("x", jidx(i - 1), ("p", ("i", Bs[1][:-1]), g)))
        return ("R", ("x", jidx(i), ("p", Bs, g)))

    b2 = from_bijection(s2.codomain, cod, join, unjoin, "join")
    return compose_all(mr, b1, s2, b2, name=name)


def e_prime(k, j) -> Sijection:
    return prime_sij(tuple(k), j, 1)


def f_prime(k, j) -> Sijection:
    return prime_sij(tuple(k), j, -1)


# ---------------------------------------------------------------- left to right

def _delta(c, arrow):
    return 1 if c == arrow or c == NWNE else 0


def _eps_arrow(s):
    """Arrow carrying ε and arrow counted by p, for the E (s=1) and F (s=-1) sides."""
    return (NW, NE) if s > 0 else (NE, NW)


def ltr_gt_row(k1: int, l: tuple, mu, s: int) -> tuple:
    ae, ap = _eps_arrow(s)
    p = sum(_delta(c, ap) for c in mu)
    return (k1 - s * p,) + tuple(li + s * _delta(c, ae) for li, c in zip(l, mu))


@lru_cache(maxsize=None)
def ltr_end(k1: int, l: tuple, s: int) -> IndexedUnion:
    """⨆_{μ ∈ AR_{n-1}} of the GT sets on either side of `left_to_right`.

    s = -1 gives the domain GT(k_1 + #↖(μ), l_i - δ_↗(μ_{i-1})),
    s = +1 the codomain GT(k_1 - #↗(μ), l_i + δ_↖(μ_{i-1})).
    """
    return IndexedUnion(arrow_rows(len(l)), lambda m: gt(ltr_gt_row(k1, l, m[1], s)), label=("LTRend", k1, l, s))


def _big_set(k1, l, s, inner_factor, tag):
    n = len(l) + 1

    def inner(j):
        m = n - 1 - j
        return int_union(0, m, lambda p: signed(parity_sign(p), Product(KSubsets(m, p), inner_factor((k1 - s * p,) + l, m, s))),
                         label=(tag + "in", k1, l, s, j))

    return int_union(0, n - 1, lambda j: signed(parity_sign(n - 1 - j), inner(j)), label=(tag, k1, l, s))


def _reg_set(k1, l, s, right: bool):
    n = len(l) + 1
    box = Box(((0, n - 1),) + ((0, 1),) * (n - 1))

    def fam(t):
        p, eps = t[1][0], t[1][1:]
        q = sum(eps)
        cv = (cv_right if right else cv_left)(p + 1, n - 1 - q, n - p - 1)
        return signed(parity_sign(n + p + q - 1), Product(cv, gt((k1 - s * p,) + _shift(l, eps, s))))

    return IndexedUnion(box, fam, label=("LTRreg", k1, l, s, right))


def _to_end(k1, l, s):
    """The chain E ⇒ ltr_end(+1) (s = 1) or F ⇒ ltr_end(-1) (s = -1)."""
    n = len(l) + 1
    big = _big_set(k1, l, s, eps_prime_set, "LTRbig")
    reg, reg2 = _reg_set(k1, l, s, False), _reg_set(k1, l, s, True)

    def f_reg(e):
        _, jt, (_, pt, (_, A, (_, vu, g))) = e
        j, p, codes = jt[1][0], pt[1][0], vu[1]
        eps = eps_of(codes)
        q = sum(eps)
        free = [idx for idx, c in enumerate(codes) if c != 2]
        W = tuple(pos + 1 for pos, idx in enumerate(free) if codes[idx] == 1)
        J = complement(W, n - 1 - q)
        return ("x", ("i", (p,) + eps), ("p", ("x", jidx(j), ("p", ("i", J), A)), g))

    def b_reg(e):
        _, t, (_, (_, jt, (_, Jt, A)), g) = e
        p, eps = t[1][0], t[1][1:]
        j = jt[1][0]
        q = sum(eps)
        W = set(complement(Jt[1], n - 1 - q))
        free = [idx for idx, c in enumerate(eps) if c == 0]
        codes = [2 if c else 0 for c in eps]
        for pos, idx in enumerate(free, start=1):
            if pos in W:
                codes[idx] = 1
        return ("x", jidx(j), ("x", jidx(p), ("p", A, ("x", ("i", tuple(codes)), g))))

    s_reg = from_bijection(big, reg, f_reg, b_reg, "ltr.regroup")

    def cv_fiber(t):
        p, eps = t[1][0], t[1][1:]
        q = sum(eps)
        g = gt((k1 - s * p,) + _shift(l, eps, s))
        return signed_sij(parity_sign(n + p + q - 1),
                          product_sij(chu_vandermonde(p + 1, n - 1 - q, n - p - 1), identity_sij(g)))

    s_cv = fiberwise(reg, reg2, cv_fiber, "ltr.cv")
    end = ltr_end(k1, l, s)
    ae, ap = _eps_arrow(s)

    def f_sel(e):
        _, t, (_, S, g) = e
        eps = t[1][1:]
        Q = [idx for idx, c in enumerate(eps) if c]
        mu = [ap if c == 0 else NWNE for c in eps]
        for v in S[1]:
            mu[Q[v - 1]] = ae
        return ("x", ("i", tuple(mu)), g)

    def b_sel(e):
        _, m, g = e
        mu = m[1]
        eps = tuple(_delta(c, ae) for c in mu)
        p = sum(_delta(c, ap) for c in mu)
        Q = [idx for idx, c in enumerate(eps) if c]
        S = tuple(pos for pos, idx in enumerate(Q, start=1) if mu[idx] == ae)
        return ("x", ("i", (p,) + eps), ("p", ("i", S), g))

    s_sel = from_bijection(reg2, end, f_sel, b_sel, "ltr.select")
    return big, compose_all(s_reg, s_cv, s_sel)


def _unsign(S):
    return S.inner if isinstance(S, Opposite) else S


def _prime_stage(k1, l, s):
    """E ⇒ G (s = 1) or F ⇒ G' (s = -1) by e_prime / f_prime on every term."""
    n = len(l) + 1
    big = _big_set(k1, l, s, eps_prime_set, "LTRbig")
    G = _big_set(k1, l, s, prime_target, "LTRG")

    def outer(jt):
        j = jt[1][0]
        m = n - 1 - j

        def inner(pt):
            p = pt[1][0]
            return signed_sij(parity_sign(p), product_sij(identity_sij(KSubsets(m, p)),
                                                          prime_sij((k1 - s * p,) + l, m, s)))

        return signed_sij(parity_sign(n - 1 - j), fiberwise(_unsign(big.family(jt)), _unsign(G.family(jt)), inner))

    return fiberwise(big, G, outer, "ltr.prime")


@lru_cache(maxsize=None)
def left_to_right(k1: int, l: tuple) -> Sijection:
    """⨆_μ GT(d(k, μT')) => ⨆_μ GT(k_1 + c_n(T'μ), k_2 + c_1(T'μ), ...).

    Only l_i = k_i + c_{i-1}(T') matters, so the sijection is keyed by (k_1, l).
    Built as domain ⇐ F ⇐ E ⇒ codomain where E ⇒ F applies e_prime, swaps
    the two binomial factors and applies f_prime backwards.
    """
    l = tuple(l)
    _, chainE = _to_end(k1, l, 1)
    _, chainF = _to_end(k1, l, -1)
    EG = _prime_stage(k1, l, 1)
    FG = _prime_stage(k1, l, -1)

    def sw(e):
        _, jt, (_, pt, (_, A, (_, it, (_, Bs, g)))) = e
        return ("x", jt, ("x", it, ("p", Bs, ("x", pt, ("p", A, g)))))

    swap = from_bijection(EG.codomain, FG.codomain, sw, sw, "ltr.swap")
    EF = compose_all(EG, swap, invert(FG))
    return compose_all(invert(chainF), invert(EF), chainE, name=f"ltr({k1},{l})")


# ---------------------------------------------------------------- rotate_mt

def mu_T(n: int, Tp, mu) -> tuple:
    """μT': μ reflected as the leftmost ↗-diagonal, μ_1 at the bottom."""
    d = {}
    for (p, q), c in zip(ap_positions(n - 1), Tp):
        d[(p + 1, q + 1)] = c
    for q in range(2, n + 1):
        d[(1, q)] = mu[q - 2]  # ↖ -> ↙, ↗ -> ↘, ↖↗ -> ↙↘ share codes
    return ap_from_dict(n, d)


def T_mu(n: int, Tp, mu) -> tuple:
    """T'μ: μ reflected as the rightmost ↘-diagonal, μ_1 at the top."""
    d = dict(zip(ap_positions(n - 1), Tp))
    for p in range(1, n):
        d[(p, n)] = mu[p - 1]
    return ap_from_dict(n, d)


def split_mu_T(n: int, T) -> tuple:
    d = ap_dict(n, T)
    mu = tuple(d[(1, q)] for q in range(2, n + 1))
    Tp = ap_from_dict(n - 1, {(p - 1, q - 1): d[(p, q)] for p in range(2, n + 1) for q in range(p + 1, n + 1)})
    return Tp, mu


def split_T_mu(n: int, T) -> tuple:
    d = ap_dict(n, T)
    mu = tuple(d[(p, n)] for p in range(1, n))
    Tp = ap_from_dict(n - 1, {pq: d[pq] for pq in ap_positions(n - 1)})
    return Tp, mu


def rot(k) -> tuple:
    k = tuple(k)
    return k[1:] + (k[0] - len(k),)


@lru_cache(maxsize=None)
def rotate_gt(m: tuple, impl: str = "fallback") -> Sijection:
    """GT(m) => (-1)^{n-1} GT(m_2+1, ..., m_n+1, m_1-n+1) by π at i = 1, ..., n-1."""
    m = tuple(m)
    steps = []
    cur = m
    for i in range(1, len(m)):
        steps.append(signed_sij(parity_sign(i - 1), pi_sij(cur, i, impl)))
        cur = pi_target(cur, i)
    if not steps:
        return identity_sij(gt(m))
    return compose_all(*steps, name=f"rotgt({m})")


@lru_cache(maxsize=None)
def rotate_mt(k: tuple, x: int = 0, impl: str = "fallback") -> Sijection:
    """MT(k) => (-1)^{n-1} MT(rot(k)), rot(k) = (k_2, ..., k_n, k_1 - n)."""
    k = tuple(k)
    n = len(k)
    sgn = parity_sign(n - 1)
    name = f"rotate_mt({k})"
    if n == 1:
        return from_bijection(mt(k), mt(rot(k)), lambda e: ("i", (e[1][0] - 1,)),
                              lambda e: ("i", (e[1][0] + 1,)), name)
    g1 = gamma(k, x, impl)
    APm = arrow_patterns(n - 1)

    def l_of(Tp):
        # l_i = k_i + c_{i-1}(T'), i = 2..n
        return deform(k[1:], Tp)

    D = IndexedUnion(APm, lambda t: ltr_end(k[0], l_of(t[1]), -1), label=("rotD", k))

    def f2(e):
        _, T, g = e
        Tp, mu = split_mu_T(n, T[1])
        return ("x", ("i", Tp), ("x", ("i", mu), g))

    def b2(e):
        _, Tp, (_, mu, g) = e
        return ("x", ("i", mu_T(n, Tp[1], mu[1])), g)

    s2 = from_bijection(sgt(k), D, f2, b2, "rot.split")
    C = IndexedUnion(APm, lambda t: ltr_end(k[0], l_of(t[1]), 1), label=("rotC", k))
    s3 = fiberwise(D, C, lambda t: left_to_right(k[0], l_of(t[1])), "rot.ltr")

    def rot_target(m):
        return tuple(v + 1 for v in m[1:]) + (m[0] - n + 1,)

    def inner_cod(Tp):
        return IndexedUnion(arrow_rows(n - 1),
                            lambda mu: signed(sgn, gt(rot_target(ltr_gt_row(k[0], l_of(Tp), mu[1], 1)))),
                            label=("rotR", k, Tp))

    R = IndexedUnion(APm, lambda t: inner_cod(t[1]), label=("rotRo", k))

    def s4_fiber(t):
        Tp = t[1]
        return fiberwise(C.family(t), R.family(t),
                         lambda mu: rotate_gt(ltr_gt_row(k[0], l_of(Tp), mu[1], 1), impl), "rot.pi")

    s4 = fiberwise(C, R, s4_fiber, "rot.pi")
    shifted = IndexedUnion(arrow_patterns(n), lambda T: gt(tuple(v + 1 for v in deform(rot(k), T[1]))),
                           label=("rotS", k))
    S5 = signed(sgn, shifted)

    def f5(e):
        _, Tp, (_, mu, g) = e
        return ("x", ("i", T_mu(n, Tp[1], mu[1])), g)

    def b5(e):
        _, T, g = e
        Tp, mu = split_T_mu(n, T[1])
        return ("x", ("i", Tp), ("x", ("i", mu), g))

    s5 = from_bijection(R, S5, f5, b5, "rot.join")
    target = signed(sgn, sgt(rot(k)))

    def f6(e):
        _, T, g = e
        return ("x", T, gt_shift(tuple(v + 1 for v in deform(rot(k), T[1])), g, -1))

    def b6(e):
        _, T, g = e
        return ("x", T, gt_shift(deform(rot(k), T[1]), g, 1))

    s6 = from_bijection(S5, target, f6, b6, "rot.shift")
    s7 = signed_sij(sgn, invert(gamma(rot(k), x, impl)))
    return compose_all(g1, s2, s3, s4, s5, s6, s7, name=name)
