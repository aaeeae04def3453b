"""Sijections: signed bijections between signed sets.

A sijection S => T is an involution on S ⊔ T (elements tagged ('L', s) for
the domain copy and ('R', t) for the codomain copy) that exchanges
S+ ⊔ T- with S- ⊔ T+.  Equivalently it is a fixed-point-free
sign-reversing involution on S ⊔ (-T); `parity` computes that sign.

Sijections are closures over their construction; nothing is materialised
except the per-instance memo of already evaluated points.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Hashable, Optional

from .signed import (
    EMPTY,
    Element,
    IndexedUnion,
    Product,
    SignedSet,
    Union,
    canonical_encode,
    element_to_json,
    neg,
    projection,
)

log = logging.getLogger(__name__)

Tagged = tuple  # ('L', e) or ('R', e)


class SijectionError(Exception):
    pass


class Sijection:
    def __init__(self, domain: SignedSet, codomain: SignedSet, fn: Callable[[Tagged], Tagged], name: str = "sij"):
        self.domain = domain
        self.codomain = codomain
        self._fn = fn
        self.name = name
        self._memo: dict = {}

    def __call__(self, x: Tagged) -> Tagged:
        try:
            return self._memo[x]
        except KeyError:
            pass
        y = self._fn(x)
        self._memo[x] = y
        self._memo[y] = x
        return y

    def __repr__(self):
        return f"<Sijection {self.name}>"

    def forward(self, e: Element) -> Tagged:
        return self(("L", e))

    def backward(self, e: Element) -> Tagged:
        return self(("R", e))

    def parity(self, x: Tagged) -> int:
        if x[0] == "L":
            return self.domain.sign(x[1])
        return -self.codomain.sign(x[1])

    def contains(self, x: Tagged) -> bool:
        if x[0] == "L":
            return self.domain.contains(x[1])
        if x[0] == "R":
            return self.codomain.contains(x[1])
        return False

    def points(self):
        for e in self.domain.elements():
            yield ("L", e)
        for e in self.codomain.elements():
            yield ("R", e)

    def table(self):
        """The matched pairs (domain element, codomain element), domain order."""
        out = []
        for e in self.domain.elements():
            y = self(("L", e))
            if y[0] == "R":
                out.append((e, y[1]))
        return out


def _flip(x):
    return ("R" if x[0] == "L" else "L", x[1])


# ---------------------------------------------------------------- basics

def identity_sij(S: SignedSet) -> Sijection:
    return Sijection(S, S, _flip, "id")


def from_bijection(S: SignedSet, T: SignedSet, f: Callable, g: Callable, name: str = "bij") -> Sijection:
    """Sijection from a sign-preserving bijection f: S -> T with inverse g."""

    def fn(x):
        if x[0] == "L":
            return ("R", f(x[1]))
        return ("L", g(x[1]))

    return Sijection(S, T, fn, name)


def relabel(S: SignedSet, T: SignedSet, f: Callable, name: str = "relabel") -> Sijection:
    """Sijection from a sign-preserving bijection f: S -> T.

    The inverse is tabulated by enumerating S on first use, so this is
    meant for the small regrouping steps inside longer chains.
    """
    state = {}

    def g(e):
        if "inv" not in state:
            inv = {}
            for x, s in S.items():
                y = f(x)
                if y in inv:
                    raise SijectionError(f"{name}: not injective at {x!r}")
                inv[y] = x
            state["inv"] = inv
        try:
            return state["inv"][e]
        except KeyError:
            raise SijectionError(f"{name}: {e!r} has no preimage") from None

    return from_bijection(S, T, f, g, name)


def invert(phi: Sijection) -> Sijection:
    def fn(x):
        return _flip(phi(_flip(x)))

    return Sijection(phi.codomain, phi.domain, fn, f"inv({phi.name})")


def opposite_sij(phi: Sijection) -> Sijection:
    return Sijection(neg(phi.domain), neg(phi.codomain), phi, f"-({phi.name})")


def empty_sij(S: SignedSet, T: SignedSet, name: str = "empty") -> Sijection:
    """Sijection between two sets that have no elements at all."""

    def fn(x):
        raise SijectionError(f"{name}: {x!r} should not exist")

    return Sijection(S, T, fn, name)


def reshape(phi: Sijection, domain: SignedSet, codomain: SignedSet,
            to_old: Callable[[Tagged], Tagged], to_new: Callable[[Tagged], Tagged], name: str = None) -> Sijection:
    """Reuse the involution of `phi` on a relabelled disjoint union.

    `to_old` maps tagged points of ``domain ⊔ codomain`` bijectively onto
    tagged points of ``phi.domain ⊔ phi.codomain`` preserving parity;
    `to_new` is its inverse.
    """

    def fn(x):
        return to_new(phi(to_old(x)))

    return Sijection(domain, codomain, fn, name or f"reshape({phi.name})")


def move_right(phi: Sijection, left: SignedSet, moved: SignedSet) -> Sijection:
    """From ``phi: left ⊔ moved => C`` build ``left => C ⊔ -moved``."""
    assert phi.domain == Union(left, moved)

    def to_old(x):
        if x[0] == "L":
            return ("L", ("L", x[1]))
        inner = x[1]
        if inner[0] == "L":
            return ("R", inner[1])
        return ("L", ("R", inner[1]))

    def to_new(y):
        if y[0] == "R":
            return ("R", ("L", y[1]))
        inner = y[1]
        if inner[0] == "L":
            return ("L", inner[1])
        return ("R", ("R", inner[1]))

    return reshape(phi, left, Union(phi.codomain, neg(moved)), to_old, to_new, f"move({phi.name})")


def cancel_sij(S: SignedSet) -> Sijection:
    """``S ⊔ -S => ∅`` pairing each element with its copy."""

    def fn(x):
        side, e = x[1]
        return ("L", ("R" if side == "L" else "L", e))

    return Sijection(Union(S, neg(S)), EMPTY, fn, "cancel")


# ---------------------------------------------------------------- combinators

def product_sij(*phis: Sijection) -> Sijection:
    """Componentwise product: prod S_k => prod T_k.

    A tuple is cancelled inside its own side at the first coordinate whose
    component sijection does not cross; if every component crosses, the
    whole tuple crosses.
    """
    dom = Product(*(p.domain for p in phis))
    cod = Product(*(p.codomain for p in phis))

    def fn(x):
        side, e = x
        comps = e[1:]
        images = []
        for k, (p, c) in enumerate(zip(phis, comps)):
            y = p((side, c))
            if y[0] == side:
                return (side, ("p",) + comps[:k] + (y[1],) + comps[k + 1:])
            images.append(y[1])
        return (_flip(x)[0], ("p",) + tuple(images))

    return Sijection(dom, cod, fn, "x".join(p.name for p in phis))


def sum_sij(phi: Sijection, psi: Sijection) -> Sijection:
    """Disjoint union of two sijections: S ⊔ S' => T ⊔ T'."""

    def fn(x):
        side, (branch, e) = x
        y = (phi if branch == "L" else psi)((side, e))
        return (y[0], (branch, y[1]))

    return Sijection(Union(phi.domain, psi.domain), Union(phi.codomain, psi.codomain), fn,
                     f"({phi.name}+{psi.name})")


def union_sij(psi: Sijection, dom: IndexedUnion, cod: IndexedUnion, fiber: Callable[[Tagged], Sijection],
              name: str = "union") -> Sijection:
    """Indexed disjoint union of sijections along ``psi: T => T~``.

    `dom` is indexed by psi.domain and `cod` by psi.codomain.  For a tagged
    index point x, ``fiber(x)`` is a sijection from the fibre over x to the
    fibre over psi(x); the caller guarantees fiber(psi(x)) = fiber(x)^-1.
    """

    def fam(x):
        return dom.family(x[1]) if x[0] == "L" else cod.family(x[1])

    def fn(x):
        side, (_, t, s) = x
        tx = (side, t)
        sij = fiber(tx)
        r = sij(("L", s))
        if r[0] == "L":
            return (side, ("x", t, r[1]))
        ty = psi(tx)
        return (ty[0], ("x", ty[1], r[1]))

    return Sijection(dom, cod, fn, name)


def fiberwise(dom: IndexedUnion, cod: IndexedUnion, fiber: Callable[[Element], Sijection], name: str = "fiberwise") -> Sijection:
    """``⨆_t S_t => ⨆_t S'_t`` over one common index set from ``fiber(t): S_t => S'_t``."""
    assert dom.index == cod.index, (dom.index, cod.index)
    memo = {}

    def get(t):
        try:
            return memo[t]
        except KeyError:
            s = memo[t] = fiber(t)
            return s

    def fn(x):
        side, (_, t, s) = x
        y = get(t)((side, s))
        return (y[0], ("x", t, y[1]))

    return Sijection(dom, cod, fn, name)


def union_to_empty(dom: IndexedUnion, fiber: Callable[[Element], Sijection], name: str = "union_to_empty") -> Sijection:
    """``⨆_t S_t => ∅`` from sijections ``fiber(t): S_t => ∅``."""
    memo = {}

    def fn(x):
        _, (_, t, s) = x
        if t not in memo:
            memo[t] = fiber(t)
        y = memo[t](("L", s))
        return ("L", ("x", t, y[1]))

    return Sijection(dom, EMPTY, fn, name)


def normal_union_sij(psi: Sijection, family: Callable[[tuple], SignedSet], check: bool = False,
                     name: str = "normal_union") -> Sijection:
    """``⨆_{t in T} S_ξ(t) => ⨆_{t in T~} S_ξ(t)`` for a normal sijection psi, identity fibres."""
    T, Tt = psi.domain, psi.codomain
    if check:
        assert_normal(psi)
    dom = IndexedUnion(T, lambda t: family(projection(T, t)))
    cod = IndexedUnion(Tt, lambda t: family(projection(Tt, t)))

    def fn(x):
        side, (_, t, s) = x
        ty = psi((side, t))
        # normality: the fibre over ty is the fibre over t
        return (ty[0], ("x", ty[1], s))

    return Sijection(dom, cod, fn, name)


def assert_normal(psi: Sijection):
    for x in psi.points():
        y = psi(x)
        S0 = psi.domain if x[0] == "L" else psi.codomain
        S1 = psi.domain if y[0] == "L" else psi.codomain
        if projection(S0, x[1]) != projection(S1, y[1]):
            raise SijectionError(f"{psi.name} is not normal at {x!r} -> {y!r}")


def is_normal(psi: Sijection) -> bool:
    try:
        assert_normal(psi)
    except SijectionError:
        return False
    return True


def compose(phi: Sijection, psi: Sijection, name: str = None, check: bool = True) -> Sijection:
    """Garsia–Milne composition of ``phi: S => T`` and ``psi: T => U``."""
    if check and phi.codomain != psi.domain:
        raise SijectionError(f"cannot compose {phi.name} and {psi.name}: middle sets differ")

    def fn(x):
        side, e = x
        first, second = (phi, psi) if side == "L" else (psi, phi)
        # `first` touches the starting side, `second` the far side
        y = first(x)
        seen = set()
        while True:
            if y[0] == side:
                return y
            mid = y[1]
            if mid in seen:
                raise AssertionError(f"cycle in chase of {x!r} through {phi.name}, {psi.name}")
            seen.add(mid)
            z = second(_flip(y))
            if z[0] != side:
                return z
            y = first(_flip(z))

    return Sijection(phi.domain, psi.codomain, fn, name or f"({phi.name};{psi.name})")


def compose_all(*phis: Sijection, name: str = None) -> Sijection:
    out = phis[0]
    for p in phis[1:]:
        out = compose(out, p)
    if name:
        out.name = name
    return out


# ---------------------------------------------------------------- reshapes

def product_comm(S: SignedSet, T: SignedSet) -> Sijection:
    return from_bijection(Product(S, T), Product(T, S), lambda e: ("p", e[2], e[1]),
                          lambda e: ("p", e[2], e[1]), "comm")


def product_assoc(S: SignedSet, T: SignedSet, U: SignedSet) -> Sijection:
    """(S x T) x U => S x (T x U)."""
    return from_bijection(
        Product(Product(S, T), U), Product(S, Product(T, U)),
        lambda e: ("p", e[1][1], ("p", e[1][2], e[2])),
        lambda e: ("p", ("p", e[1], e[2][1]), e[2][2]), "assoc")


def flatten_product(*factors: SignedSet) -> Sijection:
    """((S1 x S2) x ...) nested binary products => flat m-fold product."""
    nested = factors[0]
    for f in factors[1:]:
        nested = Product(nested, f)

    def f(e):
        out = []
        while len(out) < len(factors) - 1:
            out.append(e[2])
            e = e[1]
        out.append(e)
        return ("p",) + tuple(reversed(out))

    def g(e):
        cur = e[1]
        for x in e[2:]:
            cur = ("p", cur, x)
        return cur

    return from_bijection(nested, Product(*factors), f, g, "flatten")


def product_unit(S: SignedSet, unit: SignedSet) -> Sijection:
    """S x {pt} => S for a positive one-point set `unit`."""
    (pt,) = list(unit.elements())
    assert unit.sign(pt) == 1
    return from_bijection(Product(S, unit), S, lambda e: e[1], lambda e: ("p", e, pt), "unit")


def union_comm(S: SignedSet, T: SignedSet) -> Sijection:
    sw = {"L": "R", "R": "L"}
    return from_bijection(Union(S, T), Union(T, S), lambda e: (sw[e[0]], e[1]),
                          lambda e: (sw[e[0]], e[1]), "ucomm")


def union_assoc(S: SignedSet, T: SignedSet, U: SignedSet) -> Sijection:
    """(S ⊔ T) ⊔ U => S ⊔ (T ⊔ U)."""

    def f(e):
        if e[0] == "L":
            inner = e[1]
            return ("L", inner[1]) if inner[0] == "L" else ("R", ("L", inner[1]))
        return ("R", ("R", e[1]))

    def g(e):
        if e[0] == "L":
            return ("L", ("L", e[1]))
        inner = e[1]
        return ("L", ("R", inner[1])) if inner[0] == "L" else ("R", inner[1])

    return from_bijection(Union(Union(S, T), U), Union(S, Union(T, U)), f, g, "uassoc")


def union_unit(S: SignedSet) -> Sijection:
    """S ⊔ ∅ => S."""
    return from_bijection(Union(S, EMPTY), S, lambda e: e[1], lambda e: ("L", e), "uunit")


# ---------------------------------------------------------------- fallback matcher

def matcher(S: SignedSet, T: SignedSet, name: str = "matcher") -> Sijection:
    """Enumerative sijection S => T.

    Within each side, positive and negative elements are paired off in
    canonical-encoding order; the surviving elements (all of one sign) are
    then matched across in canonical order.  Raises if the sizes differ.
    Materialised lazily on first use.
    """
    state = {}

    def build():
        table = {}
        survivors = []
        for side, X in (("L", S), ("R", T)):
            pos = sorted((e for e, s in X.items() if s > 0), key=canonical_encode)
            negs = sorted((e for e, s in X.items() if s < 0), key=canonical_encode)
            k = min(len(pos), len(negs))
            for a, b in zip(pos[:k], negs[:k]):
                table[(side, a)] = (side, b)
                table[(side, b)] = (side, a)
            survivors.append(pos[k:] if len(pos) > k else negs[k:])
        sizes = (S.size, T.size)
        if sizes[0] != sizes[1]:
            raise SijectionError(f"{name}: sizes differ {sizes}")
        for a, b in zip(*survivors):
            table[("L", a)] = ("R", b)
            table[("R", b)] = ("L", a)
        state["t"] = table

    def fn(x):
        if "t" not in state:
            build()
        try:
            return state["t"][x]
        except KeyError:
            raise SijectionError(f"{name}: {x!r} is not an element") from None

    return Sijection(S, T, fn, name)


def fiber_matcher(S: SignedSet, T: SignedSet, key: Callable[[Tagged], Hashable],
                  fiber_points: Callable[[Hashable], list], name: str = "fiber_matcher") -> Sijection:
    """Sijection pairing points inside fibres of a key function.

    ``fiber_points(k)`` lists every tagged point of ``S ⊔ T`` with key k; in
    each fibre, points of parity +1 and -1 are paired in canonical order.
    With the projection as key this yields a normal sijection whenever the
    signed fibre counts vanish.
    """
    memo = {}
    sij = None

    def fn(x):
        k = key(x)
        table = memo.get(k)
        if table is None:
            pts = fiber_points(k)
            plus = sorted((p for p in pts if sij.parity(p) > 0), key=_tagged_key)
            minus = sorted((p for p in pts if sij.parity(p) < 0), key=_tagged_key)
            if len(plus) != len(minus):
                raise SijectionError(f"{name}: unbalanced fibre {k!r} ({len(plus)} vs {len(minus)})")
            table = memo[k] = {}
            for a, b in zip(plus, minus):
                table[a] = b
                table[b] = a
        return table[x]

    sij = Sijection(S, T, fn, name)
    return sij


def _tagged_key(x):
    return x[0].encode() + canonical_encode(x[1])


def signed_sij(sgn: int, phi: Sijection) -> Sijection:
    return phi if sgn > 0 else opposite_sij(phi)


# ---------------------------------------------------------------- verification

@dataclass
class Report:
    ok: bool
    name: str
    checked: int = 0
    counterexample: Optional[dict] = None

    def to_json(self):
        return {"ok": self.ok, "name": self.name, "checked": self.checked,
                "counterexample": self.counterexample}

    def __bool__(self):
        return self.ok


def verify(phi: Sijection, check_sizes: bool = True) -> Report:
    """Check totality, involution and sign crossing on every point.

    Points are evaluated through the raw closure, bypassing the memo (which
    stores both directions of every pair and would hide a non-involution).
    """
    n = 0
    f = phi._fn

    def fail(kind, x, y=None):
        ce = {"kind": kind, "point": [x[0], element_to_json(x[1])]}
        if y is not None:
            ce["image"] = [y[0], element_to_json(y[1])] if isinstance(y, tuple) and len(y) == 2 else repr(y)
        return Report(False, phi.name, n, ce)

    for x in phi.points():
        n += 1
        try:
            y = f(x)
        except Exception as exc:  # totality failure
            log.debug("verify %s: exception at %r: %s", phi.name, x, exc)
            return fail(f"exception: {exc}", x)
        if not (isinstance(y, tuple) and len(y) == 2 and phi.contains(y)):
            return fail("image not an element", x, y)
        if y == x:
            return fail("fixed point", x, y)
        try:
            back = f(y)
        except Exception as exc:
            return fail(f"exception on image: {exc}", x, y)
        if back != x:
            return fail("not an involution", x, y)
        if phi.parity(y) != -phi.parity(x):
            return fail("sign crossing violated", x, y)
    if check_sizes and phi.domain.size != phi.codomain.size:
        return Report(False, phi.name, n, {"kind": "sizes differ",
                                            "sizes": [phi.domain.size, phi.codomain.size]})
    return Report(True, phi.name, n)
