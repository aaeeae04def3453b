"""Structural signed sets and their elements.

A signed set is a finite set whose members carry a sign.  Sets are built
from a handful of leaf shapes (intervals, singletons, boxes of intervals,
subset families, explicit finite lists) with opposite, product, disjoint
union and indexed disjoint union on top.

Elements are plain nested tuples so they hash and compare cheaply:

    ('i', (ints...))          leaf member (an integer tuple)
    ('L', e) / ('R', e)       left / right summand of a binary union
    ('p', e1, ..., em)        member of an m-fold product
    ('x', t, e)               member e of the fibre over index t

The sign of an element is not stored in it; it is determined by the set.
Opposite does not re-tag elements, it only flips signs.

Enumeration order (part of the table/golden-file contract): intervals
ascending, unions left then right, products lexicographic with the
leftmost factor outermost, indexed unions in index enumeration order.
"""

from __future__ import annotations

import itertools
import json
import struct
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator

Element = tuple


class SignedSet:
    """Base class; subclasses implement `_items`, `sign`, `contains`, `_size`."""

    def items(self) -> Iterator[tuple[Element, int]]:
        """Yield ``(element, sign)`` pairs in canonical enumeration order."""
        return self._items()

    def elements(self) -> Iterator[Element]:
        for e, _ in self._items():
            yield e

    def __iter__(self):
        return self.elements()

    @cached_property
    def size(self) -> int:
        return self._size()

    def sign(self, e: Element) -> int:
        raise NotImplementedError

    def contains(self, e: Element) -> bool:
        raise NotImplementedError

    def positives(self) -> list[Element]:
        return [e for e, s in self.items() if s > 0]

    def negatives(self) -> list[Element]:
        return [e for e, s in self.items() if s < 0]

    def count(self) -> int:
        """Number of elements regardless of sign (enumerates)."""
        return sum(1 for _ in self._items())

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        return Product(self, other)

    def __or__(self, other):
        return Union(self, other)

    # dimension of an elementary set, None when unconstrained (empty) or not integer
    @property
    def dimension(self):
        return None


def _is_int_tuple(v) -> bool:
    return isinstance(v, tuple) and all(isinstance(x, int) for x in v)


@dataclass(frozen=True)
class Empty(SignedSet):
    def _items(self):
        return iter(())

    def _size(self):
        return 0

    def sign(self, e):
        raise KeyError(e)

    def contains(self, e):
        return False


EMPTY = Empty()


@dataclass(frozen=True)
class Interval(SignedSet):
    """Signed interval: positive {a..b} if a <= b, else negative {b+1..a-1}."""

    a: int
    b: int

    def _items(self):
        if self.a <= self.b:
            for x in range(self.a, self.b + 1):
                yield ("i", (x,)), 1
        else:
            for x in range(self.b + 1, self.a):
                yield ("i", (x,)), -1

    def _size(self):
        return self.b - self.a + 1

    def _member(self, x):
        if self.a <= self.b:
            return self.a <= x <= self.b
        return self.b + 1 <= x <= self.a - 1

    def contains(self, e):
        return (
            isinstance(e, tuple) and len(e) == 2 and e[0] == "i"
            and _is_int_tuple(e[1]) and len(e[1]) == 1 and self._member(e[1][0])
        )

    def sign(self, e):
        return 1 if self.a <= self.b else -1

    @property
    def dimension(self):
        return 1


def interval(a: int, b: int) -> Interval:
    return Interval(a, b)


def index_range(lo: int, hi: int) -> Interval:
    """Ordinary (all-positive, possibly empty) range {lo..hi} as a signed set."""
    return Interval(lo, max(hi, lo - 1))


@dataclass(frozen=True)
class Singleton(SignedSet):
    v: tuple
    s: int = 1

    def _items(self):
        yield ("i", self.v), self.s

    def _size(self):
        return self.s

    def contains(self, e):
        return e == ("i", self.v)

    def sign(self, e):
        return self.s

    @property
    def dimension(self):
        return len(self.v)


@dataclass(frozen=True)
class Box(SignedSet):
    """Product of signed intervals with flat integer-tuple elements.

    ``Box(((a1, b1), ..., (am, bm)))`` is [a1,b1] x ... x [am,bm], elementary of
    dimension m and depth 0.  ``Box(())`` is the positive one-point set.
    """

    bounds: tuple

    def _items(self):
        ranges = []
        sgn = 1
        for a, b in self.bounds:
            if a <= b:
                ranges.append(range(a, b + 1))
            else:
                ranges.append(range(b + 1, a))
                sgn = -sgn
        for v in itertools.product(*ranges):
            yield ("i", v), sgn

    def _size(self):
        out = 1
        for a, b in self.bounds:
            out *= b - a + 1
        return out

    def contains(self, e):
        if not (isinstance(e, tuple) and len(e) == 2 and e[0] == "i"):
            return False
        v = e[1]
        if not _is_int_tuple(v) or len(v) != len(self.bounds):
            return False
        for x, (a, b) in zip(v, self.bounds):
            if a <= b:
                if not a <= x <= b:
                    return False
            elif not b + 1 <= x <= a - 1:
                return False
        return True

    def sign(self, e):
        sgn = 1
        for a, b in self.bounds:
            if a > b:
                sgn = -sgn
        return sgn

    @property
    def dimension(self):
        return len(self.bounds)


@dataclass(frozen=True)
class KSubsets(SignedSet):
    """All k-element subsets of [m] = {1..m}; ordinary (all positive).

    [m] is empty for m <= 0, so KSubsets(m, 0) is always the one-point set
    holding the empty subset.
    """

    m: int
    k: int

    def _items(self):
        if self.k < 0:
            return
        for c in itertools.combinations(range(1, max(self.m, 0) + 1), self.k):
            yield ("i", c), 1

    def _size(self):
        if self.k < 0 or self.k > max(self.m, 0):
            return 0
        from math import comb

        return comb(max(self.m, 0), self.k)

    def contains(self, e):
        if not (isinstance(e, tuple) and len(e) == 2 and e[0] == "i"):
            return False
        c = e[1]
        return (
            _is_int_tuple(c) and len(c) == self.k
            and all(1 <= x <= self.m for x in c)
            and all(c[i] < c[i + 1] for i in range(len(c) - 1))
        )

    def sign(self, e):
        return 1


def binom_set(m: int, k: int) -> KSubsets:
    return KSubsets(m, k)


class Finite(SignedSet):
    """Explicit finite set of integer tuples, built lazily from a factory.

    `label` identifies the set (equality and hashing go through it), so two
    independently built instances with the same label are the same set.
    """

    def __init__(self, label: Hashable, factory: Callable[[], Iterable], sign: Callable[[tuple], int] | None = None, dimension=None):
        self.label = label
        self._factory = factory
        self._sign_fn = sign
        self._dim = dimension

    def __eq__(self, other):
        return isinstance(other, Finite) and other.label == self.label

    def __hash__(self):
        return hash(("Finite", self.label))

    def __repr__(self):
        return f"Finite({self.label!r})"

    @cached_property
    def _table(self):
        vals = [tuple(v) for v in self._factory()]
        signs = [self._sign_fn(v) if self._sign_fn else 1 for v in vals]
        return vals, dict(zip(vals, signs))

    def _items(self):
        vals, signs = self._table
        for v in vals:
            yield ("i", v), signs[v]

    def _size(self):
        return sum(self._table[1].values())

    def contains(self, e):
        return isinstance(e, tuple) and len(e) == 2 and e[0] == "i" and e[1] in self._table[1]

    def sign(self, e):
        return self._table[1][e[1]]

    @property
    def dimension(self):
        return self._dim


@dataclass(frozen=True)
class Opposite(SignedSet):
    inner: SignedSet

    def _items(self):
        for e, s in self.inner.items():
            yield e, -s

    def _size(self):
        return -self.inner.size

    def contains(self, e):
        return self.inner.contains(e)

    def sign(self, e):
        return -self.inner.sign(e)

    @property
    def dimension(self):
        return self.inner.dimension


def neg(S: SignedSet) -> SignedSet:
    if isinstance(S, Opposite):
        return S.inner
    return Opposite(S)


def signed(sgn: int, S: SignedSet) -> SignedSet:
    """``sgn * S`` for sgn = +-1 (also accepts any int, using its parity sign)."""
    return S if sgn > 0 else neg(S)


def parity_sign(k: int) -> int:
    return -1 if k % 2 else 1


class Product(SignedSet):
    """m-fold Cartesian product; elements ('p', e1, ..., em)."""

    def __init__(self, *factors: SignedSet):
        self.factors = tuple(factors)

    def __eq__(self, other):
        return isinstance(other, Product) and other.factors == self.factors

    def __hash__(self):
        return hash(("Product", self.factors))

    def __repr__(self):
        return "Product(" + ", ".join(map(repr, self.factors)) + ")"

    def _items(self):
        def rec(i):
            if i == len(self.factors):
                yield (), 1
                return
            for e, s in self.factors[i].items():
                for rest, s2 in rec(i + 1):
                    yield (e,) + rest, s * s2

        for es, s in rec(0):
            yield ("p",) + es, s

    def _size(self):
        out = 1
        for f in self.factors:
            out *= f.size
        return out

    def contains(self, e):
        return (
            isinstance(e, tuple) and len(e) == len(self.factors) + 1 and e[0] == "p"
            and all(f.contains(x) for f, x in zip(self.factors, e[1:]))
        )

    def sign(self, e):
        s = 1
        for f, x in zip(self.factors, e[1:]):
            s *= f.sign(x)
        return s

    @property
    def dimension(self):
        dims = [f.dimension for f in self.factors]
        if any(d is None for d in dims):
            return None
        return sum(dims)


@dataclass(frozen=True)
class Union(SignedSet):
    left: SignedSet
    right: SignedSet

    def _items(self):
        for e, s in self.left.items():
            yield ("L", e), s
        for e, s in self.right.items():
            yield ("R", e), s

    def _size(self):
        return self.left.size + self.right.size

    def contains(self, e):
        if not (isinstance(e, tuple) and len(e) == 2):
            return False
        if e[0] == "L":
            return self.left.contains(e[1])
        if e[0] == "R":
            return self.right.contains(e[1])
        return False

    def sign(self, e):
        return self.left.sign(e[1]) if e[0] == "L" else self.right.sign(e[1])

    @property
    def dimension(self):
        a, b = self.left.dimension, self.right.dimension
        if a is not None and b is not None and a != b:
            raise ValueError(f"union of elementary sets of dimensions {a} and {b}")
        return a if a is not None else b


class IndexedUnion(SignedSet):
    """Disjoint union of ``family(t)`` over t in ``index``.

    The element ('x', t, e) has sign sign(t) * sign(e).  Family values are
    memoised per index element.  Equality compares ``(index, label)`` when a
    label is given, otherwise identity.
    """

    def __init__(self, index: SignedSet, family: Callable[[Element], SignedSet], label: Hashable = None):
        self.index = index
        self._family = family
        self.label = label
        self._memo: dict = {}

    def family(self, t: Element) -> SignedSet:
        try:
            return self._memo[t]
        except KeyError:
            S = self._memo[t] = self._family(t)
            return S

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, IndexedUnion) or self.label is None:
            return False
        return other.label == self.label and other.index == self.index

    def __hash__(self):
        if self.label is None:
            return id(self)
        return hash(("IndexedUnion", self.label))

    def __repr__(self):
        return f"IndexedUnion({self.index!r}, label={self.label!r})"

    def _items(self):
        for t, st in self.index.items():
            for e, s in self.family(t).items():
                yield ("x", t, e), st * s

    def _size(self):
        return sum(st * self.family(t).size for t, st in self.index.items())

    def contains(self, e):
        return (
            isinstance(e, tuple) and len(e) == 3 and e[0] == "x"
            and self.index.contains(e[1]) and self.family(e[1]).contains(e[2])
        )

    def sign(self, e):
        return self.index.sign(e[1]) * self.family(e[1]).sign(e[2])


def int_union(lo: int, hi: int, family: Callable[[int], SignedSet], label: Hashable = None) -> IndexedUnion:
    """``⨆_{j=lo}^{hi} family(j)`` with index elements ('i', (j,))."""
    return IndexedUnion(index_range(lo, hi), lambda t: family(t[1][0]), label)


def jidx(j: int) -> Element:
    """Index element for `int_union`."""
    return ("i", (j,))


# ---------------------------------------------------------------- encoding

def canonical_encode(e: Element) -> bytes:
    """Injective, prefix-free byte encoding of an element."""
    out = bytearray()
    _enc(e, out)
    return bytes(out)


def _enc(e, out):
    tag = e[0]
    if tag == "i":
        v = e[1]
        out += b"i" + struct.pack(">H", len(v))
        for x in v:
            out += struct.pack(">Q", x + (1 << 63))
    elif tag in ("L", "R"):
        out += tag.encode()
        _enc(e[1], out)
    elif tag == "p":
        out += b"p" + struct.pack(">H", len(e) - 1)
        for x in e[1:]:
            _enc(x, out)
    elif tag == "x":
        out += b"x"
        _enc(e[1], out)
        _enc(e[2], out)
    else:
        raise ValueError(f"invalid element shape: {e!r}")


def element_to_json(e: Element):
    tag = e[0]
    if tag == "i":
        return {"i": list(e[1])}
    if tag in ("L", "R"):
        return {tag: element_to_json(e[1])}
    if tag == "p":
        return {"p": [element_to_json(x) for x in e[1:]]}
    if tag == "x":
        return {"x": {"t": element_to_json(e[1]), "e": element_to_json(e[2])}}
    raise ValueError(f"invalid element shape: {e!r}")


def element_from_json(d) -> Element:
    ((tag, val),) = [(k, v) for k, v in d.items() if k != "s"]
    if tag == "i":
        return ("i", tuple(val))
    if tag in ("L", "R"):
        return (tag, element_from_json(val))
    if tag == "p":
        return ("p",) + tuple(element_from_json(x) for x in val)
    if tag == "x":
        return ("x", element_from_json(val["t"]), element_from_json(val["e"]))
    raise ValueError(f"unknown tag {tag!r}")


def encode_json(S: SignedSet, e: Element) -> str:
    d = element_to_json(e)
    d["s"] = S.sign(e)
    return json.dumps(d, separators=(",", ":"))


def sorted_elements(S: SignedSet) -> list[Element]:
    return sorted(S.elements(), key=canonical_encode)


# ---------------------------------------------------------------- projection

def projection(S: SignedSet, e: Element) -> tuple:
    """The projection of an element of an elementary set to Z^n."""
    if isinstance(S, (Interval, Box, Singleton, KSubsets, Finite)):
        return e[1]
    if isinstance(S, Opposite):
        return projection(S.inner, e)
    if isinstance(S, Product):
        out = ()
        for f, x in zip(S.factors, e[1:]):
            out += projection(f, x)
        return out
    if isinstance(S, Union):
        S.dimension  # raises on mismatched branches
        return projection(S.left if e[0] == "L" else S.right, e[1])
    if isinstance(S, IndexedUnion):
        return projection(S.family(e[1]), e[2])
    raise ValueError(f"{S!r} is not elementary")
