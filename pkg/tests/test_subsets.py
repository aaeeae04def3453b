import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asmdpp.signed import Interval, KSubsets, Union, projection
from asmdpp.sijection import is_normal, verify
from asmdpp.subsets import (
    alpha,
    b_recurrence,
    b_recurrence_domain,
    b_set,
    b_split,
    bars_from_composition,
    binom_complement,
    chu_vandermonde,
    compositions_from_bars,
    cv_left,
    cv_right,
    subset_string,
    trinomial,
)


def binom(m, k):
    """Number of k-subsets of [m], with [m] empty for m <= 0."""
    m = max(m, 0)
    return math.comb(m, k) if 0 <= k <= m else 0


# ---------------------------------------------------------------- alpha

def test_alpha_trivial_split():
    phi = alpha(1, 2, 5)
    for v in range(1, 6):
        side = "L" if v <= 2 else "R"
        assert phi(("L", ("i", (v,)))) == ("R", (side, ("i", (v,))))


def test_alpha_cancelling_case():
    phi = alpha(1, 4, 2)
    # [1,2] => [1,4] ⊔ -{3,4}
    assert phi.codomain == Union(Interval(1, 4), Interval(5, 2))
    assert phi.domain.count() + phi.codomain.count() == 2 + 4 + 2
    for v in (3, 4):
        assert phi(("R", ("L", ("i", (v,))))) == ("R", ("R", ("i", (v,))))
    for v in (1, 2):
        assert phi(("L", ("i", (v,)))) == ("R", ("L", ("i", (v,))))


@pytest.mark.parametrize("a,b,c", list(itertools.product(range(-3, 4), repeat=3)))
def test_alpha_is_normal_and_valid(a, b, c):
    phi = alpha(a, b, c)
    assert verify(phi).ok
    assert is_normal(phi)


# ---------------------------------------------------------------- trinomial

def test_trinomial_trivial():
    phi = trinomial(0, 0, 0)
    assert phi(("L", ("p", ("i", ()), ("i", ())))) == ("R", ("p", ("i", ()), ("i", ())))


def test_trinomial_small_images():
    phi = trinomial(1, 1, 0)
    # (A, B') = ({1}, {1}) -> B = {2}, C' = ∅ ; ({2}, {1}) -> B = {1}
    assert phi(("L", ("p", ("i", (1,)), ("i", (1,))))) == ("R", ("p", ("i", (2,)), ("i", ())))
    assert phi(("L", ("p", ("i", (2,)), ("i", (1,))))) == ("R", ("p", ("i", (1,)), ("i", ())))


@pytest.mark.parametrize("a,b,c", list(itertools.product(range(0, 5), repeat=3)))
def test_trinomial_cardinalities(a, b, c):
    lhs = math.comb(a + b + c, a) * math.comb(b + c, b)
    rhs = math.comb(a + b + c, b) * math.comb(a + c, c)
    assert lhs == rhs
    phi = trinomial(a, b, c)
    assert phi.domain.size == lhs == phi.codomain.size


@pytest.mark.parametrize("a,b,c", list(itertools.product(range(0, 3), repeat=3)))
def test_trinomial_is_bijection(a, b, c):
    phi = trinomial(a, b, c)
    assert verify(phi).ok
    images = {phi(("L", e)) for e in phi.domain.elements()}
    assert len(images) == phi.domain.size


# ---------------------------------------------------------------- Chu–Vandermonde

def test_stars_and_bars_round_trip():
    for total in range(5):
        for parts in range(1, 4):
            for bars in itertools.combinations(range(1, total + parts), parts - 1):
                pi = compositions_from_bars(bars, total, parts)
                assert sum(pi) == total and min(pi) >= 0
                assert bars_from_composition(pi) == bars


def test_cv_small_example():
    assert cv_left(2, 1, 1).size == 1
    assert cv_right(2, 1, 1) == KSubsets(1, 1)
    assert verify(chu_vandermonde(2, 1, 1)).ok


@pytest.mark.parametrize("a,b,c", [(1, 2, 2), (1, 3, 3), (2, 3, 2), (2, 4, 3)])
def test_cv_right_side_empty_when_a_lt_b_lt_a_plus_c(a, b, c):
    assert cv_right(a, b, c).count() == 0
    assert KSubsets(a + c - b - 1, c).count() == 0
    assert cv_left(a, b, c).size == 0
    assert verify(chu_vandermonde(a, b, c)).ok


def test_cv_boundary_b_equals_a_plus_c_is_not_empty():
    # at b = a + c the set C([b-a], c) = C([c], c) still has one element
    assert cv_right(1, 2, 1).count() == 1
    assert cv_right(1, 2, 1).size == -1 == cv_left(1, 2, 1).size


@pytest.mark.parametrize("a,b,c", [(a, b, c) for a in range(1, 5) for b in range(5) for c in range(5)])
def test_cv_grid(a, b, c):
    phi = chu_vandermonde(a, b, c)
    assert verify(phi).ok
    expected = binom(a + c - b - 1, c) if a >= b else (-1) ** c * binom(b - a, c)
    assert phi.codomain.size == expected


def test_cv_rejects_a_zero():
    with pytest.raises((ValueError, AssertionError)):
        chu_vandermonde(0, 1, 1)


# ---------------------------------------------------------------- B sets

def test_b_set_counts():
    for n in range(1, 5):
        sizes = [b_set(n, i).size for i in range(1, n + 1)]
        assert sum(sizes) == math.comb(3 * n - 2, 2 * n - 1)
        for i in range(1, n + 1):
            assert sizes[i - 1] == math.comb(n + i - 2, n - 1) * math.comb(2 * n - i - 1, n - 1)
    assert [b_set(3, i).size for i in (1, 2, 3)] == [6, 9, 6]


def test_b_split_example():
    phi = b_split(3, 2)
    assert phi(("L", ("i", (2, 3, 4, 5, 7)))) == ("R", ("p", ("i", (2, 3)), ("i", (1, 3))))
    assert b_split(3, 1).domain.size == 6
    assert b_split(1, 1)(("L", ("i", (1,)))) == ("R", ("p", ("i", ()), ("i", ())))


@pytest.mark.parametrize("n,i", [(n, i) for n in range(1, 4) for i in range(1, n + 1)])
def test_b_recurrence(n, i):
    phi = b_recurrence(n, i)
    assert verify(phi).ok
    assert phi.domain == b_recurrence_domain(n, i)
    assert phi.codomain.size == b_set(n, i).size


def test_b_recurrence_size_identity():
    total = sum((-1) ** (j + 1) * binom(3, 2 - j) * b_set(3, j).size for j in (1, 2, 3))
    assert total == 9 == b_set(3, 2).size


def test_subset_string():
    assert subset_string((2, 3, 4, 5, 7)) == "23457"
    assert subset_string(()) == "∅"
    assert subset_string((1, 12)) == "{1,12}"


# ---------------------------------------------------------------- complement

@settings(max_examples=50, deadline=None)
@given(st.integers(0, 7), st.integers(0, 7))
def test_binom_complement(m, k):
    phi = binom_complement(m, k)
    assert verify(phi).ok
    for e in phi.domain.elements():
        y = phi(("L", e))[1]
        assert phi(("R", y)) == ("L", e)
        assert projection(phi.codomain, y) == tuple(x for x in range(1, m + 1) if x not in e[1])
    if k == 0:
        assert phi(("L", ("i", ()))) == ("R", ("i", tuple(range(1, m + 1))))
