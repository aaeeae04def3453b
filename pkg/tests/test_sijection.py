"""Sijection combinators, Garsia–Milne composition and the verifier."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asmdpp.cli import corrupted_sijection
from asmdpp.signed import EMPTY, KSubsets, Product, Union, int_union, interval, neg
from asmdpp.sijection import (
    Sijection,
    SijectionError,
    cancel_sij,
    compose,
    compose_all,
    fiberwise,
    flatten_product,
    identity_sij,
    invert,
    is_normal,
    matcher,
    move_right,
    normal_union_sij,
    opposite_sij,
    product_assoc,
    product_comm,
    product_sij,
    product_unit,
    relabel,
    sum_sij,
    union_assoc,
    union_comm,
    union_sij,
    union_unit,
    verify,
)
from asmdpp.subsets import alpha


def pointwise_equal(phi, psi):
    return all(phi(x) == psi(x) for x in phi.points())


# ---------------------------------------------------------------- basics

def test_identity_maps_each_element_to_its_copy():
    phi = identity_sij(interval(1, 2))
    assert phi(("L", ("i", (1,)))) == ("R", ("i", (1,)))
    assert phi(("L", ("i", (2,)))) == ("R", ("i", (2,)))
    assert verify(phi).ok


@pytest.mark.parametrize("a,b", [(1, 3), (3, 1), (0, 0), (2, 1)])
def test_identity_verifies(a, b):
    assert verify(identity_sij(Product(interval(a, b), interval(b, a)))).ok


def test_opposite():
    phi = alpha(1, 4, 2)
    op = opposite_sij(phi)
    assert op.domain == neg(phi.domain)
    assert verify(op).ok
    assert pointwise_equal(opposite_sij(op), phi)
    S = interval(0, 2)
    assert pointwise_equal(opposite_sij(identity_sij(S)), identity_sij(neg(S)))


def test_product_of_alphas_verifies():
    phi = product_sij(alpha(1, 4, 2), alpha(0, 2, 1))
    assert verify(phi).ok
    assert phi.domain.size == phi.codomain.size


def test_product_of_identities_is_identity():
    S, T = interval(0, 2), interval(3, 1)
    assert pointwise_equal(product_sij(identity_sij(S), identity_sij(T)), identity_sij(Product(S, T)))


def test_sum_and_cancel():
    S = Union(interval(0, 3), interval(5, 2))
    assert verify(sum_sij(alpha(1, 4, 2), identity_sij(S))).ok
    assert verify(cancel_sij(S)).ok


def test_union_sij_identity_index():
    T = interval(0, 1)
    dom = int_union(0, 1, lambda j: interval(1, 2 + j))
    cod = int_union(0, 1, lambda j: Union(interval(1, 1), interval(2, 2 + j)))
    phi = union_sij(identity_sij(T), dom, cod,
                    lambda x: alpha(1, 1, 2 + x[1][1][0]) if x[0] == "L" else invert(alpha(1, 1, 2 + x[1][1][0])))
    assert verify(phi).ok


def test_fiberwise_two_index_toy():
    dom = int_union(0, 1, lambda j: interval(1, 3 - 4 * j))
    cod = int_union(0, 1, lambda j: Union(interval(1, 2), interval(3, 3 - 4 * j)))
    assert verify(fiberwise(dom, cod, lambda t: alpha(1, 2, 3 - 4 * t[1][0]))).ok


def test_normal_union_with_alpha():
    psi = alpha(1, 4, 2)
    assert is_normal(psi)
    fam = lambda v: interval(0, v[0])  # noqa: E731
    phi = normal_union_sij(psi, fam, check=True)
    assert verify(phi).ok
    assert phi.domain.size == phi.codomain.size


def test_normal_union_rejects_non_normal():
    psi = matcher(interval(1, 2), interval(5, 6))
    with pytest.raises(SijectionError):
        normal_union_sij(psi, lambda v: interval(0, v[0]), check=True)


# ---------------------------------------------------------------- composition

@pytest.mark.parametrize("a,b,c", list(itertools.product(range(-2, 3), repeat=3)))
def test_compose_with_inverse_is_identity(a, b, c):
    phi = alpha(a, b, c)
    assert pointwise_equal(compose(phi, invert(phi)), identity_sij(phi.domain))


def test_compose_with_identity():
    psi = alpha(1, 4, 2)
    assert pointwise_equal(compose(identity_sij(psi.domain), psi), psi)


def test_compose_rejects_mismatched_middle():
    with pytest.raises(SijectionError):
        compose(alpha(1, 2, 3), alpha(1, 2, 3))


def test_invert_of_compose():
    phi = alpha(1, 4, 2)
    psi = sum_sij(alpha(1, 0, 4), identity_sij(interval(5, 2)))
    left = invert(compose(phi, psi))
    right = compose(invert(psi), invert(phi))
    assert pointwise_equal(left, right)
    assert pointwise_equal(invert(invert(phi)), phi)
    assert verify(invert(phi)).ok


def test_compose_is_associative_pointwise():
    a = alpha(0, 3, 1)
    b = sum_sij(alpha(0, -1, 3), identity_sij(interval(4, 1)))
    c = sum_sij(sum_sij(identity_sij(interval(0, -1)), alpha(0, 3, 3)), identity_sij(interval(4, 1)))
    assert pointwise_equal(compose(compose(a, b), c), compose(a, compose(b, c)))
    assert verify(compose_all(a, b, c)).ok


@settings(max_examples=60, deadline=None)
@given(st.tuples(*[st.integers(-3, 3)] * 3), st.integers(-3, 3))
def test_garsia_milne_chases_terminate(abc, d):
    a, b, c = abc
    phi = alpha(a, b, c)
    psi = sum_sij(alpha(a, d, b), identity_sij(interval(b + 1, c)))
    chi = compose(phi, psi)
    assert verify(chi).ok


# ---------------------------------------------------------------- reshapes

def test_reshape_sijections_verify():
    S, T, U = interval(0, 1), interval(4, 2), KSubsets(3, 1)
    for phi in (product_comm(S, T), product_assoc(S, T, U), flatten_product(S, T, U),
                product_unit(S, KSubsets(0, 0)), union_comm(S, T), union_assoc(S, T, U), union_unit(S)):
        assert verify(phi).ok, phi.name


def test_relabel_and_move_right():
    S = interval(0, 2)
    T = interval(10, 12)
    r = relabel(S, T, lambda e: ("i", (e[1][0] + 10,)))
    assert verify(r).ok
    phi = alpha(0, 1, 2)  # [0,2] => [0,1] ⊔ [2,2]
    m = move_right(invert(phi), interval(0, 1), interval(2, 2))
    assert m.codomain == Union(interval(0, 2), neg(interval(2, 2)))
    assert verify(m).ok


def test_relabel_detects_non_injective_map():
    r = relabel(interval(0, 2), interval(0, 2), lambda e: ("i", (0,)))
    assert not verify(r).ok


# ---------------------------------------------------------------- verifier

def test_verify_reports_corrupted_map():
    rep = verify(corrupted_sijection())
    assert not rep.ok
    assert rep.counterexample["kind"] == "not an involution"


def test_verify_reports_sign_violation():
    S = interval(1, 1)
    bad = Sijection(S, neg(S), lambda x: ("R" if x[0] == "L" else "L", x[1]), "bad")
    rep = verify(bad)
    assert not rep.ok and rep.counterexample["kind"] == "sign crossing violated"


def test_verify_reports_exceptions_as_totality_failures():
    S = interval(1, 2)

    def fn(x):
        raise KeyError(x)

    rep = verify(Sijection(S, S, fn, "partial"))
    assert not rep.ok and rep.counterexample["kind"].startswith("exception")
    assert rep.to_json()["ok"] is False


def test_matcher_fails_loudly_on_size_mismatch():
    m = matcher(interval(0, 1), interval(0, 2))
    with pytest.raises(SijectionError):
        m(("L", ("i", (0,))))


@pytest.mark.parametrize("a,b,c", list(itertools.product(range(-3, 4), repeat=3)))
def test_alpha_grid_verifies(a, b, c):
    assert verify(alpha(a, b, c)).ok


def test_empty_sets():
    assert verify(identity_sij(EMPTY)).ok
    assert verify(cancel_sij(EMPTY)).ok
