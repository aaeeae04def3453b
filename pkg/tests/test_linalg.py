import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asmdpp.linalg import (
    SignedMatrix,
    cramer,
    det_entrywise,
    det_product,
    determinant,
    int_det,
    perm_sign,
    permutations_set,
    product_matrix,
    row_domain,
    solve_zero,
)
from asmdpp.signed import EMPTY, Singleton, interval, neg, signed
from asmdpp.sijection import SijectionError, identity_sij, matcher, verify
from asmdpp.subsets import alpha
from asmdpp.suite import cramer_toy, toy_matrix


def sizes(P):
    return [[e.size for e in row] for row in P.rows]


def leibniz(M):
    """Integer determinant straight from the permutation expansion."""
    m = len(M)
    total = 0
    for p in itertools.permutations(range(m)):
        term = perm_sign(p)
        for i in range(m):
            term *= M[i][p[i]]
        total += term
    return total


entry = st.builds(lambda a, d: interval(a, a + d), st.integers(-1, 1), st.integers(-3, 1))


@st.composite
def matrices(draw, max_m=3):
    m = draw(st.integers(1, max_m))
    return SignedMatrix(tuple(tuple(draw(entry) for _ in range(m)) for _ in range(m)))


# ---------------------------------------------------------------- determinant

def test_permutations_set_signs():
    S = permutations_set(3)
    assert S.size == 0
    assert S.sign(("i", (1, 0, 2))) == -1


def test_diagonal_of_singletons():
    P = SignedMatrix(((Singleton((1,)), EMPTY), (EMPTY, Singleton((2,)))))
    els = list(determinant(P).items())
    assert len(els) == 1 and els[0][1] == 1


def test_two_by_two_example():
    P = SignedMatrix(((interval(1, 2), interval(1, 1)), (interval(1, 1), interval(1, 3))))
    assert determinant(P).size == 5


def test_int_det_oracle():
    M = [[2, -1, 0], [1, 3, 2], [0, 1, 1]]
    assert int_det(M) == leibniz(M) == 3


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_det_size_is_numeric_determinant(P):
    assert determinant(P).size == leibniz(sizes(P)) == int_det(sizes(P))


def test_square_check():
    with pytest.raises(ValueError):
        SignedMatrix(((EMPTY, EMPTY),))


# ---------------------------------------------------------------- det_product

def test_det_product_one_by_one():
    P = SignedMatrix(((interval(0, 1),),))
    Q = SignedMatrix(((interval(3, 1),),))
    phi = det_product(P, Q)
    assert verify(phi).ok
    assert phi.domain.size == -2


@pytest.mark.parametrize("seed", range(6))
def test_det_product_two_by_two(seed):
    rng = random.Random(seed)
    P, Q = toy_matrix(rng, 2), toy_matrix(rng, 2)
    assert verify(det_product(P, Q)).ok


@pytest.mark.parametrize("seed", range(3))
def test_det_product_size_identity_three(seed):
    rng = random.Random(100 + seed)
    P, Q = toy_matrix(rng, 3), toy_matrix(rng, 3)
    R = product_matrix(P, Q)
    assert determinant(R).size == determinant(P).size * determinant(Q).size
    assert leibniz(sizes(R)) == leibniz(sizes(P)) * leibniz(sizes(Q))


def test_det_product_dimension_mismatch():
    with pytest.raises(ValueError):
        det_product(toy_matrix(random.Random(0), 1), toy_matrix(random.Random(0), 2))


# ---------------------------------------------------------------- entrywise

def test_det_entrywise_with_alpha():
    a = [[(0, 1, 2), (1, 0, 1)], [(0, 2, 1), (2, 3, 0)]]
    P = SignedMatrix(tuple(tuple(interval(x, z) for x, y, z in row) for row in a))
    phis = [[alpha(*t) for t in row] for row in a]
    Q = SignedMatrix(tuple(tuple(phis[i][j].codomain for j in range(2)) for i in range(2)))
    phi = det_entrywise(P, Q, lambda i, j: phis[i][j])
    assert verify(phi).ok


# ---------------------------------------------------------------- Cramer

def test_cramer_one_by_one_reduces_to_row():
    P = SignedMatrix(((interval(0, 1),),))
    X = (interval(0, 2),)
    D = row_domain(P, X, 0)
    Y = (interval(1, 6),)
    phi = cramer(P, X, Y, [matcher(D, Y[0])], 0)
    assert verify(phi).ok
    assert phi.codomain.size == 6


@pytest.mark.parametrize("m,seed", [(2, s) for s in range(4)] + [(3, 0), (3, 1)])
def test_cramer_toys(m, seed):
    for j in range(m):
        phi = cramer_toy(m, seed, j)
        assert verify(phi).ok
        assert phi.domain.size == phi.codomain.size


def test_cramer_requires_rows():
    P = SignedMatrix(((interval(0, 1),),))
    with pytest.raises(SijectionError):
        cramer(P, (interval(0, 0),), (EMPTY,), [None], 0)
    with pytest.raises(SijectionError):
        cramer(P, (interval(0, 0),), (EMPTY,), [identity_sij(EMPTY)], 0)


def test_solve_zero_on_cancelling_rows():
    # each row is (S, -S) against X = (T, T): row domain S x T ⊔ -S x T => ∅
    S, T = interval(0, 1), interval(5, 6)
    P = SignedMatrix(((S, neg(S)), (signed(-1, S), S)))
    X = (T, T)
    rows = [matcher(row_domain(P, X, i), EMPTY) for i in range(2)]
    for j in range(2):
        phi = solve_zero(P, X, rows, j)
        assert verify(phi).ok
        assert determinant(P).size * X[j].size == 0


def test_solve_zero_trivial_when_x_empty():
    P = toy_matrix(random.Random(3), 2)
    X = (EMPTY, EMPTY)
    rows = [matcher(row_domain(P, X, i), EMPTY) for i in range(2)]
    assert verify(solve_zero(P, X, rows, 1)).ok
