import itertools
import json

import pytest

from asmdpp.asm_dpp import (
    asm_formula,
    asm_rec_domain,
    asm_recurrence,
    asm_reflect,
    asm_refined_formula,
    asm_rotate90,
    asm_set,
    asm_text,
    asm_to_dpp,
    asm_to_mt_lower,
    asm_to_mt_upper,
    check_bijection,
    dpp_flat,
    dpp_rows,
    dpp_set,
    dpp_text,
    enumerate_asm,
    enumerate_asm_i,
    enumerate_dpp,
    enumerate_dpp_i,
    from_det,
    is_asm,
    is_dpp,
    lgv_dpp_sij,
    main_bijection,
    mt_lower_to_asm,
    mt_upper_to_asm,
    mti_sij,
    mti_target,
    mti_upper_sij,
    mti_upper_target,
    p_matrix,
    table_lines,
    w_matrix,
)
from asmdpp.linalg import determinant
from asmdpp.patterns import mt, mt_i, mt_upper_i
from asmdpp.sijection import verify
from asmdpp.subsets import b_set


def brute_asms(n):
    """Every matrix over {-1,0,1} whose rows and columns have partial sums in {0,1} and total 1."""
    def good(line):
        s = 0
        for v in line:
            s += v
            if s not in (0, 1):
                return False
        return s == 1

    out = []
    for flat in itertools.product((-1, 0, 1), repeat=n * n):
        A = tuple(tuple(flat[r * n:(r + 1) * n]) for r in range(n))
        if all(good(r) for r in A) and all(good(tuple(A[r][c] for r in range(n))) for c in range(n)):
            out.append(A)
    return out


# ---------------------------------------------------------------- ASMs

@pytest.mark.parametrize("n", [1, 2, 3])
def test_asm_enumeration_matches_brute_force(n):
    assert sorted(enumerate_asm(n)) == sorted(brute_asms(n))


def test_asm_counts_and_formula():
    assert [len(enumerate_asm(n)) for n in range(1, 5)] == [1, 2, 7, 42]
    assert [asm_formula(n) for n in range(1, 6)] == [1, 2, 7, 42, 429]
    assert asm_formula(0) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_refined_counts(n):
    got = [len(enumerate_asm_i(n, i)) for i in range(1, n + 1)]
    assert got == [asm_refined_formula(n, i) for i in range(1, n + 1)]
    assert sum(got) == asm_formula(n)


def test_refined_examples():
    assert [asm_refined_formula(3, i) for i in (1, 2, 3)] == [2, 3, 2]
    assert [asm_refined_formula(4, i) for i in (1, 2, 3, 4)] == [7, 14, 14, 7]
    assert asm_refined_formula(3, 0) == 0


def test_is_asm():
    assert is_asm(((0, 1, 0), (1, -1, 1), (0, 1, 0)))
    assert not is_asm(((1, 1), (0, 0)))
    assert not is_asm(((-1, 1, 1), (1, 0, 0), (1, 0, 0)))


def test_asm_set_out_of_range_is_empty():
    assert asm_set(3, 4).count() == 0
    assert asm_set(3, 0).count() == 0
    assert asm_set(3).size == 7


def test_reflection_and_rotation():
    A3 = {A for A in enumerate_asm_i(3, 1)}
    assert {asm_reflect(A) for A in A3} == set(enumerate_asm_i(3, 3))
    for A in enumerate_asm(4):
        B = A
        for _ in range(4):
            B = asm_rotate90(B)
        assert B == A
        assert asm_rotate90(asm_rotate90(A, "ccw"), "cw") == A
    with pytest.raises(ValueError):
        asm_rotate90(((1,),), "up")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_asm_to_refined_triangles(n):
    ID = tuple(range(1, n + 1))
    for i in range(1, n + 1):
        lower = {("i", asm_to_mt_lower(A)) for A in enumerate_asm_i(n, i)}
        upper = {("i", asm_to_mt_upper(A)) for A in enumerate_asm_i(n, i)}
        assert lower == set(mt_i(ID, i).elements())
        assert upper == set(mt_upper_i(ID, i).elements())
        for A in enumerate_asm_i(n, i):
            assert mt_lower_to_asm(asm_to_mt_lower(A), n) == A
            assert mt_upper_to_asm(asm_to_mt_upper(A), n) == A


# ---------------------------------------------------------------- DPPs

def test_dpp_small():
    assert enumerate_dpp(1) == [()]
    assert enumerate_dpp(2) == [(), ((2,),)]
    assert sorted(enumerate_dpp(3)) == sorted([(), ((2,),), ((3,),), ((3, 1),), ((3, 2),), ((3, 3),), ((3, 3), (2,))])


def test_dpp_counts_match_asms():
    assert [len(enumerate_dpp(n)) for n in range(0, 5)] == [1, 1, 2, 7, 42]
    for n in range(1, 5):
        assert [len(enumerate_dpp_i(n, i)) for i in range(1, n + 1)] == [len(enumerate_asm_i(n, i)) for i in range(1, n + 1)]


def test_is_dpp():
    assert is_dpp(((3, 3), (2,)))
    assert not is_dpp(((1,),))  # first part must exceed the row length
    assert not is_dpp(((3, 3), (3,)))  # must decrease strictly down columns
    assert not is_dpp(((2,),), 1)
    assert all(is_dpp(D, 4) for D in enumerate_dpp(4))


def test_dpp_flat_round_trip():
    for D in enumerate_dpp(4):
        assert dpp_rows(dpp_flat(D)) == D
    assert dpp_flat(((3, 3), (2,))) == (3, 3, 0, 2)
    assert dpp_set(3, 2).size == 3


def test_text_rendering():
    assert dpp_text(()) == "∅"
    assert dpp_text(((3, 3), (2,))) == "3 3 / 2"
    assert asm_text(((1, 0), (0, 1))) == "[[1,0],[0,1]]"


# ---------------------------------------------------------------- MT_i sijections

def test_mti_example():
    phi = mti_sij((1, 2, 3), 2)
    assert verify(phi).ok
    assert phi.domain.size == 3


def test_mti_size_identity():
    k = (1, 2, 3)
    assert mt_i(k, 3).size == mti_target(k, 3).size
    assert mt_i(k, 3).size == mt((2, 2, 3)).size - 2 * mt((3, 2, 3)).size + mt((4, 2, 3)).size


@pytest.mark.parametrize("k,i", [((1, 2, 3), 1), ((1, 2, 3), 3), ((1, 2), 2), ((0, 1, 3), 2), ((1, 2, 3, 4), 2)])
def test_mti_and_upper_verify(k, i):
    assert verify(mti_sij(k, i)).ok
    assert verify(mti_upper_sij(k, i)).ok
    assert mt_upper_i(k, i).size == mti_upper_target(k, i).size


def test_mti_rejects_non_weak():
    with pytest.raises(ValueError):
        mti_sij((2, 1, 3), 1)


# ---------------------------------------------------------------- ASM recurrence

@pytest.mark.parametrize("n,i", [(n, i) for n in (1, 2, 3) for i in range(1, n + 1)])
def test_asm_recurrence(n, i):
    phi = asm_recurrence(n, i)
    assert verify(phi).ok
    assert phi.domain == asm_rec_domain(n, i)
    assert phi.codomain.size == asm_refined_formula(n, i)


def test_asm_recurrence_size_three_two():
    assert asm_rec_domain(3, 2).size == 3


def test_asm_recurrence_range():
    with pytest.raises(ValueError):
        asm_recurrence(3, 4)


# ---------------------------------------------------------------- determinants and LGV

@pytest.mark.parametrize("n,size", [(2, 1), (3, 2), (4, 7)])
def test_lgv(n, size):
    phi = lgv_dpp_sij(n)
    assert verify(phi).ok
    assert phi.codomain.size == size
    assert determinant(w_matrix(n)).size == size


@pytest.mark.parametrize("n,j", [(2, 2), (3, 2), (3, 3), (4, 3)])
def test_refined_lgv(n, j):
    phi = lgv_dpp_sij(n, refined=j)
    assert verify(phi).ok
    assert phi.codomain.size == len(enumerate_dpp_i(n, j))


def test_lgv_ranges():
    with pytest.raises(ValueError):
        lgv_dpp_sij(1)
    with pytest.raises(ValueError):
        lgv_dpp_sij(3, refined=1)


def test_from_det():
    assert from_det(2).codomain.size == -1
    assert from_det(3).codomain.size == 2
    assert determinant(p_matrix(3)).size == 2
    assert verify(from_det(3)).ok
    assert verify(from_det(2)).ok


# ---------------------------------------------------------------- bijections

@pytest.mark.parametrize("n,i,x", [(n, i, x) for n in (1, 2, 3) for i in range(1, n + 1) for x in (0, 1)])
def test_main_bijection_small(n, i, x):
    bij = main_bijection(n, i, x)
    assert check_bijection(bij)
    for a, b in bij.pairs():
        assert bij.inverse(b) == a


def test_main_bijection_size():
    bij = main_bijection(3, 2)
    assert bij.domain.count() == 2 * b_set(3, 1).size * 3 == 36


@pytest.mark.parametrize("n,i", [(n, i) for n in (1, 2, 3) for i in range(1, n + 1)])
def test_asm_to_dpp_small(n, i):
    bij = asm_to_dpp(n, i)
    assert check_bijection(bij)
    for a, b in bij.pairs():
        assert bij.inverse(b) == a


def test_asm_to_dpp_size_four():
    assert len(enumerate_dpp(3)) * len(enumerate_asm_i(4, 2)) == 98
    assert asm_to_dpp(4, 2).domain.count() == 98


def test_bijection_arguments():
    with pytest.raises(ValueError):
        main_bijection(3, 4)
    with pytest.raises(ValueError):
        asm_to_dpp(0, 1)
    with pytest.raises(NotImplementedError):
        main_bijection(3, 2, 0, "parti")
    with pytest.raises(NotImplementedError):
        asm_to_dpp(1, 1, 0, "parti")


# ---------------------------------------------------------------- tables

def test_table_text_is_deterministic():
    a = table_lines("main", 3, 2)
    b = table_lines("main", 3, 2)
    assert a == b and len(a) == 36
    assert all("↔" in line for line in a)


def test_table_n_one():
    assert table_lines("asmdpp", 1, 1) == ["(∅, [[1]]) ↔ ([[1]], ∅)"]


def test_table_json_schema():
    lines = table_lines("asmdpp", 3, 2, fmt="json")
    assert len(lines) == 2 * 3
    for line in lines:
        doc = json.loads(line)
        assert set(doc) == {"left", "right"}
        assert set(doc["left"]) == {"p"} and len(doc["left"]["p"]) == 2
        assert all(set(f) == {"i"} for f in doc["left"]["p"] + doc["right"]["p"])


def test_table_unknown_problem():
    with pytest.raises(ValueError):
        table_lines("nope", 3, 1)
