import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import determinantal_divisors, det_laplace, invariant_factors, rational_rank
from toricrig.zlattice import (
    IntMatrix,
    cokernel_structure,
    determinant,
    elementary_divisors,
    hermite_normal_form,
    integer_kernel,
    integer_section,
    is_primitive,
    is_unimodular,
    matmul,
    primitive_part,
    rank,
    smith_normal_form,
    unimodular_inverse,
)


def matrices(max_rows=4, max_cols=4, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def random_matrix(rng, m, n, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


def random_unimodular(rng, n, steps=12):
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            U[i] = [-x for x in U[i]]
            continue
        q = rng.randint(-2, 2)
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]
    return U


def assert_hnf_shape(H):
    last = -1
    seen_zero = False
    for r, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero = True
            continue
        assert not seen_zero, "zero rows must come last"
        p = nz[0]
        assert p > last
        assert row[p] > 0
        for above in H[:r]:
            assert 0 <= above[p] < row[p]
        last = p


# --- fixed examples -----------------------------------------------------------


def test_hnf_small_example():
    H, U = hermite_normal_form([[2, 4], [1, 3]])
    assert H.tolist() == [[1, 1], [0, 2]]
    assert U.tolist() == [[1, -1], [-1, 2]]
    assert (U @ IntMatrix.from_rows([[2, 4], [1, 3]])).tolist() == H.tolist()


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]).diagonal == [1, 6]
    assert smith_normal_form([[1, 0], [1, 2]]).diagonal == [1, 2]
    assert elementary_divisors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def test_cokernel_edge_cases():
    assert cokernel_structure(IntMatrix.zeros(3, 0)) == (3, [])
    assert cokernel_structure([[2, 0], [0, 0]]) == (1, [2])
    assert cokernel_structure([[1, 0], [0, 1]]) == (0, [])


def test_primitive_helpers():
    assert is_primitive((2, 3))
    assert not is_primitive((2, 4))
    assert not is_primitive((0, 0))
    assert primitive_part((4, -6, 0)) == (2, -3, 0)
    with pytest.raises(ValueError):
        primitive_part((0, 0))


def test_is_unimodular_rejects_non_square():
    assert is_unimodular([[1, 1], [0, 1]])
    assert not is_unimodular([[2, 0], [0, 1]])
    with pytest.raises(ValueError):
        is_unimodular([[1, 0, 0], [0, 1, 0]])


def test_section_requires_surjection():
    S = integer_section([[1, 2, 3]], 3)
    assert sum(a * b for a, b in zip([1, 2, 3], S[0])) == 1
    with pytest.raises(ValueError):
        integer_section([[2, 4]], 2)
    with pytest.raises(ValueError):
        integer_section([[1, 0], [0, 1]], 1)


# --- oracle agreement ----------------------------------------------------------


def test_smith_and_hermite_match_minor_gcd_oracle():
    rng = random.Random(7)
    for _ in range(100):
        A = random_matrix(rng, 3, 4)
        dec = smith_normal_form(A)
        diag = dec.diagonal
        assert [d for d in diag if d] == invariant_factors(A)
        for a, b in zip(diag, diag[1:]):
            if b:
                assert a and b % a == 0
        assert (dec.U @ IntMatrix.from_rows(A) @ dec.V).tolist() == dec.D.tolist()
        assert abs(dec.U.det()) == 1 and abs(dec.V.det()) == 1
        H, U = hermite_normal_form(A)
        assert_hnf_shape(H.tolist())
        assert abs(U.det()) == 1
        assert matmul(U.tolist(), A) == H.tolist()
        assert determinantal_divisors(H.tolist()) == determinantal_divisors(A)


def test_hnf_is_invariant_under_left_unimodular_action():
    rng = random.Random(11)
    for _ in range(40):
        A = random_matrix(rng, 3, 4)
        V = random_unimodular(rng, 3)
        assert hermite_normal_form(matmul(V, A))[0] == hermite_normal_form(A)[0]


# --- properties ------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_hnf_idempotent(A):
    H, _ = hermite_normal_form(A)
    H2, U2 = hermite_normal_form(H)
    assert H2 == H
    assert_hnf_shape(H.tolist())


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_and_kernel(A):
    n = len(A[0])
    r = rank(A)
    assert r == rational_rank(A, n)
    K = integer_kernel(A, n)
    assert len(K) == n - r
    for k in K:
        assert all(sum(a * x for a, x in zip(row, k)) == 0 for row in A)
    # saturation: the kernel basis extends to a lattice basis
    if K:
        assert invariant_factors(K) == [1] * len(K)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_laplace(A):
    assert determinant(A) == det_laplace(A)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10 ** 6))
def test_unimodular_inverse(n, seed):
    U = random_unimodular(random.Random(seed), n)
    inv = unimodular_inverse(U)
    assert matmul(U, inv) == [[int(i == j) for j in range(n)] for i in range(n)]
