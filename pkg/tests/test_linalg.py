from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatmoduli.linalg import (
    det,
    hermite_normal_form,
    int_det,
    integer_kernel,
    inverse,
    mat_mul,
    mat_vec,
    nullspace,
    rank,
    rref,
    smith_normal_form,
    solve,
    solve_integer,
)

small_int = st.integers(min_value=-9, max_value=9)


def int_matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_int, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def is_hnf(H):
    """Row echelon, positive pivots, entries above each pivot reduced."""
    last = -1
    seen_zero = False
    for i, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero = True
            continue
        if seen_zero:
            return False
        p = nz[0]
        if p <= last or row[p] <= 0:
            return False
        for k in range(i):
            if not 0 <= H[k][p] < row[p]:
                return False
        last = p
    return True


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_hnf_contract(M):
    H, U = hermite_normal_form(M)
    assert mat_mul(U, M) == H
    assert abs(int_det(U)) == 1
    assert is_hnf(H)


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_hnf_is_canonical_under_row_operations(M):
    # mixing rows by a unimodular matrix must not change the form
    n = len(M)
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        V[i][i + 1] = 2
    H1, _ = hermite_normal_form(M)
    H2, _ = hermite_normal_form(mat_mul(V[::-1], M))
    assert H1 == H2


def test_hnf_fixed_points():
    assert hermite_normal_form([[2, 4], [0, 6]])[0] == [[2, 4], [0, 6]]
    assert hermite_normal_form([[0, 0]])[0] == [[0, 0]]
    H, U = hermite_normal_form([[3, 1], [2, 1]], transform=False)
    assert U is None and H == [[1, 0], [0, 1]]


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_snf_contract(M):
    D, U, V = smith_normal_form(M)
    assert mat_mul(mat_mul(U, M), V) == D
    assert abs(int_det(U)) == 1 and abs(int_det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    assert all(d >= 0 for d in diag)
    nz = [d for d in diag if d]
    assert diag[: len(nz)] == nz  # zeros last
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


def _gcd_minors(M, k):
    from math import gcd

    r, c = len(M), len(M[0])
    g = 0
    from itertools import combinations

    for rows in combinations(range(r), k):
        for cols in combinations(range(c), k):
            g = gcd(g, int(det([[M[i][j] for j in cols] for i in rows])))
    return g


@settings(max_examples=60, deadline=None)
@given(int_matrices(4, 4))
def test_snf_matches_determinantal_divisors(M):
    # d_1 ... d_k = gcd of k x k minors, an independent characterization
    D, _, _ = smith_normal_form(M)
    prod = 1
    for k in range(1, min(len(M), len(M[0])) + 1):
        prod *= D[k - 1][k - 1]
        assert prod == _gcd_minors(M, k)


def test_snf_small_cases():
    D, _, _ = smith_normal_form([[6, 0], [0, 4]])
    assert (D[0][0], D[1][1]) == (2, 12)
    D, _, _ = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert [D[i][i] for i in range(3)] == [2, 6, 12]


@settings(max_examples=100, deadline=None)
@given(int_matrices())
def test_integer_kernel(M):
    K = integer_kernel(M, len(M[0]))
    assert len(K) == len(M[0]) - rank(M)
    for v in K:
        assert all(x == 0 for x in mat_vec(M, v))
    # saturation: the kernel basis spans a primitive sublattice
    if K:
        D, _, _ = smith_normal_form(K)
        assert all(D[i][i] == 1 for i in range(len(K)))


def test_integer_kernel_is_saturated_by_box_count():
    # every integer kernel vector in a box is an integer combination of the basis
    M = [[2, 4, 6], [1, 2, 3]]
    K = integer_kernel(M, 3)
    for v in product(range(-4, 5), repeat=3):
        if all(x == 0 for x in mat_vec(M, v)):
            assert solve_integer([list(c) for c in zip(*K)], list(v)) is not None


@settings(max_examples=100, deadline=None)
@given(int_matrices(), st.data())
def test_solve_integer(M, data):
    x0 = data.draw(st.lists(small_int, min_size=len(M[0]), max_size=len(M[0])))
    b = mat_vec(M, x0)
    x = solve_integer(M, b)
    assert x is not None and mat_vec(M, x) == b


def test_solve_integer_detects_no_solution():
    assert solve_integer([[2, 0], [0, 2]], [1, 0]) is None
    assert solve_integer([[1, 1]], [Fraction(1, 2)]) is None


@settings(max_examples=100, deadline=None)
@given(int_matrices(4, 4))
def test_rational_algebra_against_numpy(M):
    n = len(M[0])
    assert rank(M) == np.linalg.matrix_rank(np.array(M, dtype=float))
    for v in nullspace(M, n):
        assert all(x == 0 for x in mat_vec(M, v))
    R, piv = rref(M)
    assert len(piv) == rank(M)
    if len(M) == n:
        assert det(M) == int_det(M)
        assert abs(float(det(M)) - np.linalg.det(np.array(M, dtype=float))) < 1e-6 * max(1, abs(float(det(M))))
        if det(M):
            Mi = inverse(M)
            assert mat_mul(M, Mi) == [[int(i == j) for j in range(n)] for i in range(n)]


def test_solve_particular_solution():
    x = solve([[1, 2], [2, 4]], [3, 6])
    assert x is not None and mat_vec([[1, 2]], x) == [3]
    assert solve([[1, 2], [2, 4]], [3, 7]) is None


def test_inverse_of_singular_raises():
    with pytest.raises(ZeroDivisionError):
        inverse([[1, 2], [2, 4]])
