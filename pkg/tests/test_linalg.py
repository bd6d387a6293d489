from fractions import Fraction
from math import gcd

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form

from k3lattice import linalg as la


def int_matrices(max_dim=5, bound=20):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=m, max_size=m
            )
        )
    )


def sympy_factors(M):
    D = smith_normal_form(sympy.Matrix(M), domain=sympy.ZZ)
    return [abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0]


def test_snf_small_example():
    D, U, V = la.snf([[2, 1], [1, 2]])
    assert D == [[1, 0], [0, 3]]
    assert la.matmul(la.matmul(U, [[2, 1], [1, 2]]), V) == D


def test_snf_zero_and_empty():
    D, U, V = la.snf([[0, 0], [0, 0]])
    assert D == [[0, 0], [0, 0]]
    assert la.invariant_factors([[0, 0]]) == []
    D, U, V = la.snf([], ncols=3)
    assert D == [] and V == la.identity(3)


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_snf_transform_identity_and_chain(M):
    D, U, V = la.snf(M)
    m, n = len(M), len(M[0])
    assert la.matmul(la.matmul(U, M), V) == D
    assert abs(la.det(U)) == 1 and abs(la.det(V)) == 1
    diag = [D[i][i] for i in range(min(m, n))]
    assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert diag[: len(nz)] == nz
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))


@settings(max_examples=60, deadline=None)
@given(int_matrices(max_dim=4, bound=12))
def test_invariant_factors_match_sympy(M):
    assert la.invariant_factors(M) == sympy_factors(M)


def test_hnf_examples():
    H, U = la.hnf([[2, 4], [1, 2]])
    assert H == [[1, 2], [0, 0]]
    assert la.hnf([[0, 3], [0, 5]])[0] == [[0, 1], [0, 0]]


@settings(max_examples=100, deadline=None)
@given(int_matrices())
def test_hnf_shape_and_transform(M):
    H, U = la.hnf(M)
    assert la.matmul(U, M) == H
    assert abs(la.det(U)) == 1
    prev = -1
    for row in H:
        if not any(row):
            continue
        p = next(j for j, x in enumerate(row) if x)
        assert p > prev and row[p] > 0
        for above in H[: H.index(row)]:
            assert 0 <= above[p] < row[p]
        prev = p
    # zero rows at the bottom
    flags = [any(r) for r in H]
    assert flags == sorted(flags, reverse=True)


def test_kernel_examples():
    assert la.kernel_basis([[1, 1]]) == [[1, -1]]
    assert la.kernel_basis([[2, 4]]) == [[2, -1]]
    assert la.kernel_basis([[1, 0], [0, 1]]) == []


@settings(max_examples=100, deadline=None)
@given(int_matrices())
def test_kernel_is_saturated(M):
    K = la.kernel_basis(M)
    n = len(M[0])
    assert len(K) == n - la.rank(M)
    for k in K:
        assert la.matvec(M, k) == [0] * len(M)
    if K:
        # saturated: the kernel basis spans a primitive sublattice
        assert la.invariant_factors(K) == [1] * len(K)


def test_det_examples():
    assert la.det([[0, 1], [1, 0]]) == -1
    assert la.det([]) == 1


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_sympy(M):
    assert la.det(M) == int(sympy.Matrix(M).det())


def test_solve():
    assert la.solve([[2]], [3]) is None
    assert la.solve([[2]], [4]) == [2]
    # rational solution (-4, 9/2) only
    assert la.solve([[1, 2], [3, 4]], [5, 6]) is None
    assert la.solve([[1, 2], [3, 4]], [5, 11]) == [1, 2]


@settings(max_examples=80, deadline=None)
@given(int_matrices(max_dim=4, bound=10), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_consistent_systems(M, x0):
    x0 = x0[: len(M[0])]
    b = la.matvec(M, x0)
    x = la.solve(M, b)
    assert x is not None and la.matvec(M, x) == b


def test_rational_routines():
    M = [[2, 1], [1, 2]]
    inv = la.rat_inverse(M)
    assert la.matmul(M, inv) == [[1, 0], [0, 1]]
    assert inv[0][0] == Fraction(2, 3)
    with pytest.raises(ZeroDivisionError):
        la.rat_inverse([[1, 2], [2, 4]])
    assert la.rat_nullspace([[1, 2], [2, 4]]) == [[-2, 1]]
    assert la.rat_solve([[2]], [3]) == [Fraction(3, 2)]
    assert la.common_denominator([[Fraction(1, 2), Fraction(1, 3)]]) == 6


def test_signature():
    assert la.signature([[0, 1], [1, 0]]) == (1, 1, 0)
    assert la.signature([[2, 1], [1, 2]]) == (2, 0, 0)
    assert la.signature([[1, 1], [1, 1]]) == (1, 0, 1)
    assert la.signature([[-2, 0], [0, 0]]) == (0, 1, 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_signature_matches_eigenvalue_count(A):
    n = len(A)
    S = [[A[i][j] + A[j][i] for j in range(n)] for i in range(n)]
    ev = sympy.Matrix(S).eigenvals()
    pos = sum(m for e, m in ev.items() if sympy.re(sympy.N(e, 50)) > 1e-30)
    zero = sum(m for e, m in ev.items() if e == 0)
    assert la.signature(S) == (pos, n - pos - zero, zero)


def test_xgcd_and_vector_gcd():
    g, x, y = la.xgcd(12, -18)
    assert g == 6 and 12 * x - 18 * y == 6
    assert la.vector_gcd([4, 6, 10]) == 2
    assert la.vector_gcd([0, 0]) == 0
    assert gcd(*la.xgcd(7, 5)[1:]) == 1


def test_kron_and_block_diag():
    assert la.kron([[1, 2]], [[1], [3]]) == [[1, 2], [3, 6]]
    assert la.block_diag([[1]], [[2, 3], [4, 5]]) == [[1, 0, 0], [0, 2, 3], [0, 4, 5]]
