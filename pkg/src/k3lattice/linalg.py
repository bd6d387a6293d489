"""Exact integer and rational linear algebra.

Matrices are plain lists of rows holding Python ``int`` (arbitrary
precision) or :class:`fractions.Fraction` entries. Every routine returns
fresh lists and never mutates its arguments.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Matrix = list[list[int]]
RatMatrix = list[list[Fraction]]


def _copy(M: Sequence[Sequence]) -> list[list]:
    return [list(row) for row in M]


def _as_int_matrix(M: Sequence[Sequence]) -> Matrix:
    out = []
    width = None
    for row in M:
        r = []
        for x in row:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"non-integral entry {x}")
                x = x.numerator
            elif not isinstance(x, int):
                raise TypeError(f"expected an integer entry, got {type(x).__name__}")
            r.append(int(x))
        if width is None:
            width = len(r)
        elif len(r) != width:
            raise ValueError("ragged matrix")
        out.append(r)
    return out


def shape(M: Sequence[Sequence], ncols: Optional[int] = None) -> tuple[int, int]:
    if len(M) == 0:
        return 0, ncols or 0
    return len(M), len(M[0])


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(M: Sequence[Sequence], ncols: Optional[int] = None) -> list[list]:
    m, n = shape(M, ncols)
    return [[M[i][j] for i in range(m)] for j in range(n)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence], inner: Optional[int] = None) -> list[list]:
    """Product of two matrices; ``inner`` disambiguates an empty ``B``."""
    m = len(A)
    k = len(A[0]) if m else (inner if inner is not None else len(B))
    if len(B) != k:
        raise ValueError(f"dimension mismatch: {m}x{k} times {len(B)}x?")
    n = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else [()] * n
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], x: Sequence) -> list:
    if A and len(A[0]) != len(x):
        raise ValueError("dimension mismatch")
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def dot(x: Sequence, y: Sequence):
    if len(x) != len(y):
        raise ValueError("dimension mismatch")
    return sum(a * b for a, b in zip(x, y))


def kron(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    return [
        [a * b for a in rowA for b in rowB]
        for rowA in A
        for rowB in B
    ]


def block_diag(*blocks: Sequence[Sequence]) -> list[list]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = b[i][j]
        off += k
    return out


def is_symmetric(M: Sequence[Sequence]) -> bool:
    n = len(M)
    return all(len(row) == n for row in M) and all(
        M[i][j] == M[j][i] for i in range(n) for j in range(i)
    )


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


# ---------------------------------------------------------------------------
# Integer normal forms


def _swap_rows(A, i, j):
    A[i], A[j] = A[j], A[i]


def _swap_cols(A, i, j):
    for row in A:
        row[i], row[j] = row[j], row[i]


def _add_row(A, dst, src, c):
    if c:
        rs = A[src]
        A[dst] = [a + c * b for a, b in zip(A[dst], rs)]


def _add_col(A, dst, src, c):
    if c:
        for row in A:
            row[dst] += c * row[src]


def snf(M: Sequence[Sequence[int]], ncols: Optional[int] = None) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form with transforms.

    Returns ``(D, U, V)`` with ``U @ M @ V == D``, ``U`` and ``V``
    unimodular, ``D`` diagonal with nonnegative entries ``d_1 | d_2 | ...``.
    The pivot is always a nonzero entry of least absolute value.

    >>> D, U, V = snf([[2, 1], [1, 2]])
    >>> [D[0][0], D[1][1]]
    [1, 3]
    """
    A = _as_int_matrix(M)
    m, n = shape(A, ncols)
    U = identity(m)
    V = identity(n)
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = A[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return A, U, V
            _, i, j = best
            if i != t:
                _swap_rows(A, t, i)
                _swap_rows(U, t, i)
            if j != t:
                _swap_cols(A, t, j)
                _swap_cols(V, t, j)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                _add_row(A, i, t, -q)
                _add_row(U, i, t, -q)
                if A[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                _add_col(A, j, t, -q)
                _add_col(V, j, t, -q)
                if A[t][j]:
                    clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(A[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            _add_row(A, t, bad, 1)
            _add_row(U, t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return A, U, V


def invariant_factors(M: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal of the Smith form, including units."""
    D, _, _ = snf(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def hnf(M: Sequence[Sequence[int]], ncols: Optional[int] = None) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U @ M == H``, ``U`` unimodular and ``H`` in
    row echelon form: pivots positive, entries above a pivot reduced into
    ``[0, pivot)``, zero rows at the bottom.
    """
    A = _as_int_matrix(M)
    m, n = shape(A, ncols)
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            rows = [i for i in range(r, m) if A[i][c]]
            if not rows:
                break
            i = min(rows, key=lambda k: (abs(A[k][c]), k))
            if i != r:
                _swap_rows(A, r, i)
                _swap_rows(U, r, i)
            p = A[r][c]
            done = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // p
                    _add_row(A, i, r, -q)
                    _add_row(U, i, r, -q)
                    if A[i][c]:
                        done = False
            if done:
                break
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
        p = A[r][c]
        for i in range(r):
            q = A[i][c] // p
            _add_row(A, i, r, -q)
            _add_row(U, i, r, -q)
        r += 1
    return A, U


def row_basis(M: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Canonical (HNF) basis of the Z-span of the rows of ``M``."""
    H, _ = hnf(M, ncols)
    return [row for row in H if any(row)]


def kernel_basis(M: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Saturated basis of ``{x in Z^n : M x = 0}`` as rows in HNF order.

    ``ncols`` is needed only when ``M`` has no rows.
    """
    A = _as_int_matrix(M)
    m, n = shape(A, ncols)
    if m == 0:
        return identity(n)
    H, U = hnf(transpose(A), m)
    K = [U[i] for i in range(n) if not any(H[i])]
    return row_basis(K, n) if K else []


def rank(M: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    return len(rat_rref(M, ncols)[1])


def det(M: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    A = _as_int_matrix(M)
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("det requires a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def solve(M: Sequence[Sequence[int]], b: Sequence[int], ncols: Optional[int] = None) -> Optional[list[int]]:
    """Some integer ``x`` with ``M x = b``, or ``None`` if there is none."""
    A = _as_int_matrix(M)
    m, n = shape(A, ncols)
    if len(b) != m:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m}")
    D, U, V = snf(A, n)
    c = matvec(U, b) if m else []
    y = [0] * n
    for i in range(m):
        d = D[i][i] if i < n else 0
        if d == 0:
            if c[i]:
                return None
        elif c[i] % d:
            return None
        else:
            y[i] = c[i] // d
    return matvec(V, y) if n else []


def inverse_unimodular(M: Sequence[Sequence[int]]) -> Matrix:
    """Integer inverse of a matrix with determinant +-1."""
    inv = rat_inverse(M)
    return _as_int_matrix(inv)


# ---------------------------------------------------------------------------
# Rational elimination


def to_fractions(M: Sequence[Sequence]) -> RatMatrix:
    return [[Fraction(x) for x in row] for row in M]


def rat_rref(M: Sequence[Sequence], ncols: Optional[int] = None) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form over Q and its pivot columns."""
    A = to_fractions(M)
    m, n = shape(A, ncols)
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rat_nullspace(M: Sequence[Sequence], ncols: Optional[int] = None) -> RatMatrix:
    """Basis of the rational null space as rows, one per free column."""
    m, n = shape(M, ncols)
    if m == 0:
        return to_fractions(identity(n))
    R, pivots = rat_rref(M, n)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def rat_inverse(M: Sequence[Sequence]) -> RatMatrix:
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("inverse requires a square matrix")
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rat_rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def rat_solve(M: Sequence[Sequence], b: Sequence, ncols: Optional[int] = None) -> Optional[list[Fraction]]:
    """A rational solution of ``M x = b`` or ``None``."""
    m, n = shape(M, ncols)
    aug = [list(row) + [b[i]] for i, row in enumerate(M)]
    R, pivots = rat_rref(aug, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(R, pivots):
        x[p] = row[n]
    return x


def common_denominator(M: Sequence[Sequence]) -> int:
    d = 1
    for row in M:
        for x in row:
            q = Fraction(x).denominator
            d = d * q // gcd(d, q)
    return d


def is_integral(M: Sequence[Sequence]) -> bool:
    return all(Fraction(x).denominator == 1 for row in M for x in row)


def signature(M: Sequence[Sequence]) -> tuple[int, int, int]:
    """``(n_plus, n_minus, n_zero)`` of a symmetric matrix, by exact
    congruence diagonalisation."""
    A = to_fractions(M)
    n = len(A)
    pos = neg = 0
    k = 0
    while k < n:
        p = next((i for i in range(k, n) if A[i][i]), None)
        if p is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if A[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # A[i][i] = A[j][j] = 0 and A[i][j] != 0: e_i + e_j is anisotropic
            for r in range(n):
                A[i][r] += A[j][r]
            for r in range(n):
                A[r][i] += A[r][j]
            p = i
        A[k], A[p] = A[p], A[k]
        for row in A:
            row[k], row[p] = row[p], row[k]
        d = A[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = A[i][k] / d
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
        for i in range(k + 1, n):
            A[k][i] = Fraction(0)
        k += 1
    return pos, neg, n - pos - neg
