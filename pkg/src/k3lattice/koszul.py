"""n-Koszulity of degree-one generated graded algebras over Q.

Conventions
-----------
``A_i (x) A_j`` has the lexicographic basis ``(a, b) -> a * dim A_j + b``,
and ``A_1^{(x) m}`` is ordered the same way (last factor fastest).
``mult[i, j]`` is the ``dim A_{i+j} x (dim A_i * dim A_j)`` matrix of the
product ``A_i (x) A_j -> A_{i+j}``; products with ``A_0 = k`` are filled
in as identities and products touching a zero space as zero maps.

``B_0 = k``, ``B_1 = A_1`` and ``B_m = ker(B_{m-1} (x) A_1 -> B_{m-2} (x) A_2)``
where the map multiplies the last two tensor factors. The complex

    B_n (x) A -> ... -> B_1 (x) A -> A -> k -> 0

is graded by internal degree ``m + j`` on ``B_m (x) A_j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from . import linalg as la
from .errors import InsufficientDataError


def _rat(M) -> tuple:
    return tuple(tuple(Fraction(x) for x in row) for row in M)


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    dims: tuple
    mult: Mapping = field(default_factory=dict)

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or dims[0] != 1:
            raise ValueError("dim A_0 must be 1")
        if any(d < 0 for d in dims):
            raise ValueError("negative dimension")
        mult = {}
        for key, M in self.mult.items():
            i, j = (int(x) for x in key.split(",")) if isinstance(key, str) else key
            mult[i, j] = _rat(M)
        for j, d in enumerate(dims):
            ident = _rat(la.identity(d))
            for key in ((0, j), (j, 0)):
                if key in mult and mult[key] != ident:
                    raise ValueError(f"mult{key} must be the identity")
                mult[key] = ident
        # maps into or out of a zero space need no data
        for i in range(1, len(dims)):
            for j in range(1, len(dims) - i):
                if (i, j) not in mult and 0 in (dims[i], dims[j], dims[i + j]):
                    mult[i, j] = _rat(la.zeros(dims[i + j], dims[i] * dims[j]))
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "mult", mult)
        for (i, j), M in mult.items():
            if i + j >= len(dims):
                raise ValueError(f"mult({i},{j}) lands beyond the listed degrees")
            rows, cols = len(M), dims[i] * dims[j]
            if rows != dims[i + j] or any(len(r) != cols for r in M):
                raise ValueError(f"mult({i},{j}) must be {dims[i + j]}x{cols}")
        self.check_associative()
        for (i, j), M in mult.items():
            if i == 1 and j >= 1 and la.rank(M, dims[i] * dims[j]) != dims[i + j]:
                raise ValueError(f"A is not generated in degree 1: mult(1,{j}) is not surjective")

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def product(self, i: int, j: int):
        try:
            return self.mult[i, j]
        except KeyError:
            raise InsufficientDataError(f"multiplication A_{i} x A_{j} not provided") from None

    def check_associative(self) -> None:
        """``mu(mu(x, y), z) == mu(x, mu(y, z))`` on every fully provided triple."""
        d = self.dims
        for (i, j) in list(self.mult):
            for k in range(1, len(d)):
                if i == 0 or j == 0 or i + j + k >= len(d):
                    continue
                if not all(key in self.mult for key in ((i + j, k), (j, k), (i, j + k))):
                    continue
                for a, b, c in itertools.product(range(d[i]), range(d[j]), range(d[k])):
                    ab = _column(self.mult[i, j], a * d[j] + b)
                    bc = _column(self.mult[j, k], b * d[k] + c)
                    lhs = _apply_left(self.mult[i + j, k], ab, c, d[k])
                    rhs = _apply_right(self.mult[i, j + k], a, bc, d[j + k])
                    if lhs != rhs:
                        raise ValueError(f"multiplication is not associative on A_{i} x A_{j} x A_{k}")


def _column(M, col: int) -> dict:
    return {r: row[col] for r, row in enumerate(M) if row[col]}


def _apply_left(M, x: dict, c: int, dk: int) -> list:
    # M (x (x) e_c)
    return [sum((v * row[r * dk + c] for r, v in x.items()), Fraction(0)) for row in M]


def _apply_right(M, a: int, y: dict, dk: int) -> list:
    # M (e_a (x) y)
    return [sum((v * row[a * dk + r] for r, v in y.items()), Fraction(0)) for row in M]


# ---------------------------------------------------------------------------
# Model algebras


def _monomials(nvars: int, degree: int, cap: Optional[int] = None) -> list[tuple[int, ...]]:
    out = [
        e
        for e in itertools.product(range(degree + 1), repeat=nvars)
        if sum(e) == degree and (cap is None or max(e, default=0) < cap)
    ]
    return sorted(out, reverse=True)


def _monomial_algebra(bases: list[list[tuple]]) -> GradedAlgebra:
    index = [{m: k for k, m in enumerate(b)} for b in bases]
    D = len(bases) - 1
    mult = {}
    for i in range(1, D + 1):
        for j in range(1, D + 1 - i):
            M = [[0] * (len(bases[i]) * len(bases[j])) for _ in bases[i + j]]
            for a, ma in enumerate(bases[i]):
                for b, mb in enumerate(bases[j]):
                    prod = tuple(x + y for x, y in zip(ma, mb))
                    k = index[i + j].get(prod)
                    if k is not None:
                        M[k][a * len(bases[j]) + b] = 1
            mult[i, j] = M
    return GradedAlgebra(tuple(len(b) for b in bases), mult)


def polynomial_algebra(nvars: int, max_degree: int, nilpotency: Optional[int] = None) -> GradedAlgebra:
    """``k[x_1..x_n]`` truncated at ``max_degree``; with ``nilpotency=N``
    the quotient by ``x_i^N``. Monomials are ordered lexicographically
    descending (``x`` before ``y``)."""
    return _monomial_algebra([_monomials(nvars, d, nilpotency) for d in range(max_degree + 1)])


def veronese_algebra(nvars: int, k: int, max_degree: int) -> GradedAlgebra:
    """``k``-th Veronese subalgebra of ``k[x_1..x_n]``: ``A_i = S^{k i}``."""
    return _monomial_algebra([_monomials(nvars, k * d) for d in range(max_degree + 1)])


# ---------------------------------------------------------------------------
# B_m and the Koszul complex


@dataclass(frozen=True)
class KoszulData:
    """``b_bases[m]``: rows spanning ``B_m`` inside ``A_1^{(x) m}``.
    ``inclusions[m]``: coordinates of those rows in ``B_{m-1} (x) A_1``."""

    b_bases: tuple
    inclusions: tuple

    @property
    def b_dims(self) -> tuple:
        return tuple(len(b) for b in self.b_bases)


def _multiply_last_pair(mu, x: Sequence, d: int) -> list:
    """Apply ``id (x) mu`` to ``x`` in ``A_1^{(x) m}``, ``mu: A_1 (x) A_1 -> A_2``."""
    block = d * d
    out = []
    for start in range(0, len(x), block):
        out.extend(la.matvec(mu, x[start : start + block]))
    return out


def relations(A: GradedAlgebra) -> list:
    """Basis of the quadratic relations ``R = ker(A_1 (x) A_1 -> A_2)``."""
    if A.top_degree < 2:
        raise InsufficientDataError("relations need dim A_2")
    d = A.dims[1]
    return _canonical_rows(la.rat_nullspace(A.product(1, 1), d * d), d * d)


def _canonical_rows(rows, n) -> list:
    if not rows:
        return []
    R, piv = la.rat_rref(rows, n)
    return [tuple(r) for r in R[: len(piv)]]


def b_modules(A: GradedAlgebra, n: int) -> KoszulData:
    """``B_0, ..., B_n`` computed by the iterated kernel recursion."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    d = A.dims[1] if len(A.dims) > 1 else 0
    bases = [((Fraction(1),),)]
    incl = [()]
    if n >= 1:
        bases.append(tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)))
        incl.append(tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)))
    if n >= 2:
        if A.top_degree < 2:
            raise InsufficientDataError("B_m for m >= 2 needs mult(1,1)")
        mu = A.product(1, 1)
    for m in range(2, n + 1):
        prev = bases[m - 1]
        # spanning vectors p (x) e_a of B_{m-1} (x) A_1, indexed by (p, a)
        span = [la.kron([list(p)], [[int(a == c) for c in range(d)]])[0] for p in prev for a in range(d)]
        images = [_multiply_last_pair(mu, v, d) for v in span]
        width = len(span)
        coeffs = la.rat_nullspace(la.transpose(images, len(images[0]) if images else 0), width) if span else []
        vecs = [
            [sum((c[k] * span[k][i] for k in range(width)), Fraction(0)) for i in range(d**m)]
            for c in coeffs
        ]
        rows = _canonical_rows(vecs, d**m)
        bases.append(tuple(rows))
        incl.append(tuple(tuple(la.rat_solve(la.transpose(span, d**m), r, width)) for r in rows))
    return KoszulData(tuple(bases), tuple(incl))


def _differential(A: GradedAlgebra, K: KoszulData, m: int, j: int):
    """``d_m: B_m (x) A_j -> B_{m-1} (x) A_{j+1}`` in product bases."""
    C = K.inclusions[m]
    b_prev = len(K.b_bases[m - 1])
    d1 = A.dims[1]
    aj, aj1 = A.dims[j], A.dims[j + 1]
    mu = A.product(1, j)
    rows = b_prev * aj1
    cols = len(K.b_bases[m]) * aj
    D = [[Fraction(0)] * cols for _ in range(rows)]
    for p, cp in enumerate(C):
        for q in range(b_prev):
            for a in range(d1):
                c = cp[q * d1 + a]
                if not c:
                    continue
                for y in range(aj):
                    col = p * aj + y
                    for z in range(aj1):
                        v = mu[z][a * aj + y]
                        if v:
                            D[q * aj1 + z][col] += c * v
    return D


def koszul_complex_matrices(A: GradedAlgebra, n: int, degree: int, K: Optional[KoszulData] = None) -> list:
    """Differentials of the degree-``degree`` strand, left to right:
    ``d_top, ..., d_1`` and, in degree 0, the augmentation ``A_0 -> k``."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if degree > A.top_degree:
        raise InsufficientDataError(f"dim A_{degree} not provided")
    K = K or b_modules(A, min(n, degree))
    top = min(n, degree)
    mats = [_differential(A, K, m, degree - m) for m in range(top, 0, -1)]
    if degree == 0:
        mats.append([[Fraction(1)]])
    return mats


@dataclass(frozen=True)
class KoszulFailure:
    """Exactness fails where ``B_position (x) A`` maps in: the kernel of
    the next differential is bigger than this image."""

    position: int
    degree: int
    kernel_dim: int
    image_dim: int

    @property
    def label(self) -> str:
        return f"B_{self.position}⊗A"


@dataclass(frozen=True)
class KoszulReport:
    koszul: bool
    n: int
    max_degree: int
    first_failure: Optional[KoszulFailure] = None


def _strand_dims(A, K, n, degree):
    # dims of B_m (x) A_{degree-m} for m = 0..n (zero where undefined)
    out = []
    for m in range(n + 1):
        j = degree - m
        out.append(len(K.b_bases[m]) * A.dims[j] if 0 <= j and m < len(K.b_bases) else 0)
    return out


def is_n_koszul(A: GradedAlgebra, n: int, max_internal_degree: int) -> KoszulReport:
    """Check exactness of the ``n``-truncated complex degree by degree.

    Only degrees ``<= max_internal_degree`` are examined; a ``True``
    verdict says nothing about higher degrees.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if max_internal_degree > A.top_degree:
        raise InsufficientDataError(f"dim A_{max_internal_degree} not provided")
    K = b_modules(A, min(n, max_internal_degree))
    for D in range(max_internal_degree + 1):
        top = min(n, D)
        dims = _strand_dims(A, K, top, D)
        ranks = {m: la.rank(_differential(A, K, m, D - m), dims[m]) for m in range(1, top + 1)}
        # position 0: A -> k must be onto k (only nonzero in degree 0)
        if D == 0 and dims[0] != 1:
            return KoszulReport(False, n, max_internal_degree, KoszulFailure(0, 0, 0, dims[0]))
        for m in range(1, n + 1):
            if m - 1 > D:
                break
            out_rank = ranks.get(m - 1, 1 if (m - 1 == 0 and D == 0) else 0)
            kernel = dims[m - 1] - out_rank
            image = ranks.get(m, 0)
            if kernel != image:
                return KoszulReport(False, n, max_internal_degree, KoszulFailure(m, D, kernel, image))
    return KoszulReport(True, n, max_internal_degree)
