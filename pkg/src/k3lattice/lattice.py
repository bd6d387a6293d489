"""Integral lattices, discriminant forms, isometry enumeration and gluing.

A lattice is stored as its Gram matrix in a fixed basis; vectors are
integer coordinate tuples in that basis. Elements of the dual lattice and
of discriminant groups are rational coordinate vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, prod
from typing import Iterator, Optional, Sequence

from . import linalg as la
from .errors import (
    DegenerateLatticeError,
    GlueError,
    LatticeError,
    NonIntegralGlueError,
    UnsupportedSignatureError,
)

Vector = tuple[int, ...]


def _tuplify(M) -> tuple[tuple, ...]:
    return tuple(tuple(row) for row in M)


@dataclass(frozen=True)
class IntegralLattice:
    """A free Z-module with a symmetric integral bilinear form."""

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        G = la._as_int_matrix(self.gram)
        if not la.is_symmetric(G):
            raise LatticeError("Gram matrix must be square and symmetric")
        object.__setattr__(self, "gram", _tuplify(G))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def det(self) -> int:
        return la.det(self.gram)

    @property
    def is_nondegenerate(self) -> bool:
        return self.det != 0

    @property
    def signature(self) -> tuple[int, int, int]:
        return la.signature(self.gram)

    @property
    def is_positive_definite(self) -> bool:
        return self.signature == (self.rank, 0, 0)

    @property
    def is_negative_definite(self) -> bool:
        return self.signature == (0, self.rank, 0)

    def matrix(self) -> list[list[int]]:
        return [list(row) for row in self.gram]

    def __eq__(self, other):
        if not isinstance(other, IntegralLattice):
            return NotImplemented
        return self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return f"IntegralLattice({self.matrix()})"


def lattice(gram) -> IntegralLattice:
    return gram if isinstance(gram, IntegralLattice) else IntegralLattice(gram)


def _check_vec(L: IntegralLattice, x) -> None:
    if len(x) != L.rank:
        raise LatticeError(f"vector of length {len(x)} in a lattice of rank {L.rank}")


def pair(L: IntegralLattice, x: Sequence, y: Sequence):
    """Bilinear form ``x^T G y``. Rational coordinates are allowed."""
    _check_vec(L, x)
    _check_vec(L, y)
    return la.dot(x, la.matvec(L.gram, y))


def norm(L: IntegralLattice, x: Sequence):
    return pair(L, x, x)


def direct_sum(*lattices: IntegralLattice) -> IntegralLattice:
    return IntegralLattice(la.block_diag(*(lattice(L).gram for L in lattices)))


def hyperbolic_U() -> IntegralLattice:
    return IntegralLattice([[0, 1], [1, 0]])


# Cartan matrix of E8, Bourbaki labelling.
_E8_CARTAN = [
    [2, 0, -1, 0, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
]


def e8_minus() -> IntegralLattice:
    """The negative definite E8 lattice E8(-1)."""
    return IntegralLattice([[-x for x in row] for row in _E8_CARTAN])


def rescale(L: IntegralLattice, c: int) -> IntegralLattice:
    if c == 0:
        raise LatticeError("rescaling factor must be nonzero")
    return IntegralLattice([[c * x for x in row] for row in lattice(L).gram])


# ---------------------------------------------------------------------------
# Isometries


@dataclass(frozen=True)
class Isometry:
    """Integer matrix ``M`` with ``M^T G_target M == G_source``.

    Column ``j`` of ``matrix`` is the image of the ``j``-th source basis
    vector, so ``x -> M x``.
    """

    source: IntegralLattice
    target: IntegralLattice
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        M = la._as_int_matrix(self.matrix)
        n, m = self.target.rank, self.source.rank
        if n != m:
            raise LatticeError("isometries are required to be square")
        if len(M) != n or any(len(row) != m for row in M):
            raise LatticeError(f"matrix shape does not match ranks {m} -> {n}")
        lhs = la.matmul(la.matmul(la.transpose(M, m), self.target.gram, n), M, n) if n else []
        if lhs != [list(r) for r in self.source.gram]:
            raise LatticeError("matrix does not satisfy M^T G_target M = G_source")
        object.__setattr__(self, "matrix", _tuplify(M))

    def __call__(self, x: Sequence) -> list:
        return la.matvec(self.matrix, x) if self.matrix else []

    def compose(self, other: "Isometry") -> "Isometry":
        """``self o other``: first ``other``, then ``self``."""
        if other.target != self.source:
            raise LatticeError("cannot compose: lattices do not match")
        return Isometry(other.source, self.target, la.matmul(self.matrix, other.matrix, self.source.rank))

    def inverse(self) -> "Isometry":
        return Isometry(self.target, self.source, la.inverse_unimodular(self.matrix) if self.matrix else [])

    @property
    def det(self) -> int:
        return la.det(self.matrix)

    def matrix_list(self) -> list[list[int]]:
        return [list(r) for r in self.matrix]

    @classmethod
    def identity(cls, L: IntegralLattice) -> "Isometry":
        return cls(L, L, la.identity(L.rank))

    @classmethod
    def minus_identity(cls, L: IntegralLattice) -> "Isometry":
        return cls(L, L, [[-x for x in row] for row in la.identity(L.rank)])


# ---------------------------------------------------------------------------
# Discriminant groups


@dataclass(frozen=True, eq=False)
class DiscriminantGroup:
    """``L^* / L`` presented as ``prod Z/d_i`` with explicit generators.

    Group elements are coefficient tuples ``c`` with ``0 <= c_i < d_i``;
    :meth:`element` lifts them to rational vectors of ``L^*``.
    """

    lattice: IntegralLattice
    invariant_factors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    q_values: Optional[tuple[Fraction, ...]]
    b_values: tuple[tuple[Fraction, ...], ...]
    _coord_rows: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def coords(self, x: Sequence) -> tuple[int, ...]:
        """Coefficients of a dual-lattice vector ``x`` in the generators."""
        y = la.matvec(self.lattice.gram, x)
        if any(Fraction(t).denominator != 1 for t in y):
            raise LatticeError(f"{list(x)} is not in the dual lattice")
        y = [int(t) for t in y]
        return tuple(
            la.dot(row, y) % d for row, d in zip(self._coord_rows, self.invariant_factors)
        )

    def element(self, c: Sequence[int]) -> tuple[Fraction, ...]:
        n = self.lattice.rank
        v = [Fraction(0)] * n
        for ci, g in zip(c, self.generators):
            for k in range(n):
                v[k] += ci * g[k]
        return tuple(x - (x.numerator // x.denominator) for x in v)

    def reduce(self, c: Sequence[int]) -> tuple[int, ...]:
        return tuple(x % d for x, d in zip(c, self.invariant_factors))

    def add(self, a, b) -> tuple[int, ...]:
        return self.reduce([x + y for x, y in zip(a, b)])

    def q(self, c: Sequence[int]) -> Fraction:
        """Discriminant quadratic form, valued in Q/2Z (even lattices)."""
        if not self.lattice.is_even:
            raise LatticeError("q is defined only for even lattices")
        x = self.element(c)
        return _mod(pair(self.lattice, x, x), 2)

    def b(self, c1: Sequence[int], c2: Sequence[int]) -> Fraction:
        """Discriminant bilinear form, valued in Q/Z."""
        return _mod(pair(self.lattice, self.element(c1), self.element(c2)), 1)

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def element_order(self, c: Sequence[int]) -> int:
        from math import gcd, lcm

        o = 1
        for x, d in zip(c, self.invariant_factors):
            o = lcm(o, d // gcd(x, d))
        return o

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.invariant_factors)


def _mod(x, m) -> Fraction:
    x = Fraction(x)
    return x - m * ((x / m).numerator // (x / m).denominator)


def discriminant(L: IntegralLattice) -> DiscriminantGroup:
    """Discriminant group of a nondegenerate lattice via Smith form.

    With ``U G V = D`` the classes of ``V e_i / d_i`` (for ``d_i > 1``)
    generate ``L^*/L`` freely modulo ``d_i``.
    """
    L = lattice(L)
    if not L.is_nondegenerate:
        raise DegenerateLatticeError("discriminant group of a degenerate lattice")
    n = L.rank
    D, U, V = la.snf(L.gram)
    idx = [i for i in range(n) if D[i][i] > 1]
    factors = tuple(D[i][i] for i in idx)
    gens = []
    for i in idx:
        d = D[i][i]
        g = [Fraction(V[k][i], d) for k in range(n)]
        gens.append(tuple(x - (x.numerator // x.denominator) for x in g))
    gens = tuple(gens)
    b_vals = tuple(tuple(_mod(pair(L, x, y), 1) for y in gens) for x in gens)
    q_vals = tuple(_mod(pair(L, x, x), 2) for x in gens) if L.is_even else None
    return DiscriminantGroup(L, factors, gens, q_vals, b_vals, _tuplify(U[i] for i in idx))


@dataclass(frozen=True, eq=False)
class DiscriminantMap:
    """Homomorphism between discriminant groups, given on generators."""

    source: DiscriminantGroup
    target: DiscriminantGroup
    images: tuple[tuple[int, ...], ...]

    def __call__(self, c: Sequence[int]) -> tuple[int, ...]:
        out = [0] * len(self.target.invariant_factors)
        for ci, img in zip(c, self.images):
            for k, y in enumerate(img):
                out[k] += ci * y
        return self.target.reduce(out)

    def compose(self, other: "DiscriminantMap") -> "DiscriminantMap":
        """``self o other``."""
        return DiscriminantMap(other.source, self.target, tuple(self(img) for img in other.images))

    def same_as(self, other: "DiscriminantMap") -> bool:
        return self.images == other.images

    def is_identity(self) -> bool:
        return all(
            img == tuple(int(i == k) % d for k, d in enumerate(self.target.invariant_factors))
            for i, img in enumerate(self.images)
        )


def induced_disc_action(h: Isometry, source_disc=None, target_disc=None) -> DiscriminantMap:
    """Action of an isometry on discriminant groups, ``g -> M g``."""
    Ds = source_disc or discriminant(h.source)
    Dt = target_disc or discriminant(h.target)
    images = []
    for g in Ds.generators:
        images.append(Dt.coords(la.matvec(h.matrix, g)))
    return DiscriminantMap(Ds, Dt, tuple(images))


def disc_isomorphisms(D1: DiscriminantGroup, D2: DiscriminantGroup, sign: int = 1) -> Iterator[DiscriminantMap]:
    """All isomorphisms ``D1 -> D2`` scaling the forms by ``sign``.

    ``sign=-1`` enumerates anti-isometries. The quadratic form is matched
    when both lattices are even, otherwise only the bilinear form.
    """
    if D1.order != D2.order:
        return
    use_q = D1.q_values is not None and D2.q_values is not None
    k = len(D1.generators)
    elems = list(D2.elements())
    cand = []
    for i, d in enumerate(D1.invariant_factors):
        options = []
        for y in elems:
            if D2.element_order(y) != d:
                continue
            if use_q:
                if D2.q(y) != _mod(sign * D1.q_values[i], 2):
                    continue
            elif D2.b(y, y) != _mod(sign * D1.b_values[i][i], 1):
                continue
            options.append(y)
        cand.append(options)

    def extend(i, chosen):
        if i == k:
            yield tuple(chosen)
            return
        for y in cand[i]:
            if all(D2.b(y, chosen[j]) == _mod(sign * D1.b_values[i][j], 1) for j in range(i)):
                chosen.append(y)
                yield from extend(i + 1, chosen)
                chosen.pop()

    for imgs in extend(0, []):
        phi = DiscriminantMap(D1, D2, imgs)
        if len({phi(c) for c in D1.elements()}) == D1.order:
            yield phi


# ---------------------------------------------------------------------------
# Short vectors and isometry enumeration


def _canonical_sign(v: Sequence[int]) -> tuple[int, ...]:
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def _fincke_pohst(G, bound: int) -> list[tuple[int, ...]]:
    n = len(G)
    Q = la.to_fractions(G)
    for i in range(n):
        for j in range(i + 1, n):
            Q[j][i] = Q[i][j]
            Q[i][j] = Q[i][j] / Q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                Q[k][l] -= Q[k][i] * Q[i][l]
    out = []
    x = [0] * n

    def rec(i: int, budget: Fraction):
        c = -sum((Q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        t = budget / Q[i][i]
        s = isqrt(t.numerator // t.denominator) + 1
        lo = c.numerator // c.denominator - s
        hi = -((-c.numerator) // c.denominator) + s
        for xi in range(lo, hi + 1):
            used = Q[i][i] * (xi - c) ** 2
            if used > budget:
                continue
            x[i] = xi
            if i == 0:
                out.append(tuple(x))
            else:
                rec(i - 1, budget - used)
        x[i] = 0

    if n:
        rec(n - 1, Fraction(bound))
    return out


def short_vectors(L: IntegralLattice, bound: int) -> list[tuple[int, ...]]:
    """Nonzero ``v`` with ``(v, v) <= bound``, one per sign pair.

    Representatives have a positive leading nonzero coordinate and are
    sorted by norm, then by coordinates in decreasing order.
    """
    L = lattice(L)
    if not L.is_positive_definite:
        raise UnsupportedSignatureError("short_vectors requires a positive definite lattice")
    found = {_canonical_sign(v) for v in _fincke_pohst(L.gram, bound) if any(v)}
    return sorted(found, key=lambda v: (norm(L, v), tuple(-t for t in v)))


def _isometry_key(M) -> tuple:
    flat = tuple(x for row in M for x in row)
    dist = sum(abs(M[i][j] - (i == j)) for i in range(len(M)) for j in range(len(M)))
    return dist, tuple(-x for x in flat)


def isometries(L1: IntegralLattice, L2: IntegralLattice) -> list[Isometry]:
    """Every isometry ``L1 -> L2`` of definite lattices of equal rank.

    Backtracks column by column over vectors of ``L2`` whose norm matches
    the corresponding diagonal entry of ``G1``, pruning on the pairings
    with already placed columns. Sorted by distance to the identity
    matrix, so an identity witness comes first when there is one.
    """
    L1, L2 = lattice(L1), lattice(L2)
    if L1.rank != L2.rank:
        raise LatticeError("isometries requires lattices of equal rank")
    n = L1.rank
    if n == 0:
        return [Isometry(L1, L2, [])]
    sig1, sig2 = L1.signature, L2.signature
    for sig in (sig1, sig2):
        if sig not in ((n, 0, 0), (0, n, 0)):
            raise UnsupportedSignatureError(f"isometry enumeration needs definite lattices, got signature {sig}")
    if sig1 != sig2:
        return []
    G1 = L1.gram if sig1[0] == n else rescale(L1, -1).gram
    P2 = L2 if sig2[0] == n else rescale(L2, -1)
    G2 = P2.gram

    by_norm: dict[int, list[tuple[int, ...]]] = {}
    for v in short_vectors(P2, max(G1[i][i] for i in range(n))):
        nv = norm(P2, v)
        by_norm.setdefault(nv, []).extend([v, tuple(-t for t in v)])

    cols: list[tuple[int, ...]] = []
    images: list[list[int]] = []  # G2 @ col, cached
    found = []

    def rec(j: int):
        if j == n:
            found.append([[cols[k][i] for k in range(n)] for i in range(n)])
            return
        for w in by_norm.get(G1[j][j], ()):
            if all(la.dot(images[k], w) == G1[k][j] for k in range(j)):
                cols.append(w)
                images.append(la.matvec(G2, w))
                rec(j + 1)
                cols.pop()
                images.pop()

    rec(0)
    found.sort(key=_isometry_key)
    return [Isometry(L1, L2, M) for M in found]


def is_isometric(L1: IntegralLattice, L2: IntegralLattice) -> bool:
    return bool(isometries(L1, L2))


# ---------------------------------------------------------------------------
# Sublattices, quotients, overlattices


@dataclass(frozen=True, eq=False)
class Sublattice(IntegralLattice):
    """A lattice together with its basis rows in ambient coordinates."""

    basis: tuple[tuple, ...] = ()
    ambient: Optional[IntegralLattice] = field(default=None, compare=False, repr=False)


def orthogonal_complement(L: IntegralLattice, S: Sequence[Sequence[int]]) -> Sublattice:
    """Primitive sublattice ``{x : (x, s) = 0 for s in S}``, HNF basis."""
    L = lattice(L)
    for s in S:
        _check_vec(L, s)
    rows = [la.matvec(L.gram, s) for s in S]
    B = la.kernel_basis(rows, L.rank)
    gram = la.matmul(la.matmul(B, L.gram, L.rank), la.transpose(B, L.rank), L.rank) if B else []
    return Sublattice(gram, basis=_tuplify(B), ambient=L)


def divisibility(L: IntegralLattice, v: Sequence[int]) -> int:
    """``gcd{(v, x) : x in L}``."""
    return la.vector_gcd(la.matvec(lattice(L).gram, v))


def isotropic_quotient_lifts(L: IntegralLattice, v: Sequence[int]) -> list[list[int]]:
    """Lifts to ``v^perp`` of a canonical basis of ``v^perp / Z v``."""
    L = lattice(L)
    _check_vec(L, v)
    v = [int(x) for x in v]
    if not any(v):
        raise LatticeError("zero vector")
    if la.vector_gcd(v) != 1:
        raise LatticeError("vector is not primitive")
    if norm(L, v) != 0:
        raise LatticeError("vector is not isotropic")
    if not L.is_nondegenerate:
        raise DegenerateLatticeError("quotient requires a nondegenerate lattice")
    K = orthogonal_complement(L, [v])
    B = [list(r) for r in K.basis]
    k = len(B)
    c = la.solve(la.transpose(B, L.rank), v, k)
    assert c is not None, "v must lie in its own orthogonal complement"
    _, _, V = la.snf([c], k)
    W = la.inverse_unimodular(V)
    lifts = la.row_basis(la.matmul(W[1:], B, k), L.rank) if k > 1 else []
    p = next(i for i, x in enumerate(v) if x)
    for row in lifts:
        a = abs(v[p])
        q = (row[p] // a) * (1 if v[p] > 0 else -1)
        for i in range(len(row)):
            row[i] -= q * v[i]
    return lifts


def quotient_by_isotropic(L: IntegralLattice, v: Sequence[int]) -> IntegralLattice:
    """The lattice ``v^perp / Z v`` for a primitive isotropic ``v``.

    The induced form is well defined because ``v`` lies in the radical of
    the form restricted to ``v^perp``.
    """
    L = lattice(L)
    lifts = isotropic_quotient_lifts(L, v)
    if not lifts:
        return IntegralLattice([])
    n = L.rank
    return IntegralLattice(la.matmul(la.matmul(lifts, L.gram, n), la.transpose(lifts, n), n))


@dataclass(frozen=True)
class GlueData:
    """Glue between two lattices: pairs ``(x, y)`` of dual-lattice vectors.

    The span of the pairs should be the graph of an anti-isometry between
    subgroups of ``disc(left)`` and ``disc(right)``.
    """

    left: IntegralLattice
    right: IntegralLattice
    graph: tuple[tuple[tuple[Fraction, ...], tuple[Fraction, ...]], ...] = ()

    def __post_init__(self):
        g = tuple(
            (tuple(Fraction(t) for t in x), tuple(Fraction(t) for t in y)) for x, y in self.graph
        )
        object.__setattr__(self, "graph", g)

    @classmethod
    def from_map(cls, phi: DiscriminantMap, left, right) -> "GlueData":
        """Graph of a discriminant map ``disc(left) -> disc(right)``."""
        Dl, Dr = phi.source, phi.target
        pairs = []
        for i in range(len(Dl.generators)):
            e = tuple(int(i == k) for k in range(len(Dl.generators)))
            pairs.append((Dl.element(e), Dr.element(phi(e))))
        return cls(left, right, tuple(pairs))


@dataclass(frozen=True, eq=False)
class Overlattice(IntegralLattice):
    """Overlattice of ``left (+) right``; ``basis`` rows are rational
    vectors in direct-sum coordinates."""

    basis: tuple[tuple[Fraction, ...], ...] = ()
    glue_order: int = 1
    left_rank: int = 0


def _check_glue(g: GlueData) -> None:
    L1, L2 = g.left, g.right
    for x, y in g.graph:
        if len(x) != L1.rank or len(y) != L2.rank:
            raise GlueError("glue vector has wrong length")
        if not la.is_integral([la.matvec(L1.gram, x)]) or not la.is_integral([la.matvec(L2.gram, y)]):
            raise GlueError("glue vectors must lie in the dual lattices")
    if not g.graph:
        return
    D1, D2 = discriminant(L1), discriminant(L2)
    gens = [(D1.coords(x), D2.coords(y)) for x, y in g.graph]
    # enumerate the generated subgroup and check both projections are injective
    span = {(D1.zero(), D2.zero())}
    frontier = list(span)
    while frontier:
        a, b = frontier.pop()
        for ga, gb in gens:
            s = (D1.add(a, ga), D2.add(b, gb))
            if s not in span:
                span.add(s)
                frontier.append(s)
    for side in (0, 1):
        if len({p[side] for p in span}) != len(span):
            raise GlueError("glue subgroup is not the graph of an injective map")
    if L1.is_even and L2.is_even:
        for a, b in span:
            if (D1.q(a) + D2.q(b)) % 2:
                raise GlueError("glue subgroup is not isotropic for q_left + q_right")


def overlattice_from_glue(g: GlueData) -> Overlattice:
    """Lattice generated by ``left (+) right`` and the glue vectors."""
    _check_glue(g)
    L1, L2 = g.left, g.right
    n1, n2 = L1.rank, L2.rank
    n = n1 + n2
    G = la.block_diag(L1.gram, L2.gram)
    gens = [[Fraction(x) for x in row] for row in la.identity(n)]
    gens += [list(x) + list(y) for x, y in g.graph]
    den = la.common_denominator(gens)
    B_int = la.row_basis([[int(x * den) for x in row] for row in gens], n)
    basis = [[Fraction(x, den) for x in row] for row in B_int]
    index = den**n // abs(la.det(B_int)) if n else 1
    gram = la.matmul(la.matmul(basis, G, n), la.transpose(basis, n), n) if n else []
    if not la.is_integral(gram):
        raise NonIntegralGlueError("glue is not isotropic for the discriminant bilinear form")
    return Overlattice(
        [[int(x) for x in row] for row in gram],
        basis=_tuplify(basis),
        glue_order=index,
        left_rank=n1,
    )
