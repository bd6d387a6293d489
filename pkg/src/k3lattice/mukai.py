"""Mukai lattices, Mukai vectors and cohomological Fourier-Mukai actions.

Coordinates on ``H^*(S)`` are ordered ``(r, l, t, s)``: the ``H^0``
coefficient, the Neron-Severi part, the transcendental part and the
coefficient of the fundamental class ``w``.

Sign convention. The Mukai pairing is ``(u, u') = r s' + s r' - a.a'``
with ``a.a'`` the intersection form on ``H^2``. With this sign
``(v(E), v(F)) = chi(E, F)`` and the ``H^2`` blocks enter the Gram matrix
negated. Much of the literature uses the opposite global sign; convert by
negating every Gram matrix. The cup-product model used by
:func:`cohomological_transform` keeps the un-negated intersection form,
and :func:`vector_dual` carries the minus sign, so that
``<u^dual . u'>_top == mukai_pairing(u, u')``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import linalg as la
from .errors import DivisibilityError, LatticeError, UnnormalizableError
from .lattice import IntegralLattice, Isometry, lattice, norm, pair, quotient_by_isotropic, rescale

log = logging.getLogger(__name__)

Number = Union[int, Fraction]
_EMPTY = IntegralLattice([])


@dataclass(frozen=True)
class MukaiVector:
    r: Number
    l: tuple = ()
    s: Number = 0
    t: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "l", tuple(self.l))
        object.__setattr__(self, "t", tuple(self.t))

    def coords(self, tau: Optional[int] = None) -> list:
        """Flat coordinates ``[r, *l, *t, s]``, padding ``t`` to ``tau``."""
        t = list(self.t)
        if tau is not None:
            if t and len(t) != tau:
                raise LatticeError(f"transcendental part has length {len(t)}, expected {tau}")
            t = t or [0] * tau
        return [self.r, *self.l, *t, self.s]

    @classmethod
    def from_coords(cls, x: Sequence, rho: int) -> "MukaiVector":
        x = [_norm_number(c) for c in x]
        t = tuple(x[1 + rho : -1])
        if not any(t):
            t = ()
        return cls(x[0], tuple(x[1 : 1 + rho]), x[-1], t)

    @property
    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.coords())


def _norm_number(c):
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


@dataclass(frozen=True)
class SheafData:
    """Rank, first Chern class (NS coordinates) and second Chern number."""

    r: int
    c1: tuple
    c2: int

    def __post_init__(self):
        object.__setattr__(self, "c1", tuple(self.c1))
        if self.r < 0:
            raise LatticeError("rank must be nonnegative")


@dataclass(frozen=True)
class MukaiLattice:
    """``H^*(S, Z)`` with the Mukai pairing, built from NS and T Grams."""

    ns: IntegralLattice
    t: IntegralLattice = _EMPTY

    def __post_init__(self):
        object.__setattr__(self, "ns", lattice(self.ns))
        object.__setattr__(self, "t", lattice(self.t) if self.t is not None else _EMPTY)

    @property
    def rho(self) -> int:
        return self.ns.rank

    @property
    def tau(self) -> int:
        return self.t.rank

    @property
    def rank(self) -> int:
        return self.rho + self.tau + 2

    def degrees(self) -> list[int]:
        """Cohomological degree / 2 of each basis vector."""
        return [0] + [1] * (self.rho + self.tau) + [2]

    def intersection_form(self) -> list[list[int]]:
        """Top-degree pairing ``<x . y>_top`` of the cup-product model."""
        n = self.rank
        J = la.zeros(n, n)
        J[0][n - 1] = J[n - 1][0] = 1
        mid = la.block_diag(self.ns.gram, self.t.gram)
        for i, row in enumerate(mid):
            for j, x in enumerate(row):
                J[1 + i][1 + j] = x
        return J

    def gram(self) -> list[list[int]]:
        J = self.intersection_form()
        for i in range(1, self.rank - 1):
            for j in range(1, self.rank - 1):
                J[i][j] = -J[i][j]
        return J

    @property
    def lattice(self) -> IntegralLattice:
        return IntegralLattice(self.gram())

    def algebraic(self) -> "MukaiLattice":
        """The sublattice ``U (+) -NS`` spanned by ``(1,0,0)``, NS, ``(0,0,1)``."""
        return MukaiLattice(self.ns)

    def coords(self, u: MukaiVector) -> list:
        if len(u.l) != self.rho:
            raise LatticeError(f"NS part has length {len(u.l)}, expected {self.rho}")
        return u.coords(self.tau)

    def vector(self, x: Sequence) -> MukaiVector:
        return MukaiVector.from_coords(x, self.rho)


def _ns(ns) -> IntegralLattice:
    return lattice(ns)


def chern_character(d: SheafData, ns) -> tuple:
    """``(r, c1, c1^2/2 - c2)``."""
    ns = _ns(ns)
    if len(d.c1) != ns.rank:
        raise LatticeError(f"c1 has length {len(d.c1)}, expected {ns.rank}")
    return d.r, d.c1, _norm_number(Fraction(norm(ns, d.c1), 2) - d.c2)


def mukai_vector(d: SheafData, ns) -> MukaiVector:
    """``v(E) = ch(E) (1 + w) = (r, c1, r + c1^2/2 - c2)``."""
    ns = _ns(ns)
    if not ns.is_even:
        raise LatticeError("Neron-Severi lattice must be even")
    r, c1, ch2 = chern_character(d, ns)
    return MukaiVector(r, c1, r + ch2)


def mukai_pairing(u: MukaiVector, v: MukaiVector, ns, t=None) -> Number:
    ns = _ns(ns)
    t = _ns(t) if t is not None else _EMPTY
    for x in (u, v):
        if len(x.l) != ns.rank:
            raise LatticeError("NS part does not match the NS rank")
        if x.t and len(x.t) != t.rank:
            raise LatticeError("transcendental part does not match the T rank")
    value = u.r * v.s + u.s * v.r - pair(ns, u.l, v.l)
    if u.t and v.t:
        value -= pair(t, u.t, v.t)
    return _norm_number(value)


def euler_characteristic(u: MukaiVector, v: MukaiVector, ns, t=None) -> Number:
    """``chi(E, F)`` for ``u = v(E)``, ``v = v(F)``; equals the Mukai pairing."""
    return mukai_pairing(u, v, ns, t)


# ---------------------------------------------------------------------------
# Twists and swap


def twist(m: Sequence[int], M: MukaiLattice) -> Isometry:
    """Multiplication by ``exp(m)``:
    ``(r, l, t, s) -> (r, l + r m, t, s + (m, l) + r m^2 / 2)``."""
    if len(m) != M.rho:
        raise LatticeError("twist vector must lie in NS")
    n, rho = M.rank, M.rho
    m = [int(x) for x in m]
    mm = norm(M.ns, m)
    ml = la.matvec(M.ns.gram, m)
    A = la.identity(n)
    for i in range(rho):
        A[1 + i][0] = m[i]
        A[n - 1][1 + i] = ml[i]
    A[n - 1][0] = mm // 2
    L = M.lattice
    return Isometry(L, L, A)


def swap(M: MukaiLattice) -> Isometry:
    """``(r, l, t, s) -> (s, l, t, r)``."""
    n = M.rank
    A = la.identity(n)
    A[0][0] = A[n - 1][n - 1] = 0
    A[0][n - 1] = A[n - 1][0] = 1
    L = M.lattice
    return Isometry(L, L, A)


@dataclass(frozen=True)
class RankNormalization:
    isometry: Isometry
    vector: MukaiVector
    steps: tuple = ()
    warning: Optional[str] = None


def normalize_rank(v: MukaiVector, M: MukaiLattice) -> RankNormalization:
    """Move ``v`` by twists and swaps to a vector with ``r > 1``.

    Strategy: keep ``v`` if ``r > 1``; swap if ``s > 1``; otherwise take
    the first NS basis direction ``e`` with ``(e, l) != 0`` and the first
    multiple ``k e`` (``k = 1, -1, 2, -2, ...``) for which the twisted
    ``s`` exceeds 1, then swap. Vectors with ``l = 0`` cannot be moved
    this way and raise :class:`UnnormalizableError`; so does any vector
    for which the bounded search fails, except that a vector already of
    rank 1 is returned unchanged with a warning.
    """
    L = M.lattice
    x = M.coords(v)
    if not any(x) or la.vector_gcd(x) != 1:
        raise LatticeError("normalize_rank needs a primitive nonzero vector")
    ident = Isometry.identity(L)
    r, s = v.r, v.s
    if r > 1:
        return RankNormalization(ident, v)
    if s > 1:
        g = swap(M)
        return RankNormalization(g, M.vector(g(x)), ("swap",))
    if not any(v.l):
        raise UnnormalizableError(f"{v} has l = 0; twists cannot change s (point-vector orbit)")
    lam = la.matvec(M.ns.gram, v.l)
    bound = abs(s) + 4
    for i in range(M.rho):
        if lam[i] == 0:
            continue
        e2 = M.ns.gram[i][i]
        if r == 0:
            # s + k*lam > 1 is linear in k: take the smallest admissible |k|
            k = (2 - s + abs(lam[i]) - 1) // abs(lam[i])
            ks = [max(k, 1) * (1 if lam[i] > 0 else -1)]
        else:
            ks = [sgn * k for k in range(1, bound + 1) for sgn in (1, -1)]
        for k in ks:
            if s + k * lam[i] + r * k * k * e2 // 2 > 1:
                m = [k * int(j == i) for j in range(M.rho)]
                g = swap(M).compose(twist(m, M))
                return RankNormalization(g, M.vector(g(x)), (("twist", tuple(m)), "swap"))
    if r == 1:
        log.warning("normalize_rank: %s kept at rank 1", v)
        return RankNormalization(ident, v, (), "rank 1: r > 1 not reached")
    raise UnnormalizableError(f"no single twist moves {v} to r > 1")


def companion(v: MukaiVector, M: MukaiLattice, full: bool = False) -> MukaiVector:
    """A vector ``u`` with ``(v, u) = 1``.

    Searched in the algebraic Mukai lattice unless ``full``. Raises
    :class:`DivisibilityError` when the pairing functional of ``v`` has
    gcd > 1 there.
    """
    amb = M if full else M.algebraic()
    if not full and any(v.t):
        raise LatticeError("vector has a transcendental part; use full=True")
    x = amb.coords(MukaiVector(v.r, v.l, v.s, v.t if full else ()))
    if la.vector_gcd(x) != 1:
        raise LatticeError("vector is not primitive")
    c = la.matvec(amb.gram(), x)
    g, coeffs = 0, [0] * len(c)
    for i, ci in enumerate(c):
        g, a, b = la.xgcd(g, ci)
        coeffs = [a * y for y in coeffs]
        coeffs[i] = b
    if g != 1:
        raise DivisibilityError(g)
    return amb.vector(coeffs)


@dataclass(frozen=True)
class PartnerData:
    """Lattice data of the moduli space ``M(v)``."""

    ns_gram: tuple
    t_gram: tuple
    fine: bool
    raw_quotient: tuple = field(default=(), compare=False)

    def to_surface(self, name: str = "partner"):
        from .k3 import K3SurfaceData

        return K3SurfaceData(name, self.ns_gram, self.t_gram or None)


def moduli_partner(S, v: MukaiVector) -> PartnerData:
    """NS and T lattices of the moduli space of sheaves with vector ``v``.

    ``S`` is anything with ``ns_gram`` and ``t_gram`` attributes. The NS
    of the partner is ``(v^perp in U (+) -NS) / Z v`` negated back to the
    positive NS convention; the transcendental lattice is carried over.
    """
    ns = lattice(S.ns_gram)
    t_gram = tuple(tuple(row) for row in (S.t_gram or ()))
    if any(v.t):
        raise LatticeError("moduli_partner needs an algebraic Mukai vector")
    M = MukaiLattice(ns)
    x = M.coords(MukaiVector(v.r, v.l, v.s))
    if x == [0] * (M.rank - 1) + [1]:
        return PartnerData(ns.gram, t_gram, True, rescale(ns, -1).gram if ns.rank else ())
    if v.r < 1:
        raise LatticeError("moduli_partner needs r >= 1; run normalize_rank first")
    Q = quotient_by_isotropic(M.lattice, x)
    ns_new = rescale(Q, -1).gram if Q.rank else ()
    try:
        companion(v, M)
        fine = True
    except DivisibilityError:
        fine = False
    return PartnerData(ns_new, t_gram, fine, Q.gram)


# ---------------------------------------------------------------------------
# Kunneth classes and cohomological transforms


@dataclass(frozen=True)
class KunnethClass:
    """A class on ``S1 x S2`` as a coefficient matrix: entry ``(i, j)`` is
    the coefficient of ``a_i (x) b_j`` for model bases ``a`` of ``H^*(S1)``
    and ``b`` of ``H^*(S2)``."""

    source: MukaiLattice
    target: MukaiLattice
    matrix: tuple

    def __post_init__(self):
        Z = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        if len(Z) != self.source.rank or any(len(row) != self.target.rank for row in Z):
            raise LatticeError("Kunneth matrix shape does not match the surfaces")
        object.__setattr__(self, "matrix", Z)

    @classmethod
    def diagonal(cls, M: MukaiLattice) -> "KunnethClass":
        """``sum e_i (x) e^i`` with ``e^i`` Poincare dual to ``e_i``."""
        return cls(M, M, la.rat_inverse(M.intersection_form()))

    @classmethod
    def tensor(cls, a: Sequence, b: Sequence, M1: MukaiLattice, M2: MukaiLattice) -> "KunnethClass":
        return cls(M1, M2, [[x * y for y in b] for x in a])


def dual_class(Z: KunnethClass) -> KunnethClass:
    """Sign ``(-1)^(i+j)`` on the ``H^2i (x) H^2j`` block."""
    d1, d2 = Z.source.degrees(), Z.target.degrees()
    return KunnethClass(
        Z.source,
        Z.target,
        [[x if (d1[i] + d2[j]) % 2 == 0 else -x for j, x in enumerate(row)] for i, row in enumerate(Z.matrix)],
    )


def transform_matrix(Z: KunnethClass, backward: bool = False) -> list[list[Fraction]]:
    """Matrix of ``b -> pi_*(Z . p^* b)`` (``S1 -> S2``), or with
    ``backward`` of ``a -> p_*(Z . pi^* a)`` (``S2 -> S1``)."""
    if backward:
        return la.matmul(Z.matrix, Z.target.intersection_form())
    return la.matmul(la.transpose(Z.matrix), Z.source.intersection_form())


def cohomological_transform(Z: KunnethClass, beta: MukaiVector, validated: bool = False, backward: bool = False) -> MukaiVector:
    """``f_Z(beta) = sum_k <a_k . beta>_top b_k``.

    Output coordinates may be rational; ``validated`` requires them to be
    integral.
    """
    src, dst = (Z.target, Z.source) if backward else (Z.source, Z.target)
    y = la.matvec(transform_matrix(Z, backward), src.coords(beta))
    out = dst.vector(y)
    if validated and not out.is_integral:
        raise LatticeError(f"transform of {beta} is not integral")
    return out


def vector_dual(u: MukaiVector) -> MukaiVector:
    return MukaiVector(u.r, tuple(-x for x in u.l), u.s, tuple(-x for x in u.t))


def top_cup(u: MukaiVector, v: MukaiVector, M: MukaiLattice) -> Number:
    """``<u . v>_top`` in the cup-product model of ``H^*(S)``."""
    return _norm_number(la.dot(M.coords(u), la.matvec(M.intersection_form(), M.coords(v))))
