"""K3 surface lattice data, the Hodge-isometry decision, and extension of
transcendental isometries to Mukai lattices by discriminant gluing.

Hodge model. For positive definite transcendental lattices (the singular
K3 regime) the period line is replaced by an orientation of ``T``: in
``"oriented"`` mode only isometries of determinant +1 relative to the two
orientation tags count, in ``"any"`` mode every lattice isometry does.
Indefinite ``T`` is refused rather than guessed.

Glue model. Inside the Mukai lattice (sign convention of
:mod:`k3lattice.mukai`) the transcendental sublattice is ``T(-1)`` and its
complement is the algebraic Mukai lattice ``A = U (+) NS(-1)``. Each
surface is glued along the first anti-isometry ``disc(T(-1)) -> disc(A)``
in enumeration order, which makes the overlattice unimodular.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import linalg as la
from .errors import GlueError, LatticeError, SearchExhaustedError, UnsupportedSignatureError
from .lattice import (
    DiscriminantGroup,
    DiscriminantMap,
    GlueData,
    IntegralLattice,
    Isometry,
    Overlattice,
    direct_sum,
    disc_isomorphisms,
    discriminant,
    e8_minus,
    hyperbolic_U,
    induced_disc_action,
    isometries,
    overlattice_from_glue,
    rescale,
)
from .mukai import MukaiLattice, swap, twist

MODES = ("any", "oriented")
K3_H2_RANK = 22


def _gram_tuple(G):
    if G is None:
        return None
    return IntegralLattice(G).gram


def _perm_sign(p: Sequence[int]) -> int:
    p = list(p)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


@dataclass(frozen=True)
class K3SurfaceData:
    name: str
    ns_gram: tuple
    t_gram: Optional[tuple] = None
    orientation: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "ns_gram", _gram_tuple(self.ns_gram))
        object.__setattr__(self, "t_gram", _gram_tuple(self.t_gram))
        if self.orientation is not None:
            object.__setattr__(self, "orientation", tuple(int(i) for i in self.orientation))

    @property
    def ns(self) -> IntegralLattice:
        return IntegralLattice(self.ns_gram)

    @property
    def t(self) -> Optional[IntegralLattice]:
        return IntegralLattice(self.t_gram) if self.t_gram is not None else None

    @property
    def rho(self) -> int:
        return len(self.ns_gram)

    @property
    def mukai_lattice(self) -> MukaiLattice:
        return MukaiLattice(self.ns, self.t)

    def orientation_sign(self) -> int:
        if self.orientation is None:
            raise LatticeError(f"surface {self.name!r} has no orientation tag")
        return _perm_sign(self.orientation)


def singular_k3(name: str, t_gram, orientation=(0, 1)) -> K3SurfaceData:
    """Full lattice data with ``NS = U (+) E8(-1)^2 (+) T(-1)``.

    For a positive definite even ``T`` of rank 2 this is the lattice
    data of a singular K3 surface with transcendental lattice ``T``.
    """
    T = IntegralLattice(t_gram)
    ns = direct_sum(hyperbolic_U(), e8_minus(), e8_minus(), rescale(T, -1))
    return K3SurfaceData(name, ns.gram, T.gram, orientation)


@dataclass
class ValidationReport:
    mode: str
    violations: list = field(default_factory=list)
    decision_supported: bool = False
    t_signature: Optional[tuple] = None

    @property
    def valid(self) -> bool:
        return not self.violations


def validate_surface(S: K3SurfaceData) -> ValidationReport:
    """Necessary conditions coming from unimodularity of ``H^2``.

    Rank budget and determinant mismatches are reported but do not block
    decision operations, so toy data with small NS can still be used;
    only the transcendental lattice has to be even and positive definite.
    """
    full = S.t_gram is not None
    rep = ValidationReport("full" if full else "algebraic-only")
    ns = S.ns
    if not ns.is_even:
        rep.violations.append("NS is not even")
    if ns.rank and ns.signature != (1, ns.rank - 1, 0):
        rep.violations.append(f"NS signature {ns.signature[:2]} is not (1, rho-1)")
    if not full:
        return rep
    T = S.t
    sig = T.signature
    rep.t_signature = sig
    if not T.is_even:
        rep.violations.append("T is not even")
    if ns.rank + T.rank != K3_H2_RANK:
        rep.violations.append(f"rank NS + rank T = {ns.rank + T.rank}, expected {K3_H2_RANK}")
    if abs(ns.det) != abs(T.det):
        rep.violations.append(f"|det NS| = {abs(ns.det)} differs from |det T| = {abs(T.det)}")
    if sig != (T.rank, 0, 0):
        rep.violations.append(f"T signature {sig} unsupported for decision ops")
    if S.orientation is not None and sorted(S.orientation) != list(range(T.rank)):
        rep.violations.append("orientation is not a permutation of the T basis")
    rep.decision_supported = (
        T.is_even
        and T.rank > 0
        and sig == (T.rank, 0, 0)
        and (S.orientation is None or sorted(S.orientation) == list(range(T.rank)))
    )
    return rep


def _require_supported(S: K3SurfaceData) -> None:
    if S.t_gram is None:
        raise LatticeError(f"surface {S.name!r} has no transcendental lattice")
    rep = validate_surface(S)
    if not rep.decision_supported:
        if rep.t_signature != (S.t.rank, 0, 0):
            raise UnsupportedSignatureError(
                f"surface {S.name!r}: transcendental signature {rep.t_signature} is not positive definite"
            )
        raise LatticeError(f"surface {S.name!r} is not decision-supported: {rep.violations}")


# ---------------------------------------------------------------------------
# Decision


@dataclass(frozen=True)
class HodgeIsometry:
    iso: Isometry
    oriented: bool

    @property
    def matrix(self):
        return self.iso.matrix


@dataclass(frozen=True)
class EquivalenceDecision:
    equivalent: bool
    witness: Optional[HodgeIsometry]
    mode: str


def hodge_isometries(S1: K3SurfaceData, S2: K3SurfaceData, mode: str = "any") -> list[HodgeIsometry]:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    _require_supported(S1)
    _require_supported(S2)
    if mode == "oriented":
        sign = S1.orientation_sign() * S2.orientation_sign()
    else:
        sign = (S1.orientation_sign() if S1.orientation else 1) * (
            S2.orientation_sign() if S2.orientation else 1
        )
    T1, T2 = S1.t, S2.t
    if T1.rank != T2.rank:
        return []
    out = []
    for f in isometries(T1, T2):
        oriented = f.det * sign == 1
        if mode == "any" or oriented:
            out.append(HodgeIsometry(f, oriented))
    return out


def derived_equivalent(S1: K3SurfaceData, S2: K3SurfaceData, mode: str = "any") -> EquivalenceDecision:
    """Derived equivalence holds iff the transcendental lattices are Hodge
    isometric; the first isometry in canonical order is the witness."""
    found = hodge_isometries(S1, S2, mode)
    return EquivalenceDecision(bool(found), found[0] if found else None, mode)


@dataclass(frozen=True)
class Screening:
    candidate: K3SurfaceData
    decision: Optional[EquivalenceDecision] = None
    error: Optional[str] = None


def screen_candidates(S: K3SurfaceData, candidates: Sequence[K3SurfaceData], mode: str = "any") -> list[Screening]:
    """Per-candidate decisions; failures are recorded, not raised."""
    out = []
    for C in candidates:
        try:
            out.append(Screening(C, derived_equivalent(S, C, mode)))
        except LatticeError as exc:
            out.append(Screening(C, error=f"{type(exc).__name__}: {exc}"))
    return out


def fm_partner_filter(S: K3SurfaceData, candidates: Sequence[K3SurfaceData], mode: str = "any") -> list[K3SurfaceData]:
    return [s.candidate for s in screen_candidates(S, candidates, mode) if s.decision and s.decision.equivalent]


# ---------------------------------------------------------------------------
# Gluing T(-1) and the algebraic Mukai lattice


@dataclass(frozen=True, eq=False)
class MukaiGlue:
    t_lattice: IntegralLattice  # T(-1)
    algebraic: IntegralLattice  # U (+) NS(-1)
    t_disc: DiscriminantGroup
    a_disc: DiscriminantGroup
    gamma: DiscriminantMap  # anti-isometry disc(T(-1)) -> disc(A)
    overlattice: Overlattice


@functools.lru_cache(maxsize=64)
def mukai_glue(S: K3SurfaceData) -> MukaiGlue:
    if S.t_gram is None:
        raise GlueError(f"surface {S.name!r} has no transcendental lattice to glue")
    Tm = rescale(S.t, -1)
    A = MukaiLattice(S.ns).lattice
    DT, DA = discriminant(Tm), discriminant(A)
    gamma = next(disc_isomorphisms(DT, DA, sign=-1), None)
    if gamma is None:
        raise GlueError(f"surface {S.name!r}: disc(T) and disc(NS) admit no anti-isometry")
    H = overlattice_from_glue(GlueData.from_map(gamma, Tm, A))
    return MukaiGlue(Tm, A, DT, DA, gamma, H)


def _t_isometry(g: HodgeIsometry, G1: MukaiGlue, G2: MukaiGlue) -> Isometry:
    # an isometry T1 -> T2 is the same matrix on T1(-1) -> T2(-1)
    return Isometry(G1.t_lattice, G2.t_lattice, g.iso.matrix)


def _check_h(h: Isometry, G1: MukaiGlue, G2: MukaiGlue) -> None:
    if h.source != G1.algebraic or h.target != G2.algebraic:
        raise GlueError("h must map U (+) NS1(-1) to U (+) NS2(-1)")


def check_glue_compatible(g: HodgeIsometry, h: Isometry, S1: K3SurfaceData, S2: K3SurfaceData) -> bool:
    """True iff ``h_bar o gamma_1 == gamma_2 o g_bar`` on ``disc(T1(-1))``."""
    G1, G2 = mukai_glue(S1), mukai_glue(S2)
    _check_h(h, G1, G2)
    g_bar = induced_disc_action(_t_isometry(g, G1, G2), G1.t_disc, G2.t_disc)
    h_bar = induced_disc_action(h, G1.a_disc, G2.a_disc)
    return h_bar.compose(G1.gamma).same_as(G2.gamma.compose(g_bar))


@dataclass(frozen=True)
class AssembledIsometry:
    """Isometry of glued Mukai lattices built from ``g`` on T and ``h`` on A."""

    isometry: Isometry
    t_rank: int
    source_basis: tuple = field(repr=False)
    target_basis: tuple = field(repr=False)

    def block_matrix(self):
        """The isometry in direct-sum coordinates ``T(-1) (+) A``."""
        B1t = la.transpose(self.source_basis)
        B2t = la.transpose(self.target_basis)
        M = la.matmul(la.matmul(B2t, self.isometry.matrix), la.rat_inverse(B1t))
        return [[int(x) if x.denominator == 1 else x for x in row] for row in M]

    def t_block(self):
        k = self.t_rank
        return [row[:k] for row in self.block_matrix()[:k]]


def assemble_mukai_isometry(g: HodgeIsometry, h: Isometry, S1: K3SurfaceData, S2: K3SurfaceData) -> AssembledIsometry:
    if not check_glue_compatible(g, h, S1, S2):
        raise GlueError("g and h induce incompatible actions on the glue")
    G1, G2 = mukai_glue(S1), mukai_glue(S2)
    Phi = la.block_diag(g.iso.matrix, h.matrix)
    B1, B2 = G1.overlattice.basis, G2.overlattice.basis
    M = la.matmul(la.matmul(la.rat_inverse(la.transpose(B2)), Phi), la.transpose(B1))
    if not la.is_integral(M):
        raise AssertionError("assembled matrix is not integral")
    iso = Isometry(G1.overlattice, G2.overlattice, M)
    return AssembledIsometry(iso, G1.t_lattice.rank, B1, B2)


def _split_trailing_block(G1, G2, max_rank: int = 4) -> Optional[int]:
    """Smallest trailing block size ``m`` such that both Grams are the same
    leading block orthogonally summed with a definite trailing block."""
    n = len(G1)
    for m in range(1, min(max_rank, n) + 1):
        k = n - m
        if any(G1[i][j] != G2[i][j] for i in range(k) for j in range(k)):
            return None
        if any(G[i][j] for G in (G1, G2) for i in range(k) for j in range(k, n)):
            continue
        tails = [IntegralLattice([row[k:] for row in G[k:]]) for G in (G1, G2)]
        if all(t.signature in ((m, 0, 0), (0, m, 0)) for t in tails):
            return m
    return None


def _lifted_ns_isometries(S1: K3SurfaceData, S2: K3SurfaceData) -> list[Isometry]:
    """Seeds ``A1 -> A2``: the identity when NS agree, lifts of all NS
    isometries when NS is definite, otherwise lifts of isometries of a
    small definite trailing block (as in :func:`singular_k3` data)."""
    A1, A2 = MukaiLattice(S1.ns).lattice, MukaiLattice(S2.ns).lattice
    if S1.ns.rank != S2.ns.rank:
        return []
    out = [Isometry.identity(A1)] if S1.ns == S2.ns else []
    try:
        ns_maps = [f.matrix for f in isometries(S1.ns, S2.ns)]
    except UnsupportedSignatureError:
        ns_maps = []
        m = _split_trailing_block(S1.ns_gram, S2.ns_gram)
        if m is not None:
            k = S1.rho - m
            tails = [IntegralLattice([row[k:] for row in G[k:]]) for G in (S1.ns_gram, S2.ns_gram)]
            ns_maps = [la.block_diag(la.identity(k), f.matrix) for f in isometries(*tails)]
    for F in ns_maps:
        iso = Isometry(A1, A2, la.block_diag([[1]], F, [[1]]))
        if iso not in out:
            out.append(iso)
    return out


def search_extension(g: HodgeIsometry, S1: K3SurfaceData, S2: K3SurfaceData, depth: int = 2) -> Isometry:
    """Breadth-first search for ``h`` compatible with ``g``.

    Words of length ``<= depth`` in twists by +-(NS basis vectors), the
    swap, ``-1`` and lifted NS automorphisms (definite NS only), applied
    after a seed isometry ``A1 -> A2``. Exhausting the bound raises
    :class:`SearchExhaustedError`, which says nothing about existence.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    _require_supported(S1)
    _require_supported(S2)
    M2 = MukaiLattice(S2.ns)
    A2 = M2.lattice
    seeds = _lifted_ns_isometries(S1, S2)
    if not seeds:
        raise SearchExhaustedError("no seed isometry between the algebraic Mukai lattices")
    gens = []
    for i in range(M2.rho):
        for k in (1, -1):
            gens.append(twist([k * int(j == i) for j in range(M2.rho)], M2))
    gens.append(swap(M2))
    gens.append(Isometry.minus_identity(A2))
    try:
        for f in isometries(S2.ns, S2.ns):
            gens.append(Isometry(A2, A2, la.block_diag([[1]], f.matrix, [[1]])))
    except UnsupportedSignatureError:
        pass

    seen = set()
    level = []
    for h in seeds:
        if h.matrix not in seen:
            seen.add(h.matrix)
            level.append(h)
    for d in range(depth + 1):
        for h in level:
            if check_glue_compatible(g, h, S1, S2):
                return h
        if d == depth:
            break
        nxt = []
        for h in level:
            for a in gens:
                w = a.compose(h)
                if w.matrix not in seen:
                    seen.add(w.matrix)
                    nxt.append(w)
        level = nxt
    raise SearchExhaustedError(f"no compatible extension within depth {depth}")
