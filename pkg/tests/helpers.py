"""Shared fixture builders for the test modules."""

import itertools
import random

from k3lattice.k3 import K3SurfaceData
from k3lattice.lattice import IntegralLattice, disc_isomorphisms, discriminant, rescale


def toy(name, t, orientation=None):
    """NS = T(-1): the smallest data with matching discriminants."""
    T = IntegralLattice(t)
    if orientation is None:
        orientation = tuple(range(T.rank))
    return K3SurfaceData(name, rescale(T, -1).gram, T.gram, orientation)


def subgroup_order(D, gens):
    seen = {D.zero()}
    frontier = [D.zero()]
    while frontier:
        a = frontier.pop()
        for g in gens:
            s = D.add(a, g)
            if s not in seen:
                seen.add(s)
                frontier.append(s)
    return len(seen)


def random_glues(count, seed=7):
    """``(L1, L2, pairs, disc(L1))`` with ``L2 = L1(-1)`` glued along a
    random anti-isometry, or a cyclic subgroup of its graph."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a, c = rng.randint(1, 4), rng.randint(1, 4)
        b = rng.randint(-3, 3)
        if 4 * a * c - b * b <= 0:
            continue
        L1 = IntegralLattice([[2 * a, b], [b, 2 * c]]) if rng.random() < 0.6 else IntegralLattice([[2 * a]])
        L2 = rescale(L1, -1)
        D1, D2 = discriminant(L1), discriminant(L2)
        if D1.order > 40:
            continue
        phis = list(itertools.islice(disc_isomorphisms(D1, D2, sign=-1), 4))
        if not phis:
            continue
        phi = rng.choice(phis)
        k = len(D1.invariant_factors)
        if rng.random() < 0.5:
            c0 = tuple(rng.randrange(d) for d in D1.invariant_factors)
            pairs = [(D1.element(c0), D2.element(phi(c0)))]
        else:
            basis = [tuple(int(i == j) for j in range(k)) for i in range(k)]
            pairs = [(D1.element(e), D2.element(phi(e))) for e in basis]
        out.append((L1, L2, pairs, D1))
    return out
