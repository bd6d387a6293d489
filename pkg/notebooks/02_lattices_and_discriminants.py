# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Lattices, isometries and discriminant forms

# %%
from fractions import Fraction

from k3lattice.lattice import (
    GlueData,
    IntegralLattice,
    Isometry,
    direct_sum,
    discriminant,
    hyperbolic_U,
    induced_disc_action,
    isometries,
    overlattice_from_glue,
    quotient_by_isotropic,
    rescale,
    short_vectors,
)

A = IntegralLattice([[2, 0], [0, 12]])
B = IntegralLattice([[4, 0], [0, 6]])
print("dets:", A.det, B.det)
print("discriminant factors:", discriminant(A).invariant_factors, discriminant(B).invariant_factors)

# %% [markdown]
# Same determinant, isomorphic discriminant groups, yet not isometric:
# the minimal norms already differ.

# %%
print(short_vectors(A, 4), short_vectors(B, 4))
print("isometries A -> B:", isometries(A, B))

# %%
C = IntegralLattice([[2, 1], [1, 2]])
for f in isometries(C, C)[:4]:
    print(f.matrix, "det", f.det)
print(len(isometries(C, C)), "automorphisms in total")

# %% [markdown]
# Discriminant actions. On `<6>` the map `-1` acts as `x -> -x`.

# %%
L6 = IntegralLattice([[6]])
act = induced_disc_action(Isometry.minus_identity(L6))
print(act((1,)), act.is_identity())

# %% [markdown]
# Quotient by an isotropic vector and gluing back.

# %%
L = direct_sum(hyperbolic_U(), IntegralLattice([[-2]]))
print(quotient_by_isotropic(L, [1, 0, 0]))

two = IntegralLattice([[2]])
O = overlattice_from_glue(GlueData(two, rescale(two, -1), [((Fraction(1, 2),), (Fraction(1, 2),))]))
print(O, "det", O.det, "glue order", O.glue_order)
