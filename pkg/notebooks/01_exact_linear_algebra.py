# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Exact integer linear algebra
#
# Everything in `k3lattice` runs on Python integers and fractions, so the
# normal forms below are exact for any size of entry.

# %%
from k3lattice import linalg as la

M = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
D, U, V = la.snf(M)
print("D =", D)
print("U M V == D:", la.matmul(la.matmul(U, M), V) == D)
print("invariant factors:", la.invariant_factors(M))

# %% [markdown]
# Hermite form of the row space, and a saturated kernel basis.

# %%
H, _ = la.hnf([[2, 4], [1, 2]])
print("HNF:", H)
print("kernel of [[2, 4]]:", la.kernel_basis([[2, 4]]))

# %%
# 2x = 3 has no integer solution, even though it has a rational one
print(la.solve([[2]], [3]), la.rat_solve([[2]], [3]))

# %%
print("signature of U:", la.signature([[0, 1], [1, 0]]))
