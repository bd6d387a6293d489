# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # n-Koszulity of graded algebras
#
# `B_m = ker(B_{m-1} (x) A_1 -> B_{m-2} (x) A_2)` and exactness of
# `B_n (x) A -> ... -> A -> k -> 0` is checked degree by degree.

# %%
from k3lattice.koszul import b_modules, is_n_koszul, polynomial_algebra, relations, veronese_algebra

kxy = polynomial_algebra(2, 6)
print("relations of k[x,y]:", relations(kxy))
print("dim B_m:", b_modules(kxy, 3).b_dims)
print(is_n_koszul(kxy, 3, 6))

# %%
kx3 = polynomial_algebra(1, 3, nilpotency=3)
rep = is_n_koszul(kx3, 2, 3)
print(rep.koszul, rep.first_failure.label, "degree", rep.first_failure.degree)

# %%
ver = veronese_algebra(2, 2, 4)
print("Veronese dims", ver.dims, "relations", len(relations(ver)))
print(is_n_koszul(ver, 3, 4).koszul)
