# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Deciding derived equivalence from transcendental lattices
#
# `singular_k3` builds full rank-22 lattice data with a given rank-2
# transcendental lattice.

# %%
from k3lattice import derived_equivalent, fm_partner_filter, singular_k3, validate_surface

a = singular_k3("a", [[2, 0], [0, 12]])
b = singular_k3("b", [[4, 0], [0, 6]])
c = singular_k3("c", [[2, 1], [1, 2]])
d = singular_k3("d", [[2, -1], [-1, 2]])
print(validate_surface(a))

# %%
for S1, S2 in ((a, a), (a, b), (c, d)):
    dec = derived_equivalent(S1, S2, "oriented")
    print(S1.name, S2.name, dec.equivalent, dec.witness.matrix if dec.witness else None)

# %%
print([S.name for S in fm_partner_filter(c, [a, b, c, d])])
