# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Extending a transcendental isometry to the Mukai lattice
#
# Inside the Mukai lattice `T(-1)` is glued to `U + NS(-1)` along their
# discriminant groups. An isometry `g` of `T` extends once we find `h` on
# the algebraic part inducing the matching discriminant action.

# %%
from k3lattice import assemble_mukai_isometry, derived_equivalent, search_extension, singular_k3
from k3lattice.k3 import mukai_glue

S1 = singular_k3("c", [[2, 1], [1, 2]])
S2 = singular_k3("d", [[2, -1], [-1, 2]])
g = derived_equivalent(S1, S2).witness
h = search_extension(g, S1, S2, depth=1)
res = assemble_mukai_isometry(g, h, S1, S2)
print("overlattice det:", mukai_glue(S1).overlattice.det)
print("T block:", res.t_block(), "== g:", g.matrix)
