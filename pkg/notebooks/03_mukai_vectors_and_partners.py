# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Mukai vectors and moduli partners
#
# The pairing is `(u, u') = r s' + s r' - l.l'`, so that `(v(E), v(F))`
# equals `chi(E, F)`.

# %%
from k3lattice import K3SurfaceData, MukaiLattice, MukaiVector, SheafData
from k3lattice import companion, euler_characteristic, moduli_partner, mukai_vector, normalize_rank

ns = [[2]]
O = mukai_vector(SheafData(1, (0,), 0), ns)
Oh = mukai_vector(SheafData(1, (1,), 0), ns)
print(O, Oh)
print("chi(O, O) =", euler_characteristic(O, O, ns), " chi(O, O(h)) =", euler_characteristic(O, Oh, ns))

# %% [markdown]
# Twists and the swap move an isotropic vector to positive rank.

# %%
M = MukaiLattice(ns)
res = normalize_rank(MukaiVector(0, (1,), 0), M)
print(res.vector, res.steps)

# %% [markdown]
# A companion `u` with `(v, u) = 1` certifies a fine moduli space; the
# partner NS comes from `v^perp / Z v`.

# %%
v = MukaiVector(2, (1,), 1)
S = K3SurfaceData("quartic-like", [[4]], [[2, 1], [1, 2]])
print("companion:", companion(v, MukaiLattice([[4]])))
P = moduli_partner(S, v)
print(P.ns_gram, P.t_gram, "fine" if P.fine else "not fine")
