# # Weighted graphs and the coined walk
#
# A walker lives on arcs: the amplitude on arc (v, u) is "at v, pointing at u".
# The weighted Grover coin reflects the local amplitudes about a vector whose
# entries grow like the square root of the edge weight.

# %%
import numpy as np

from wqwalk import ShiftKind, build_graph, evolve, local_superposition, vertex_probabilities
from wqwalk.walk import apply_coin, random_state, step

# A star whose centre has one heavy spoke and a weighted self-loop on a leaf.
g = build_graph(5, [(0, 1, 4.0), (0, 2, 1.0), (0, 3, 1.0), (0, 4, 1.0), (2, 2, 0.5)])
print(g)
for v, u, w in g.edges:
    print(f"  {v} -- {u}  weight {w:g}")

# %% [markdown]
# The coin's preferred direction at the centre puts twice the amplitude on the
# heavy spoke, since sqrt(4) = 2.

# %%
print("local superposition at 0:", np.round(local_superposition(g, 0), 4))

# %%
rng = np.random.default_rng(3)
psi = random_state(g, rng)
print("coin is an involution:", np.allclose(apply_coin(g, apply_coin(g, psi)), psi))
print("step keeps the norm:  ", np.isclose(np.linalg.norm(step(g, psi)), 1.0))

# %% [markdown]
# Start at the centre in the coin's own direction and watch probability spread.

# %%
start = np.zeros(g.n_arcs, dtype=complex)
block = g.arcs.block(0)
start[block] = local_superposition(g, 0)
for t in (0, 1, 2, 5):
    p = vertex_probabilities(g, evolve(g, start, ShiftKind.FLIP_FLOP, t))
    print(f"t={t}:", np.round(p, 3))
