# # Two coined steps make one Szegedy step
#
# With the flip-flop shift the coin is Szegedy's first reflection and the
# conjugated coin S C S is the second, so U^2 = W on every weighted graph.
# The moving shift on a line breaks this.

# %%
import numpy as np

from wqwalk import line_graph, random_weighted_graph, verify_equivalence
from wqwalk.line import line_initial_state

rng = np.random.default_rng(2024)
worst = 0.0
for _ in range(20):
    g = random_weighted_graph(rng)
    report = verify_equivalence(g, trials=10, seed=int(rng.integers(2**32)))
    worst = max(worst, report.max_dev_U2_W)
print(f"largest |U^2 psi - W psi| over 20 random graphs: {worst:.1e}")

# %% [markdown]
# The same check with the moving shift on a looped line fails by order one.

# %%
line = line_graph(20, 1.0)
witness = verify_equivalence(line, kind="moving", states=line_initial_state(line), dense=False)
print(f"moving shift deviation: {witness.max_dev_U2_W:.3f}  (pass={witness.passed})")
