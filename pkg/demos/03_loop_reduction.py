# # k unit loops behave like one loop of weight k
#
# Give every vertex k separate unit-weight loops.  If the loops at a vertex
# start with equal amplitudes they stay equal, and their uniform combination
# evolves exactly like a single loop of weight k.

# %%
from wqwalk import complete_graph, line_graph, verify_reduction
from wqwalk.reduction import build_unreduced_lackadaisical, reduced_graph

base = line_graph(101)
full = build_unreduced_lackadaisical(base, 10)
small = reduced_graph(base, 10)
print(f"unreduced line: {full.n_arcs} arcs, reduced: {small.n_arcs} arcs")

report = verify_reduction(base, k=10, steps=100)
print("line, moving shift:", report.to_dict())

# %% [markdown]
# The reduction also survives the search oracle on a complete graph.

# %%
print("K16 search:", verify_reduction(complete_graph(16), k=3, steps=60, oracle_vertex=0).to_dict())
