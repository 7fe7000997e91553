"""Discrete-time coined quantum walks on weighted graphs."""
from .errors import *  # noqa: F401,F403
from .graph import (
    ArcIndex,
    WeightedGraph,
    build_graph,
    complete_graph,
    line_graph,
    parse_edge_list,
    random_weighted_graph,
    read_edge_list,
    vertex_weight_sum,
)
from .walk import (
    ShiftKind,
    apply_coin,
    apply_shift,
    evolve,
    local_superposition,
    step,
    vertex_probabilities,
)
from .szegedy import apply_R1, apply_R2, apply_W, transition_matrix, verify_equivalence
from .reduction import build_unreduced_lackadaisical, verify_reduction
from .line import lack_coin, peak_velocity, simulate_line, stefanak_coin
from .search import SearchParams, find_peak, predict, success_probability

__version__ = "0.1.0"
