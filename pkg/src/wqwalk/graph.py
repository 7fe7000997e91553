"""Weighted graphs and their directed-arc indexing.

A coined walker at vertex ``v`` pointing towards ``u`` lives on the arc
``(v, u)``.  Every undirected edge ``{v, u}`` with ``v != u`` contributes the
two arcs ``(v, u)`` and ``(u, v)``; a self-loop contributes the single arc
``(v, v)``.  Arcs are indexed densely in ``(from, to)`` order so that the arcs
leaving a vertex form one contiguous block.
"""
from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np

from .errors import DuplicateEdge, NonPositiveWeight, VertexOutOfRange

__all__ = [
    "ArcIndex",
    "WeightedGraph",
    "build_graph",
    "complete_graph",
    "line_graph",
    "vertex_weight_sum",
    "parse_edge_list",
    "read_edge_list",
    "format_edge_list",
    "random_weighted_graph",
]


class ArcIndex:
    """Dense bijection between arcs and ``0..n_arcs-1``.

    Parameters
    ----------
    keys : sequence of tuple
        Arc labels sorted so that arcs leaving the same vertex are contiguous.
        The first two entries of each key are ``(from, to)``; longer keys
        (parallel loop slots) are allowed.
    weight : array_like
        Edge weight carried by each arc.
    vertex_count : int
    flip : array_like of int
        Gather index for the flip-flop shift: ``out = state[flip]``.
    moving : array_like of int, optional
        Gather index for the moving shift, present only on lines.
    """

    def __init__(self, keys, weight, vertex_count, flip, moving=None):
        self.keys = tuple(tuple(k) for k in keys)
        self.vertex_count = int(vertex_count)
        self.arc_from = np.array([k[0] for k in self.keys], dtype=np.intp)
        self.arc_to = np.array([k[1] for k in self.keys], dtype=np.intp)
        self.weight = np.asarray(weight, dtype=float)
        self.sqrt_weight = np.sqrt(self.weight)
        if np.any(np.diff(self.arc_from) < 0):
            raise ValueError("arc keys must be grouped by source vertex")
        counts = np.bincount(self.arc_from, minlength=self.vertex_count)
        self.offsets = np.concatenate(([0], np.cumsum(counts))).astype(np.intp)
        self.degree = counts
        self.has_isolated = bool(np.any(counts == 0))
        self.weight_sum = np.bincount(
            self.arc_from, weights=self.weight, minlength=self.vertex_count
        )
        self.flip = np.asarray(flip, dtype=np.intp)
        self.moving = None if moving is None else np.asarray(moving, dtype=np.intp)
        self._lookup = {k: i for i, k in enumerate(self.keys)}

    def __len__(self) -> int:
        return len(self.keys)

    def index_of(self, arc: tuple) -> int:
        try:
            return self._lookup[tuple(arc)]
        except KeyError:
            raise KeyError(f"{arc!r} is not an arc of this graph") from None

    def arc_of(self, index: int) -> tuple:
        return self.keys[index]

    def block(self, v: int) -> slice:
        """Slice of the arcs leaving vertex ``v``."""
        return slice(int(self.offsets[v]), int(self.offsets[v + 1]))


def _gather_from_destinations(dest: np.ndarray) -> np.ndarray:
    # dest[i] is where arc i's amplitude goes; invert to a gather index
    src = np.empty_like(dest)
    src[dest] = np.arange(dest.size, dtype=dest.dtype)
    return src


def line_moving_destinations(arc_from, arc_to, half_width: int, lookup) -> np.ndarray:
    """Destination of every arc under the moving shift on ``0..2M``.

    Arcs keep pointing the same way after hopping.  At the two end vertices the
    walker is reflected (``(2M-1, 2M) -> (2M, 2M-1)`` and ``(1, 0) -> (0, 1)``)
    so the map stays a permutation; evolution is required never to reach them.
    """
    last = 2 * half_width
    dest = np.empty(len(arc_from), dtype=np.intp)
    for i, (v, u) in enumerate(zip(arc_from.tolist(), arc_to.tolist())):
        if u == v:
            dest[i] = i
        elif u == v + 1:
            dest[i] = lookup((u, u + 1)) if u < last else lookup((u, v))
        else:
            dest[i] = lookup((u, u - 1)) if u > 0 else lookup((u, v))
    return dest


class WeightedGraph:
    """Undirected graph with positive edge weights and optional self-loops.

    Use :func:`build_graph` (or the family constructors) rather than calling
    this directly.  Instances are treated as immutable.
    """

    def __init__(
        self,
        vertex_count: int,
        edges: Iterable[tuple[int, int, float]],
        *,
        line_half_width: int | None = None,
        name: str | None = None,
    ):
        if vertex_count < 1:
            raise ValueError("vertex_count must be positive")
        self.vertex_count = int(vertex_count)
        canonical = {}
        for v, u, w in edges:
            v, u, w = int(v), int(u), float(w)
            for x in (v, u):
                if not 0 <= x < self.vertex_count:
                    raise VertexOutOfRange(f"vertex {x} not in 0..{self.vertex_count - 1}")
            if not (w > 0 and math.isfinite(w)):
                raise NonPositiveWeight(f"edge ({v}, {u}) has weight {w}")
            key = (min(v, u), max(v, u))
            if key in canonical:
                raise DuplicateEdge(f"edge {key} given twice")
            canonical[key] = w
        self.edges = tuple((v, u, canonical[(v, u)]) for v, u in sorted(canonical))
        self.line_half_width = line_half_width
        self.name = name or f"graph(n={self.vertex_count}, m={len(self.edges)})"

        arcw = {}
        for v, u, w in self.edges:
            arcw[(v, u)] = w
            arcw[(u, v)] = w
        keys = sorted(arcw)
        weight = [arcw[k] for k in keys]
        lookup = {k: i for i, k in enumerate(keys)}
        flip = [lookup[(u, v)] for v, u in keys]
        moving = None
        if line_half_width is not None:
            dest = line_moving_destinations(
                np.array([k[0] for k in keys]), np.array([k[1] for k in keys]),
                line_half_width, lookup.__getitem__,
            )
            moving = _gather_from_destinations(dest)
        self.arcs = ArcIndex(keys, weight, self.vertex_count, flip, moving)

    def __repr__(self) -> str:
        return f"<WeightedGraph {self.name}: {self.vertex_count} vertices, {len(self.arcs)} arcs>"

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    @property
    def is_line(self) -> bool:
        return self.line_half_width is not None

    def has_loops(self) -> bool:
        return any(v == u for v, u, _ in self.edges)

    def weight(self, v: int, u: int) -> float:
        """Weight of edge ``{v, u}``, 0 if absent."""
        i = self.arcs._lookup.get((v, u))
        return 0.0 if i is None else float(self.arcs.weight[i])

    def neighbors(self, v: int) -> list[int]:
        return self.arcs.arc_to[self.arcs.block(v)].tolist()

    def position(self, v: int) -> int:
        """Lattice position of vertex ``v`` on a line graph."""
        if self.line_half_width is None:
            raise ValueError("not a line graph")
        return v - self.line_half_width


def build_graph(vertex_count: int, edge_list: Iterable[Sequence], name: str | None = None) -> WeightedGraph:
    """Validated weighted graph from ``(v, u, w)`` triples.

    Raises
    ------
    NonPositiveWeight, DuplicateEdge, VertexOutOfRange
    """
    return WeightedGraph(vertex_count, edge_list, name=name)


def complete_graph(N: int, loop_weight: float = 0.0) -> WeightedGraph:
    """Complete graph on ``N`` vertices, unit edges, optional weighted self-loops."""
    if N < 2:
        raise ValueError("complete graph needs N >= 2")
    if loop_weight < 0:
        raise NonPositiveWeight("loop weight must be >= 0")
    edges = [(v, u, 1.0) for v in range(N) for u in range(v + 1, N)]
    if loop_weight > 0:
        edges += [(v, v, loop_weight) for v in range(N)]
    return WeightedGraph(N, edges, name=f"complete(N={N}, l={loop_weight:g})")


def line_graph(half_width: int, loop_weight: float = 0.0) -> WeightedGraph:
    """Path on positions ``-M..M`` (vertex ``i`` is position ``i - M``)."""
    if half_width < 1:
        raise ValueError("half_width must be >= 1")
    if loop_weight < 0:
        raise NonPositiveWeight("loop weight must be >= 0")
    n = 2 * half_width + 1
    edges = [(i, i + 1, 1.0) for i in range(n - 1)]
    if loop_weight > 0:
        edges += [(i, i, loop_weight) for i in range(n)]
    return WeightedGraph(
        n, edges, line_half_width=half_width,
        name=f"line(M={half_width}, l={loop_weight:g})",
    )


def vertex_weight_sum(g: WeightedGraph, v: int) -> float:
    """Total weight of the edges at ``v``; a self-loop counts once."""
    if not 0 <= v < g.vertex_count:
        raise VertexOutOfRange(f"vertex {v} not in 0..{g.vertex_count - 1}")
    return float(g.arcs.weight_sum[v])


def parse_edge_list(text: str, vertex_count: int | None = None, name: str | None = None) -> WeightedGraph:
    """Parse ``v u w`` lines (``#`` starts a comment) into a graph.

    When ``vertex_count`` is omitted it is one more than the largest id seen.
    """
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'v u w', got {raw!r}")
        edges.append((int(parts[0]), int(parts[1]), float(parts[2])))
    if vertex_count is None:
        vertex_count = 1 + max((max(v, u) for v, u, _ in edges), default=-1)
    return WeightedGraph(vertex_count, edges, name=name)


def read_edge_list(path, vertex_count: int | None = None) -> WeightedGraph:
    path = Path(path)
    return parse_edge_list(path.read_text(), vertex_count, name=path.name)


def format_edge_list(g: WeightedGraph) -> str:
    return "".join(f"{v} {u} {w!r}\n" for v, u, w in g.edges)


def random_weighted_graph(
    rng: np.random.Generator,
    max_vertices: int = 8,
    max_weight: float = 5.0,
    edge_prob: float = 0.5,
    loop_prob: float = 0.3,
) -> WeightedGraph:
    """Random graph with weights uniform in ``(0, max_weight]`` and no isolated vertex."""
    n = int(rng.integers(1, max_vertices + 1))
    pairs = {}

    def draw():
        return max_weight - rng.uniform(0.0, max_weight)

    for v in range(n):
        for u in range(v, n):
            p = loop_prob if u == v else edge_prob
            if rng.random() < p:
                pairs[(v, u)] = draw()
    for v in range(n):
        if not any(v in key for key in pairs):
            others = [u for u in range(n) if u != v]
            u = int(rng.choice(others)) if others and rng.random() < 0.8 else v
            pairs[(min(u, v), max(u, v))] = draw()
    return WeightedGraph(n, [(v, u, w) for (v, u), w in pairs.items()], name=f"random(n={n})")
