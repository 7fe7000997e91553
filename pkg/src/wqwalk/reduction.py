"""Replacing ``k`` identically-evolving self-loops by one loop of weight ``k``.

The unreduced walk keeps ``k`` separate unit-weight loop slots ``(v, v, j)``
at every vertex.  When the amplitudes on the slots of a vertex are equal, the
uniform combination ``|sigma> = (|1> + ... + |k>)/sqrt(k)`` evolves exactly
like a single loop arc of weight ``k``.  :class:`SubspaceMap` is the isometry
between the two arc spaces and :func:`verify_reduction` runs both walks side
by side.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Integral

import numpy as np

from .errors import NonIntegerMultiplicity, NonUniformGroup
from .graph import ArcIndex, WeightedGraph, line_moving_destinations, _gather_from_destinations
from .search import full_initial_state, oracle
from .walk import ShiftKind, as_state, check_boundary, step

__all__ = [
    "LoopSlotGraph",
    "SubspaceMap",
    "ReductionReport",
    "build_unreduced_lackadaisical",
    "reduced_graph",
    "verify_reduction",
]

UNIFORMITY_TOL = 1e-10


class LoopSlotGraph:
    """A loopless base graph plus ``k`` unit-weight loop slots per vertex.

    Arcs are keyed ``(from, to, slot)`` with slot 0 for ordinary edges and
    ``1..k`` for the loops.  It exposes the same ``arcs`` interface as
    :class:`~wqwalk.graph.WeightedGraph`, so every walk operator applies.
    """

    def __init__(self, base: WeightedGraph, k: int):
        if base.has_loops():
            raise ValueError("base graph must be loopless")
        self.base = base
        self.k = int(k)
        self.vertex_count = base.vertex_count
        self.line_half_width = base.line_half_width
        self.name = f"{base.name} + {self.k} loop slots"

        weight = {}
        for v, u, w in base.edges:
            weight[(v, u, 0)] = w
            weight[(u, v, 0)] = w
        for v in range(self.vertex_count):
            for j in range(1, self.k + 1):
                weight[(v, v, j)] = 1.0
        keys = sorted(weight)
        lookup = {key: i for i, key in enumerate(keys)}
        flip = [lookup[(u, v, j)] for v, u, j in keys]
        moving = None
        if self.line_half_width is not None:
            dest = line_moving_destinations(
                np.array([key[0] for key in keys]), np.array([key[1] for key in keys]),
                self.line_half_width, lambda arc: lookup[(arc[0], arc[1], 0)],
            )
            moving = _gather_from_destinations(dest)
        self.arcs = ArcIndex(keys, [weight[key] for key in keys], self.vertex_count, flip, moving)

    def __repr__(self) -> str:
        return f"<LoopSlotGraph {self.name}: {len(self.arcs)} arcs>"

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)


def _check_multiplicity(k) -> int:
    if isinstance(k, bool) or not isinstance(k, (Integral, float)) or k != int(k) or k < 0:
        raise NonIntegerMultiplicity(f"loop multiplicity must be a non-negative integer, got {k!r}")
    return int(k)


def build_unreduced_lackadaisical(base: WeightedGraph, k: int) -> LoopSlotGraph:
    """Base graph with ``k`` parallel unit loops per vertex (``k = 0`` adds none)."""
    return LoopSlotGraph(base, _check_multiplicity(k))


def reduced_graph(base: WeightedGraph, k: int) -> WeightedGraph:
    """Base graph with one loop of weight ``k`` per vertex."""
    k = _check_multiplicity(k)
    loops = [(v, v, float(k)) for v in range(base.vertex_count)] if k else []
    return WeightedGraph(
        base.vertex_count, list(base.edges) + loops,
        line_half_width=base.line_half_width, name=f"{base.name} + loop weight {k}",
    )


class SubspaceMap:
    """Isometry between unreduced and reduced arc spaces.

    Each reduced arc collects one full arc (ordinary edges) or the ``k`` loop
    slots of a vertex, which contribute with weight ``1/sqrt(k)``.
    """

    def __init__(self, full: LoopSlotGraph, reduced: WeightedGraph):
        self.full = full
        self.reduced = reduced
        self.target = np.array(
            [reduced.arcs.index_of((v, u)) for v, u, _ in full.arcs.keys], dtype=np.intp
        )
        is_slot = np.array([j > 0 for _, _, j in full.arcs.keys], dtype=bool)
        self.scale = np.where(is_slot, 1.0 / math.sqrt(max(full.k, 1)), 1.0)
        self._slot_index = np.flatnonzero(is_slot)

    def is_group_uniform(self, full_state, tol: float = UNIFORMITY_TOL) -> bool:
        if self.full.k <= 1:
            return True
        psi = as_state(self.full, full_state)
        slots = psi[self._slot_index].reshape(self.full.vertex_count, self.full.k)
        return bool(np.max(np.abs(slots - slots[:, :1])) <= tol)

    def project(self, full_state, tol: float = UNIFORMITY_TOL) -> np.ndarray:
        """Reduced state; loop amplitude ``alpha_sigma = sqrt(k) * alpha_slot``.

        Raises
        ------
        NonUniformGroup
            If the loop slots of some vertex carry different amplitudes.
        """
        psi = as_state(self.full, full_state)
        if not self.is_group_uniform(psi, tol):
            raise NonUniformGroup("loop slots of a vertex do not share one amplitude")
        out = np.zeros(len(self.reduced.arcs), dtype=complex)
        np.add.at(out, self.target, self.scale * psi)
        return out

    def lift(self, reduced_state) -> np.ndarray:
        psi = as_state(self.reduced, reduced_state)
        return psi[self.target] * self.scale


@dataclass
class ReductionReport:
    base: str
    k: int
    steps: int
    max_dev: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_dev < self.tol

    def to_dict(self) -> dict:
        return {"base": self.base, "k": self.k, "steps": self.steps,
                "max_dev": self.max_dev, "pass": self.passed}


def _default_initial(reduced: WeightedGraph) -> np.ndarray:
    if reduced.line_half_width is not None:
        # walker at the origin pointing left and right, nothing on the loop
        M = reduced.line_half_width
        psi = np.zeros(len(reduced.arcs), dtype=complex)
        psi[reduced.arcs.index_of((M, M - 1))] = 1 / math.sqrt(2)
        psi[reduced.arcs.index_of((M, M + 1))] = 1j / math.sqrt(2)
        return psi
    return full_initial_state(reduced)


def verify_reduction(
    base: WeightedGraph,
    k: int,
    steps: int,
    tol: float = 1e-10,
    kind=None,
    oracle_vertex: int | None = None,
    initial=None,
) -> ReductionReport:
    """Evolve the unreduced and reduced walks together and compare.

    ``kind`` defaults to the moving shift on lines and flip-flop elsewhere.
    With ``oracle_vertex`` set, each step is the search step ``S C Q``.
    ``initial`` is a reduced-space state; by default the line uses the
    origin state ``(|-1> + i|1>)/sqrt(2)`` and other graphs the uniform
    weighted superposition.  The deviation is ``||project(full) - reduced||``
    maximised over ``t = 0..steps``.

    Raises
    ------
    NonUniformGroup
        If the unreduced evolution breaks the loop-slot symmetry.
    """
    full = build_unreduced_lackadaisical(base, k)
    red = reduced_graph(base, k)
    smap = SubspaceMap(full, red)
    if kind is None:
        kind = ShiftKind.MOVING if base.line_half_width is not None else ShiftKind.FLIP_FLOP
    kind = ShiftKind.parse(kind)

    psi_r = _default_initial(red) if initial is None else as_state(red, initial).copy()
    psi_f = smap.lift(psi_r)

    def advance(g, psi):
        if oracle_vertex is not None:
            psi = oracle(g, psi, oracle_vertex)
        psi = step(g, psi, kind)
        check_boundary(g, psi)
        return psi

    max_dev = float(np.linalg.norm(smap.project(psi_f) - psi_r))
    for _ in range(int(steps)):
        psi_f = advance(full, psi_f)
        psi_r = advance(red, psi_r)
        max_dev = max(max_dev, float(np.linalg.norm(smap.project(psi_f) - psi_r)))
    return ReductionReport(base.name, full.k, int(steps), max_dev, tol)
