"""Lackadaisical walk on the line with a weighted self-loop at every vertex.

In the ``(L, S, R)`` coin basis the weighted Grover coin at a vertex with loop
weight ``l`` is a 3x3 reflection.  It coincides with the eigenvector-deformed
three-state Grover coin with ``rho = sqrt(l / (l + 2))``, and under the moving
shift the two ballistic peaks travel at speed ``rho``.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import NegativeLoopWeight, NoPeakFound, RhoOutOfRange
from .graph import line_graph
from .walk import ShiftKind, evolve, vertex_probabilities

__all__ = [
    "HADAMARD",
    "GROVER2",
    "lack_coin",
    "stefanak_coin",
    "rho_from_loop_weight",
    "loop_weight_from_rho",
    "BlockCoin",
    "line_initial_state",
    "PositionDistribution",
    "simulate_line",
    "peak_velocity",
]

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2)
# 2|s><s| - I for two equal directions: a pure swap
GROVER2 = np.array([[0.0, 1.0], [1.0, 0.0]])

LOOPLESS_COINS = {"hadamard": HADAMARD, "grover2": GROVER2}


def lack_coin(l: float) -> np.ndarray:
    """Weighted Grover coin of a line vertex with loop weight ``l``."""
    if l < 0:
        raise NegativeLoopWeight(f"loop weight {l} < 0")
    r = math.sqrt(l)
    return np.array([
        [-l, 2 * r, 2],
        [2 * r, l - 2, 2 * r],
        [2, 2 * r, -l],
    ]) / (l + 2)


def stefanak_coin(rho: float) -> np.ndarray:
    """Three-state Grover coin with eigenvectors deformed by ``rho`` in [0, 1]."""
    if not 0 <= rho <= 1:
        raise RhoOutOfRange(f"rho = {rho} outside [0, 1]")
    q = 1 - rho**2
    off = rho * math.sqrt(2 * q)
    return np.array([
        [-(rho**2), off, q],
        [off, 2 * rho**2 - 1, off],
        [q, off, -(rho**2)],
    ])


def rho_from_loop_weight(l: float) -> float:
    if l < 0:
        raise NegativeLoopWeight(f"loop weight {l} < 0")
    return math.sqrt(l / (l + 2))


def loop_weight_from_rho(rho: float) -> float:
    if not 0 <= rho < 1:
        raise RhoOutOfRange(f"rho = {rho} must be in [0, 1) to give a finite loop weight")
    return 2 * rho**2 / (1 - rho**2)


class BlockCoin:
    """Apply one fixed ``d x d`` coin at every interior vertex of a line.

    Interior arc blocks are ordered ``(L, R)`` or ``(L, S, R)`` by the arc
    index.  The two end vertices are left untouched; evolution on a line never
    reaches them.
    """

    def __init__(self, matrix):
        self.matrix = np.asarray(matrix, dtype=complex)

    def __call__(self, g, state):
        arcs = g.arcs
        d = self.matrix.shape[0]
        lo, hi = int(arcs.offsets[1]), int(arcs.offsets[arcs.vertex_count - 1])
        out = np.array(state, dtype=complex)
        inner = out[lo:hi].reshape(-1, d)
        out[lo:hi] = (inner @ self.matrix.T).ravel()
        return out


def line_initial_state(g) -> np.ndarray:
    """``|0> (x) (|-1> + i|1>) / sqrt(2)``, no amplitude on the loop."""
    M = g.line_half_width
    psi = np.zeros(len(g.arcs), dtype=complex)
    psi[g.arcs.index_of((M, M - 1))] = 1 / math.sqrt(2)
    psi[g.arcs.index_of((M, M + 1))] = 1j / math.sqrt(2)
    return psi


@dataclass
class PositionDistribution:
    positions: np.ndarray
    probabilities: np.ndarray

    def __getitem__(self, x: int) -> float:
        M = (len(self.positions) - 1) // 2
        return float(self.probabilities[x + M])

    def total(self) -> float:
        return float(self.probabilities.sum())

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("position,probability\n")
        for x, p in zip(self.positions.tolist(), self.probabilities.tolist()):
            buf.write(f"{x},{p:.17g}\n")
        return buf.getvalue()


def simulate_line(
    l: float | None = None,
    steps: int = 100,
    shift="moving",
    *,
    rho: float | None = None,
    loopless_coin: str = "hadamard",
    initial=None,
) -> PositionDistribution:
    """Position distribution after ``steps`` steps from the origin.

    Exactly one of ``l`` and ``rho`` is given.  ``l > 0`` runs the weighted
    Grover walk on a looped line; ``rho`` runs the deformed coin directly;
    ``l == 0`` runs the two-state loopless walk with ``loopless_coin``
    (``"hadamard"`` or ``"grover2"``).  The simulated line has half-width
    ``steps + 1`` so the walker never reaches its ends; the result covers
    positions ``-steps..steps``.
    """
    if (l is None) == (rho is None):
        raise ValueError("give exactly one of l and rho")
    kind = ShiftKind.parse(shift)
    steps = int(steps)
    M = steps + 1
    if rho is not None:
        g = line_graph(M, 1.0)
        coin = BlockCoin(stefanak_coin(rho))
    elif l < 0:
        raise NegativeLoopWeight(f"loop weight {l} < 0")
    elif l == 0:
        g = line_graph(M, 0.0)
        try:
            coin = BlockCoin(LOOPLESS_COINS[loopless_coin])
        except KeyError:
            raise ValueError(f"unknown loopless coin {loopless_coin!r}") from None
    else:
        g = line_graph(M, l)
        coin = None
    psi = line_initial_state(g) if initial is None else initial
    psi = evolve(g, psi, kind, steps, coin=coin)
    # the two padding sites are verified empty by evolve
    probs = vertex_probabilities(g, psi)[1:-1]
    return PositionDistribution(np.arange(-steps, steps + 1), probs)


def peak_velocity(dist: PositionDistribution, T: int, threshold: float = 1e-4) -> tuple[float, float]:
    """Speeds ``(x_left / T, x_right / T)`` of the two outermost peaks.

    Each side is scanned from ``+-T`` towards the origin for the first local
    maximum with probability at least ``threshold``; sites of exactly zero
    probability (odd sites of a loopless walk) are skipped.
    """
    if T < 20:
        raise ValueError("peak velocity needs T >= 20")

    def outermost(xs):
        xs = [x for x in xs if dist[x] > 0]
        for i, x in enumerate(xs):
            inner = dist[xs[i + 1]] if i + 1 < len(xs) else 0.0
            outer = dist[xs[i - 1]] if i > 0 else 0.0
            if dist[x] >= threshold and dist[x] >= inner and dist[x] >= outer:
                return x
        raise NoPeakFound("no local maximum above threshold")

    right = outermost(range(T, 0, -1))
    left = outermost(range(-T, 0))
    return left / T, right / T
