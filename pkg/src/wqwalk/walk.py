"""Coined walk step ``U = S C`` on weighted graphs.

States are complex arrays indexed by the graph's :class:`~wqwalk.graph.ArcIndex`.
Every operator here also accepts a 2-D array of shape ``(n_arcs, k)`` and acts
on each column, which is how dense matrices are assembled in tests.

The coin at vertex ``v`` reflects about the weighted local superposition

    |s_v> = sum_u sqrt(w_vu / W_v) |u>,   W_v = sum_t w_vt,

and is applied as the rank-one update ``a_vu -> 2 abar_v sqrt(w_vu) - a_vu``
with ``abar_v = sum_u sqrt(w_vu) a_vu / W_v``.  No matrix is ever formed.
"""
from __future__ import annotations

import enum

import numpy as np

from .errors import (
    BoundaryContamination,
    DimensionMismatch,
    IsolatedVertex,
    MovingShiftUnsupported,
    VertexOutOfRange,
)

__all__ = [
    "ShiftKind",
    "as_state",
    "arc_state",
    "local_superposition",
    "vertex_means",
    "apply_coin",
    "apply_shift",
    "step",
    "evolve",
    "vertex_probabilities",
    "coin_matrix",
    "shift_matrix",
    "check_boundary",
    "random_state",
]

BOUNDARY_TOL = 1e-15


class ShiftKind(enum.Enum):
    FLIP_FLOP = "flipflop"
    MOVING = "moving"

    @classmethod
    def parse(cls, value) -> "ShiftKind":
        if isinstance(value, cls):
            return value
        key = str(value).lower().replace("-", "").replace("_", "")
        for kind in cls:
            if kind.value == key:
                return kind
        raise ValueError(f"unknown shift {value!r}")


def as_state(g, state) -> np.ndarray:
    """Validate ``state`` against ``g`` and return it as a complex array."""
    psi = np.asarray(state, dtype=complex)
    if psi.ndim not in (1, 2) or psi.shape[0] != len(g.arcs):
        raise DimensionMismatch(
            f"state has shape {psi.shape}, graph has {len(g.arcs)} arcs"
        )
    return psi


def arc_state(g, amplitudes: dict, normalize: bool = False) -> np.ndarray:
    """Build a state from ``{arc: amplitude}``."""
    psi = np.zeros(len(g.arcs), dtype=complex)
    for arc, amp in amplitudes.items():
        psi[g.arcs.index_of(arc)] = amp
    if normalize:
        psi /= np.linalg.norm(psi)
    return psi


def local_superposition(g, v: int) -> np.ndarray:
    """Weighted superposition of the directions leaving ``v``.

    Entry for arc ``(v, u)`` is ``sqrt(w_vu / W_v)``; ordering follows the
    arc block of ``v``.
    """
    if not 0 <= v < g.arcs.vertex_count:
        raise VertexOutOfRange(f"vertex {v} not in graph")
    block = g.arcs.block(v)
    total = g.arcs.weight_sum[v]
    if total <= 0:
        raise IsolatedVertex(f"vertex {v} has no edges")
    return g.arcs.sqrt_weight[block] / np.sqrt(total)


def _require_connected_vertices(arcs) -> None:
    if arcs.has_isolated:
        raise IsolatedVertex("walk operators need every vertex to have an edge")


def vertex_means(g, state) -> np.ndarray:
    """Weighted per-vertex mean ``abar_v`` the coin inverts about."""
    arcs = g.arcs
    _require_connected_vertices(arcs)
    psi = as_state(g, state)
    sw = arcs.sqrt_weight if psi.ndim == 1 else arcs.sqrt_weight[:, None]
    sums = np.add.reduceat(sw * psi, arcs.offsets[:-1], axis=0)
    W = arcs.weight_sum if psi.ndim == 1 else arcs.weight_sum[:, None]
    return sums / W


def apply_coin(g, state) -> np.ndarray:
    """Weighted Grover coin at every vertex, O(n_arcs)."""
    arcs = g.arcs
    psi = as_state(g, state)
    mean = vertex_means(g, psi)
    sw = arcs.sqrt_weight if psi.ndim == 1 else arcs.sqrt_weight[:, None]
    return 2.0 * mean[arcs.arc_from] * sw - psi


def apply_shift(g, state, kind=ShiftKind.FLIP_FLOP) -> np.ndarray:
    """Flip-flop ``(v,u) -> (u,v)`` or, on lines, moving ``(v,v+1) -> (v+1,v+2)``.

    Loop arcs are fixed by both shifts.
    """
    kind = ShiftKind.parse(kind)
    psi = as_state(g, state)
    if kind is ShiftKind.FLIP_FLOP:
        return psi[g.arcs.flip]
    if g.arcs.moving is None:
        raise MovingShiftUnsupported("moving shift is only defined on line graphs")
    return psi[g.arcs.moving]


def step(g, state, kind=ShiftKind.FLIP_FLOP) -> np.ndarray:
    return apply_shift(g, apply_coin(g, state), kind)


def check_boundary(g, state, tol: float = BOUNDARY_TOL) -> None:
    """Raise if a truncated line carries amplitude at either end vertex."""
    if getattr(g, "line_half_width", None) is None:
        return
    arcs = g.arcs
    for v in (0, arcs.vertex_count - 1):
        mass = float(np.sum(np.abs(state[arcs.block(v)]) ** 2))
        if mass > tol:
            raise BoundaryContamination(
                f"probability {mass:.3g} reached end vertex {v}; use a wider line"
            )


def evolve(g, state, kind=ShiftKind.FLIP_FLOP, t: int = 1, coin=None) -> np.ndarray:
    """Apply ``(S C)^t``.

    ``coin`` replaces the weighted Grover coin when given (any callable
    ``coin(g, state) -> state``).  On line graphs the end vertices are checked
    after every step and :class:`BoundaryContamination` is raised if reached.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    kind = ShiftKind.parse(kind)
    coin = apply_coin if coin is None else coin
    psi = as_state(g, state).copy()
    for _ in range(int(t)):
        psi = apply_shift(g, coin(g, psi), kind)
        check_boundary(g, psi)
    return psi


def vertex_probabilities(g, state) -> np.ndarray:
    """Probability of finding the walker at each vertex."""
    psi = as_state(g, state)
    return np.bincount(
        g.arcs.arc_from, weights=np.abs(psi) ** 2, minlength=g.arcs.vertex_count
    )


def coin_matrix(g) -> np.ndarray:
    """Dense block-diagonal ``sum_v |v><v| (x) (2|s_v><s_v| - I)``."""
    n = len(g.arcs)
    C = -np.eye(n)
    for v in range(g.arcs.vertex_count):
        b = g.arcs.block(v)
        s = local_superposition(g, v)
        C[b, b] += 2.0 * np.outer(s, s)
    return C


def shift_matrix(g, kind=ShiftKind.FLIP_FLOP) -> np.ndarray:
    """Dense permutation matrix of the shift."""
    kind = ShiftKind.parse(kind)
    src = g.arcs.flip if kind is ShiftKind.FLIP_FLOP else g.arcs.moving
    if src is None:
        raise MovingShiftUnsupported("moving shift is only defined on line graphs")
    n = len(g.arcs)
    S = np.zeros((n, n))
    S[np.arange(n), src] = 1.0
    return S


def random_state(g, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Normalized complex Gaussian state(s); ``size`` adds a column axis."""
    shape = (len(g.arcs),) if size is None else (len(g.arcs), size)
    psi = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return psi / np.linalg.norm(psi, axis=0)
