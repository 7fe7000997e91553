"""Szegedy's walk on the bipartite double cover and its coined equivalent.

The double cover has vertex copies X and Y with ``x ~ y`` whenever ``{x, y}``
is an edge.  Its edges ``(x, y)`` are identified with the arcs ``(x, y)`` of
the original graph, so an edge state is an array over ``g.arcs`` and no second
graph object is built.

With the flip-flop shift, ``C = R1``, ``S C S = R2`` and hence ``U^2 = W``
with ``W = R2 R1``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .walk import ShiftKind, apply_coin, apply_shift, as_state, random_state

__all__ = [
    "transition_matrix",
    "apply_R1",
    "apply_R2",
    "apply_W",
    "apply_W_inverse",
    "reflection_matrices",
    "EquivalenceReport",
    "verify_equivalence",
]


def transition_matrix(g) -> np.ndarray:
    """Row-stochastic ``P[v, u] = w_vu / sum_t w_vt``, built from the edge list."""
    n = g.vertex_count
    A = np.zeros((n, n))
    for v, u, w in g.edges:
        A[v, u] = w
        A[u, v] = w
    return A / A.sum(axis=1, keepdims=True)


def _group_sum(labels, values, n):
    out = np.zeros((n,) + values.shape[1:], dtype=complex)
    np.add.at(out, labels, values)
    return out


def _reflect(labels, coeff, psi, n):
    # 2 sum_z |chi_z><chi_z| - I, chi_z supported on edges with label z
    c = coeff if psi.ndim == 1 else coeff[:, None]
    overlap = _group_sum(labels, c * psi, n)
    return 2.0 * c * overlap[labels] - psi


def _sqrt_P_on_edges(g, P=None):
    P = transition_matrix(g) if P is None else P
    x, y = g.arcs.arc_from, g.arcs.arc_to
    return np.sqrt(P[x, y]), np.sqrt(P[y, x])


def apply_R1(g, edge_state, P=None) -> np.ndarray:
    """Reflect about ``|phi_x> = |x> (x) sum_y sqrt(P_xy) |y>`` for all x."""
    psi = as_state(g, edge_state)
    c1, _ = _sqrt_P_on_edges(g, P)
    return _reflect(g.arcs.arc_from, c1, psi, g.vertex_count)


def apply_R2(g, edge_state, P=None) -> np.ndarray:
    """Reflect about ``|psi_y> = sum_x sqrt(P_yx) |x> (x) |y>`` for all y."""
    psi = as_state(g, edge_state)
    _, c2 = _sqrt_P_on_edges(g, P)
    return _reflect(g.arcs.arc_to, c2, psi, g.vertex_count)


def apply_W(g, edge_state, P=None) -> np.ndarray:
    P = transition_matrix(g) if P is None else P
    return apply_R2(g, apply_R1(g, edge_state, P), P)


def apply_W_inverse(g, edge_state, P=None) -> np.ndarray:
    P = transition_matrix(g) if P is None else P
    return apply_R1(g, apply_R2(g, edge_state, P), P)


def reflection_matrices(g) -> tuple[np.ndarray, np.ndarray]:
    """Dense ``R1`` and ``R2`` assembled from explicit ``|phi_x>``, ``|psi_y>``."""
    P = transition_matrix(g)
    n = len(g.arcs)
    R1 = -np.eye(n)
    R2 = -np.eye(n)
    for z in range(g.vertex_count):
        phi = np.zeros(n)
        psi = np.zeros(n)
        for other in range(g.vertex_count):
            if P[z, other] > 0:
                phi[g.arcs.index_of((z, other))] = np.sqrt(P[z, other])
                psi[g.arcs.index_of((other, z))] = np.sqrt(P[z, other])
        R1 += 2.0 * np.outer(phi, phi)
        R2 += 2.0 * np.outer(psi, psi)
    return R1, R2


@dataclass
class EquivalenceReport:
    graph: str
    trials: int
    max_dev_C_R1: float
    max_dev_SCS_R2: float
    max_dev_U2_W: float
    tol: float

    @property
    def passed(self) -> bool:
        return max(self.max_dev_C_R1, self.max_dev_SCS_R2, self.max_dev_U2_W) < self.tol

    def to_dict(self) -> dict:
        return {
            "graph": self.graph,
            "trials": self.trials,
            "max_dev_C_R1": self.max_dev_C_R1,
            "max_dev_SCS_R2": self.max_dev_SCS_R2,
            "max_dev_U2_W": self.max_dev_U2_W,
            "pass": self.passed,
        }


def verify_equivalence(
    g,
    trials: int = 100,
    tol: float = 1e-12,
    kind=ShiftKind.FLIP_FLOP,
    seed=None,
    states=None,
    dense: bool | None = None,
) -> EquivalenceReport:
    """Compare the coined operators with Szegedy's reflections.

    Deviations are Euclidean distances ``||A psi - B psi||`` maximised over
    the test states.  ``states`` (columns) overrides the ``trials`` random
    states drawn from ``seed``.  For graphs of at most 8 vertices the dense
    operators are compared entrywise as well (``dense`` forces either way).
    """
    kind = ShiftKind.parse(kind)
    if states is None:
        rng = np.random.default_rng(seed)
        states = random_state(g, rng, size=trials)
    psi = as_state(g, states)
    if psi.ndim == 1:
        psi = psi[:, None]
    P = transition_matrix(g)

    def S(x):
        return apply_shift(g, x, kind)

    def C(x):
        return apply_coin(g, x)

    def dev(a, b):
        return float(np.max(np.linalg.norm(a - b, axis=0)))

    d1 = dev(C(psi), apply_R1(g, psi, P))
    d2 = dev(S(C(S(psi))), apply_R2(g, psi, P))
    d3 = dev(S(C(S(C(psi)))), apply_W(g, psi, P))

    if dense is None:
        dense = g.vertex_count <= 8
    if dense:
        eye = np.eye(len(g.arcs), dtype=complex)
        R1, R2 = reflection_matrices(g)
        Cm = C(eye)
        SCS = S(C(S(eye)))
        U2 = S(C(S(Cm)))
        d1 = max(d1, float(np.max(np.abs(Cm - R1))))
        d2 = max(d2, float(np.max(np.abs(SCS - R2))))
        d3 = max(d3, float(np.max(np.abs(U2 - R2 @ R1))))

    return EquivalenceReport(g.name, psi.shape[1], d1, d2, d3, tol)
