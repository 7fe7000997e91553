"""Search for a marked vertex on the complete graph with weighted self-loops.

One search step is ``U' = S C Q``: the oracle ``Q`` negates the amplitudes at
the marked vertex, ``C`` is the weighted Grover coin and ``S`` the flip-flop
shift.  By symmetry the evolution from the uniform state stays in the span of

    |aa>  walker at the marked vertex pointing at itself,
    |ab>  at the marked vertex pointing at unmarked ones,
    |ba>  at unmarked vertices pointing at the marked one,
    |bb>  at unmarked vertices pointing among unmarked ones (loop weighted),

and is exact there, so large-N curves never touch the full arc space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks

from .errors import AmbiguousRegime, VertexOutOfRange
from .graph import complete_graph
from .walk import ShiftKind, apply_coin, apply_shift, as_state

__all__ = [
    "SearchParams",
    "SearchAngles",
    "PiecewisePrediction",
    "PeakInfo",
    "angles",
    "oracle",
    "search_step",
    "initial_state",
    "full_initial_state",
    "subspace_basis",
    "project_to_subspace",
    "subspace_operator",
    "subspace_step",
    "subspace_trajectory",
    "full_trajectory",
    "success_probability",
    "success_curve",
    "asymptotic_state",
    "asymptotic_probability",
    "predict",
    "find_peak",
    "threshold_scan",
    "find_threshold",
    "LOOPLESS_THRESHOLD",
]

# loop weight below which peak success beats the loopless 1/2 (large N)
LOOPLESS_THRESHOLD = 3 + 2 * math.sqrt(2)
SUB_REGIME_EDGE = 1 / 3


@dataclass(frozen=True)
class SearchParams:
    N: int
    l: float = 0.0
    marked: int = 0

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("search needs N >= 2")
        if self.l < 0:
            raise ValueError("loop weight must be >= 0")
        if not 0 <= self.marked < self.N:
            raise VertexOutOfRange(f"marked vertex {self.marked} not in 0..{self.N - 1}")


@dataclass(frozen=True)
class SearchAngles:
    cos_theta: float
    sin_theta: float
    cos_phi: float
    sin_phi: float
    cos_alpha: float
    sin_alpha: float

    @property
    def theta(self) -> float:
        return math.atan2(self.sin_theta, self.cos_theta)

    @property
    def phi(self) -> float:
        return math.atan2(self.sin_phi, self.cos_phi)

    @property
    def alpha(self) -> float:
        return math.atan2(self.sin_alpha, self.cos_alpha)


@dataclass(frozen=True)
class PiecewisePrediction:
    regime: str
    t_star: float
    p_star: float


@dataclass(frozen=True)
class PeakInfo:
    t_peak: int
    p_peak: float
    hump_count: int
    t_max: int = 0
    p_max: float = 0.0


def angles(params: SearchParams) -> SearchAngles:
    N, l = params.N, params.l
    d = N + l - 1
    return SearchAngles(
        cos_theta=(N - l - 1) / d,
        sin_theta=2 * math.sqrt(l * (N - 1)) / d,
        cos_phi=(N + l - 3) / d,
        sin_phi=2 * math.sqrt(N + l - 2) / d,
        cos_alpha=(N - 2) / d,
        sin_alpha=math.sqrt((2 * N + l - 3) * (l + 1)) / d,
    )


# -- full arc space ----------------------------------------------------------

def oracle(g, state, marked: int = 0) -> np.ndarray:
    """Negate every amplitude on arcs leaving ``marked``."""
    if not 0 <= marked < g.arcs.vertex_count:
        raise VertexOutOfRange(f"marked vertex {marked} not in graph")
    psi = as_state(g, state).copy()
    psi[g.arcs.block(marked)] *= -1
    return psi


def search_step(g, state, marked: int = 0) -> np.ndarray:
    return apply_shift(g, apply_coin(g, oracle(g, state, marked)), ShiftKind.FLIP_FLOP)


def full_initial_state(g) -> np.ndarray:
    """``N^{-1/2} sum_v |v> (x) |s_v>``: uniform over vertices, weighted over arcs."""
    arcs = g.arcs
    return (arcs.sqrt_weight / np.sqrt(arcs.weight_sum[arcs.arc_from] * arcs.vertex_count)).astype(complex)


def subspace_basis(g, l: float, marked: int = 0) -> np.ndarray:
    """Columns ``|aa>, |ab>, |ba>, |bb>`` as vectors over the arcs of ``g``."""
    arcs = g.arcs
    N = arcs.vertex_count
    src, dst = arcs.arc_from, arcs.arc_to
    B = np.zeros((len(arcs), 4))
    at_a, to_a = src == marked, dst == marked
    B[at_a & to_a, 0] = 1.0
    B[at_a & ~to_a, 1] = 1.0 / math.sqrt(N - 1)
    B[~at_a & to_a, 2] = 1.0 / math.sqrt(N - 1)
    bb = ~at_a & ~to_a
    B[bb, 3] = np.where(src[bb] == dst[bb], math.sqrt(l), 1.0)
    if N + l - 2 > 0:
        B[:, 3] /= math.sqrt((N - 1) * (N + l - 2))
    return B


def project_to_subspace(g, state, l: float, marked: int = 0) -> np.ndarray:
    return subspace_basis(g, l, marked).T @ as_state(g, state)


def full_trajectory(params: SearchParams, steps: int, g=None) -> np.ndarray:
    """Full-space evolution projected on the 4D basis, shape ``(steps+1, 4)``."""
    g = complete_graph(params.N, params.l) if g is None else g
    B = subspace_basis(g, params.l, params.marked)
    psi = full_initial_state(g)
    out = np.empty((steps + 1, 4), dtype=complex)
    for t in range(steps + 1):
        out[t] = B.T @ psi
        psi = search_step(g, psi, params.marked)
    return out


# -- 4D subspace -------------------------------------------------------------

def initial_state(params: SearchParams) -> np.ndarray:
    N, l = params.N, params.l
    v = np.array([math.sqrt(l), math.sqrt(N - 1), math.sqrt(N - 1),
                  math.sqrt((N - 1) * (N + l - 2))])
    return v / math.sqrt(N * (N + l - 1))


def subspace_operator(params: SearchParams) -> np.ndarray:
    """The 4x4 matrix of ``U'`` in the ``(aa, ab, ba, bb)`` basis."""
    a = angles(params)
    return np.array([
        [a.cos_theta, -a.sin_theta, 0.0, 0.0],
        [0.0, 0.0, -a.cos_phi, a.sin_phi],
        [-a.sin_theta, -a.cos_theta, 0.0, 0.0],
        [0.0, 0.0, a.sin_phi, a.cos_phi],
    ])


def subspace_step(params: SearchParams, state4) -> np.ndarray:
    return subspace_operator(params) @ np.asarray(state4)


def subspace_trajectory(params: SearchParams, steps: int) -> np.ndarray:
    """``U'^t |psi_0>`` for ``t = 0..steps``, shape ``(steps+1, 4)``."""
    U = subspace_operator(params)
    out = np.empty((steps + 1, 4))
    out[0] = initial_state(params)
    for t in range(steps):
        out[t + 1] = U @ out[t]
    return out


def success_curve(params: SearchParams, steps: int) -> np.ndarray:
    """Exact ``p(t)`` for ``t = 0..steps``."""
    traj = subspace_trajectory(params, steps)
    return traj[:, 0] ** 2 + traj[:, 1] ** 2


def success_probability(params: SearchParams, t: int) -> float:
    if t < 0:
        raise ValueError("t must be >= 0")
    return float(success_curve(params, int(t))[-1])


def asymptotic_state(params: SearchParams, t, aligned: bool = False) -> np.ndarray:
    """Large-N approximation of ``U'^t |psi_0>``; ``t`` may be an array.

    Returns shape ``(4,)`` for scalar ``t`` and ``(len(t), 4)`` otherwise.

    The default is the classic closed form.  Its ``|aa>`` entry has the
    opposite sign to the exact evolution under :func:`subspace_operator`, and
    its ``|bb>`` entry omits the stationary part ``(l-1)/(l+1)``; neither
    changes ``p(t)``.  ``aligned=True`` applies both fixes, giving a vector
    that tracks the exact amplitudes to ``O(1/sqrt(N))``.
    """
    N, l = params.N, params.l
    alpha = angles(params).alpha
    t = np.asarray(t, dtype=float)
    c, s = np.cos(alpha * t), np.sin(alpha * t)
    root = math.sqrt(N + l - 2)
    osc = math.sqrt((2 * N + l - 3) * (l + 1)) * s
    vec = np.stack([
        (1 - c) * math.sqrt(l * (N - 1)) / ((l + 1) * root),
        (2 * l + (l - 1) * c + osc) / (2 * (l + 1) * root),
        (2 * l + (l - 1) * c - osc) / (2 * (l + 1) * root),
        (1 + c) / (l + 1),
    ], axis=-1)
    if aligned:
        vec[..., 0] *= -1
        vec[..., 3] += (l - 1) / (l + 1)
    return vec


def asymptotic_probability(params: SearchParams, t, simplified: bool = False):
    """Large-N ``p(t)``; ``simplified`` drops the slowly varying ``2l + (l-1)cos`` term."""
    v = asymptotic_state(params, t)
    if not simplified:
        return v[..., 0] ** 2 + v[..., 1] ** 2
    N, l = params.N, params.l
    alpha = angles(params).alpha
    s = np.sin(alpha * np.asarray(t, dtype=float))
    second = math.sqrt((2 * N + l - 3) * (l + 1)) * s / (2 * (l + 1) * math.sqrt(N + l - 2))
    return v[..., 0] ** 2 + second ** 2


# -- predictions -------------------------------------------------------------

def predict(params: SearchParams, c: float | None = None) -> PiecewisePrediction:
    """Asymptotic runtime ``t*`` and success probability ``p*``.

    Regimes: ``sub`` (l < 1/3), ``mid`` (l >= 1/3, l << N), ``linear``
    (l = cN, only when ``c`` is supplied) and ``super`` (l >= 100 N).

    For ``l < 1/3`` the runtime is the earlier root of ``dp/dt`` and
    ``p* = 1/(2(1-l))``, which joins the mid branch continuously at
    ``l = 1/3`` (both give 3/4).

    Raises
    ------
    AmbiguousRegime
        If ``0.01 <= l/N < 100`` and ``c`` is not given.
    """
    N, l = params.N, params.l
    if c is not None:
        if c <= 0:
            raise ValueError("c must be positive")
        t_star = math.pi / math.asin(math.sqrt(c * (c + 2)) / (c + 1))
        return PiecewisePrediction("linear", t_star, (16 + 9 * c) / (4 * c * (c + 1) * N))
    ratio = l / N
    if ratio >= 100:
        return PiecewisePrediction("super", 2.0, 9 / (4 * l))
    if ratio >= 0.01:
        raise AmbiguousRegime(
            f"l/N = {ratio:.3g} is neither small nor large; pass c = l/N explicitly"
        )
    if l < SUB_REGIME_EDGE:
        t_star = math.acos(2 * l / (l - 1)) / math.sqrt(2 * (l + 1)) * math.sqrt(N)
        return PiecewisePrediction("sub", t_star, 1 / (2 * (1 - l)))
    t_star = math.pi * math.sqrt(N / (2 * (l + 1)))
    return PiecewisePrediction("mid", t_star, 4 * l / (l + 1) ** 2)


def _period(params: SearchParams) -> float:
    return 2 * math.pi / angles(params).alpha


def find_peak(params: SearchParams, horizon: int | None = None) -> PeakInfo:
    """Locate the first success peak from exact evolution.

    ``U'`` has eigenvalues ``+-1`` besides ``exp(+-i alpha)``, so the exact
    ``p(t)`` carries a ``(-1)^t`` ripple of size ``O(1/sqrt(N))`` on top of
    the slow hump (about 0.02 at N = 1024).  The peak is therefore read off
    the filtered curve ``p(t-1)/4 + p(t)/2 + p(t+1)/4``, which removes the
    ripple exactly and leaves the hump itself.

    Returns
    -------
    PeakInfo
        ``t_peak``, ``p_peak``
            Argmax and max of the filtered curve before the mirror hump, i.e.
            over ``1 <= t <= ceil(pi/alpha) + 1`` (capped by ``horizon``).
            The two humps of the ``l < 1/3`` regime agree to ~1e-4, so a scan
            over the whole period would flip between them arbitrarily.
        ``hump_count``
            Maxima of the filtered curve reaching ``p_peak / 2`` within the
            first period ``[0, 2pi/alpha]``.
        ``t_max``, ``p_max``
            Argmax and max of the raw ``p(t)`` over the same window.
    """
    period = _period(params)
    if horizon is None:
        horizon = math.ceil(period)
    p = success_curve(params, max(int(horizon), math.ceil(period)) + 2)
    first = max(min(int(horizon), math.ceil(period / 2) + 1), 1)
    t_max = int(np.argmax(p[: first + 1]))

    # smooth[i] is centred on t = i + 1
    smooth = 0.25 * p[:-2] + 0.5 * p[1:-1] + 0.25 * p[2:]
    i = int(np.argmax(smooth[:first]))
    peaks, _ = find_peaks(smooth[: math.ceil(period)], height=smooth[i] / 2)
    return PeakInfo(i + 1, float(smooth[i]), len(peaks), t_max, float(p[t_max]))


def threshold_scan(N: int, l_grid) -> list[tuple[float, float]]:
    """``(l, p_peak)`` for every loop weight in the grid."""
    return [(float(l), find_peak(SearchParams(N, float(l))).p_peak) for l in l_grid]


def find_threshold(N: int, lo: float = 1.0, hi: float = 10.0, level: float = 0.5,
                   resolution: float = 0.05) -> float:
    """Bisect for the loop weight where ``p_peak`` falls through ``level``.

    Requires ``p_peak(lo) > level > p_peak(hi)``; returns the bracket midpoint
    once it is narrower than ``resolution``.
    """
    def excess(l):
        return find_peak(SearchParams(N, l)).p_peak - level

    if not excess(lo) > 0 > excess(hi):
        raise ValueError(f"p_peak - {level} does not change sign on [{lo}, {hi}]")
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
