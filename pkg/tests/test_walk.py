import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wqwalk.errors import (
    BoundaryContamination,
    DimensionMismatch,
    IsolatedVertex,
    MovingShiftUnsupported,
    VertexOutOfRange,
)
from wqwalk.graph import build_graph, complete_graph, line_graph, random_weighted_graph
from wqwalk.walk import (
    ShiftKind,
    apply_coin,
    apply_shift,
    arc_state,
    coin_matrix,
    evolve,
    local_superposition,
    random_state,
    shift_matrix,
    step,
    vertex_means,
    vertex_probabilities,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def dense_coin(g):
    # independent of the arc blocks: reflect about s_v built from the edge weights
    n = g.n_arcs
    C = -np.eye(n)
    for v in range(g.vertex_count):
        idx = [i for i, a in enumerate(g.arcs.keys) if a[0] == v]
        s = np.array([math.sqrt(g.weight(v, g.arcs.keys[i][1])) for i in idx])
        s /= np.linalg.norm(s)
        C[np.ix_(idx, idx)] += 2 * np.outer(s, s)
    return C


def dense_flip_flop(g):
    n = g.n_arcs
    S = np.zeros((n, n))
    for i, (v, u) in enumerate(g.arcs.keys):
        S[g.arcs.index_of((u, v)), i] = 1
    return S


def test_local_superposition_star(star):
    w = 4.0
    expected = np.array([math.sqrt(w), 1, 1, 1]) / math.sqrt(w + 3)
    np.testing.assert_allclose(local_superposition(star, 0), expected, rtol=0, atol=1e-15)


def test_local_superposition_unweighted_is_uniform():
    g = complete_graph(7)
    np.testing.assert_allclose(local_superposition(g, 3), np.full(6, 1 / math.sqrt(6)), atol=1e-15)


def test_local_superposition_line_loop():
    l = 2.7
    g = line_graph(3, l)
    expected = np.array([1, math.sqrt(l), 1]) / math.sqrt(l + 2)
    np.testing.assert_allclose(local_superposition(g, 3), expected, atol=1e-15)
    with pytest.raises(VertexOutOfRange):
        local_superposition(g, 7)


def test_coin_star_example(star):
    psi = arc_state(star, {(0, u): 0.5 for u in (1, 2, 3, 4)})
    out = apply_coin(star, psi)
    expected = np.array([13, 3, 3, 3]) / 14
    np.testing.assert_allclose(out[:4], expected, atol=1e-15)
    np.testing.assert_allclose(dense_coin(star) @ psi, out, atol=1e-15)
    assert abs(np.linalg.norm(out) - 1) < 1e-15


def test_coin_fixed_point_and_sign_flip(star):
    fixed = np.concatenate([local_superposition(star, v) for v in range(5)]) / math.sqrt(5)
    np.testing.assert_allclose(apply_coin(star, fixed), fixed, atol=1e-15)
    # orthogonal to s_0 inside the centre block; leaves have 1-dim blocks so stay empty
    orth = np.zeros(star.n_arcs, dtype=complex)
    orth[:4] = [1, -2, 0, 0]
    orth[:4] -= local_superposition(star, 0) * (local_superposition(star, 0) @ orth[:4])
    np.testing.assert_allclose(apply_coin(star, orth), -orth, atol=1e-15)


def test_degree_one_coin_is_identity(star):
    leaf_arc = arc_state(star, {(2, 0): 1.0})
    np.testing.assert_array_equal(apply_coin(star, leaf_arc), leaf_arc)


def test_vertex_means_unweighted_is_arithmetic_mean(rng):
    g = complete_graph(5, 1.0)
    psi = random_state(g, rng)
    means = vertex_means(g, psi)
    for v in range(5):
        assert abs(means[v] - psi[g.arcs.block(v)].mean()) < 1e-15


def test_shifts_examples():
    g = line_graph(3)
    M = 3
    right = arc_state(g, {(M, M + 1): 1.0})
    assert apply_shift(g, right, "flipflop")[g.arcs.index_of((M + 1, M))] == 1
    assert apply_shift(g, right, "moving")[g.arcs.index_of((M + 1, M + 2))] == 1
    left = arc_state(g, {(M, M - 1): 1.0})
    assert apply_shift(g, left, "moving")[g.arcs.index_of((M - 1, M - 2))] == 1


def test_loop_arcs_fixed_by_both_shifts():
    g = line_graph(2, 3.0)
    loop = arc_state(g, {(2, 2): 1.0})
    for kind in ShiftKind:
        np.testing.assert_array_equal(apply_shift(g, loop, kind), loop)


def test_moving_shift_is_permutation_on_line():
    g = line_graph(4, 1.0)
    S = shift_matrix(g, "moving")
    np.testing.assert_array_equal(S @ S.T, np.eye(g.n_arcs))


def test_moving_shift_rejected_off_line():
    g = complete_graph(4)
    with pytest.raises(MovingShiftUnsupported):
        apply_shift(g, np.zeros(g.n_arcs), "moving")


def test_dimension_mismatch(star):
    with pytest.raises(DimensionMismatch):
        apply_coin(star, np.zeros(3))
    with pytest.raises(DimensionMismatch):
        vertex_probabilities(star, np.zeros(9))


def test_isolated_vertex_rejected():
    g = build_graph(3, [(0, 1, 1.0)])
    with pytest.raises(IsolatedVertex):
        apply_coin(g, np.zeros(g.n_arcs))


def test_evolve_zero_steps_is_identity(rng):
    g = complete_graph(4, 0.5)
    psi = random_state(g, rng)
    np.testing.assert_array_equal(evolve(g, psi, t=0), psi)


def test_k2_step_swaps_arcs():
    g = complete_graph(2)
    psi = np.array([0.6, 0.8j])
    np.testing.assert_array_equal(step(g, psi), [0.8j, 0.6])
    np.testing.assert_array_equal(dense_flip_flop(g) @ dense_coin(g) @ psi, [0.8j, 0.6])


def test_vertex_probabilities():
    g = complete_graph(6)
    single = arc_state(g, {(4, 1): 1.0})
    np.testing.assert_array_equal(vertex_probabilities(g, single), np.eye(6)[4])
    uniform = np.full(g.n_arcs, 1 / math.sqrt(g.n_arcs))
    np.testing.assert_allclose(vertex_probabilities(g, uniform), np.full(6, 1 / 6), atol=1e-15)


def test_boundary_contamination():
    g = line_graph(3, 1.0)
    psi = arc_state(g, {(3, 2): 1.0})
    evolve(g, psi, "moving", 2)
    with pytest.raises(BoundaryContamination):
        evolve(g, psi, "moving", 3)


def test_norm_conserved_over_1000_steps():
    g = line_graph(1001, 0.5)
    M = 1001
    psi = arc_state(g, {(M, M - 1): 1 / math.sqrt(2), (M, M + 1): 1j / math.sqrt(2)})
    out = evolve(g, psi, "moving", 1000)
    assert abs(np.linalg.norm(out) - 1) < 1e-9


def test_batched_columns_match_single(rng):
    g = complete_graph(4, 2.0)
    block = random_state(g, rng, size=3)
    batched = step(g, block)
    for j in range(3):
        np.testing.assert_allclose(batched[:, j], step(g, block[:, j]), atol=1e-15)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_coin_and_shift_match_dense_and_are_unitary(seed):
    rng = np.random.default_rng(seed)
    g = random_weighted_graph(rng)
    eye = np.eye(g.n_arcs)
    C, S = dense_coin(g), dense_flip_flop(g)
    np.testing.assert_allclose(C @ C.T, eye, atol=1e-12)
    np.testing.assert_allclose(S @ S.T, eye, atol=1e-12)
    np.testing.assert_allclose(coin_matrix(g), C, atol=1e-12)
    np.testing.assert_allclose(shift_matrix(g), S, atol=0)
    psi = random_state(g, rng)
    np.testing.assert_allclose(apply_coin(g, psi), C @ psi, atol=1e-12)
    np.testing.assert_array_equal(apply_shift(g, psi), S @ psi)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_reflection_and_involution_laws(seed):
    rng = np.random.default_rng(seed)
    g = random_weighted_graph(rng)
    psi = random_state(g, rng)
    np.testing.assert_allclose(apply_coin(g, apply_coin(g, psi)), psi, atol=1e-12)
    np.testing.assert_array_equal(apply_shift(g, apply_shift(g, psi)), psi)
    out = evolve(g, psi, t=25)
    assert abs(np.linalg.norm(out) - 1) < 1e-12
    assert abs(vertex_probabilities(g, out).sum() - 1) < 1e-12


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_unweighted_coin_inverts_about_mean(seed):
    rng = np.random.default_rng(seed)
    g = random_weighted_graph(rng, max_weight=1.0)
    g = build_graph(g.vertex_count, [(v, u, 1.0) for v, u, _ in g.edges])
    psi = random_state(g, rng)
    out = apply_coin(g, psi)
    for v in range(g.vertex_count):
        b = g.arcs.block(v)
        np.testing.assert_allclose(out[b], 2 * psi[b].mean() - psi[b], atol=1e-14)
