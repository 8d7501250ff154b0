import itertools

import numpy as np
import pytest
from conftest import brute_force_matching, lp_ot_cost, random_measure
from hypothesis import given, settings
from hypothesis import strategies as st

from wspline import cost_matrix, make_measure, optimal_coupling, solve_kantorovich, wasserstein_distance
from wspline.errors import DimensionMismatch


def test_cost_single_pair():
    c = cost_matrix(make_measure([[0.0]]), make_measure([[3.0]]), 2)
    np.testing.assert_array_equal(c.values, [[9.0]])


def test_cost_hand_distances():
    c = cost_matrix(make_measure([[0.0], [1.0]]), make_measure([[1.0], [2.0]]), 1)
    np.testing.assert_array_equal(c.values, [[1.0, 2.0], [0.0, 1.0]])


def test_cost_pythagoras():
    c = cost_matrix(make_measure([[0.0, 0.0]]), make_measure([[3.0, 4.0]]), 2)
    assert c.values[0, 0] == pytest.approx(25.0, rel=1e-15)


def test_cost_general_exponent():
    c = cost_matrix(make_measure([[0.0]]), make_measure([[2.0]]), 3)
    assert c.values[0, 0] == pytest.approx(8.0)


def test_cost_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        cost_matrix(make_measure([[0.0]]), make_measure([[0.0, 1.0]]), 2)


def test_point_masses_forced_plan():
    a, b = make_measure([[0.0]]), make_measure([[3.0]])
    c = optimal_coupling(a, b, 1)
    np.testing.assert_array_equal(c.plan, [[1.0]])
    assert c.objective == 3.0


def _vertices_2x2(u, v):
    """All vertices of the 2x2 transport polytope with marginals u, v."""
    out = []
    for t in (max(0.0, u[0] - v[1]), min(u[0], v[0])):
        out.append(np.array([[t, u[0] - t], [v[0] - t, u[1] - v[0] + t]]))
    return out


def test_monotone_matching_on_line():
    a = make_measure([[0.0], [1.0]])
    b = make_measure([[1.0], [2.0]])
    cost = cost_matrix(a, b, 1)
    c = solve_kantorovich(a, b, cost)
    best = min(float(np.sum(P * cost.values)) for P in _vertices_2x2(a.weights, b.weights))
    assert best == 1.0
    assert c.objective == pytest.approx(1.0, abs=1e-15)
    np.testing.assert_allclose(c.plan, [[0.5, 0.0], [0.0, 0.5]], atol=1e-15)


def test_split_plan_enumerated():
    a = make_measure([[0.0]])
    b = make_measure([[-1.0], [1.0]])
    c = optimal_coupling(a, b, 2)
    # a single source row must equal the target marginal
    np.testing.assert_allclose(c.plan, [[0.5, 0.5]], atol=1e-15)
    assert c.objective == pytest.approx(1.0, abs=1e-15)


def test_wasserstein_examples():
    assert wasserstein_distance(make_measure([[0.0]]), make_measure([[3.0]]), 2) == pytest.approx(3.0)
    a = make_measure([[0.0], [1.0]])
    b = make_measure([[1.0], [2.0]])
    assert wasserstein_distance(a, b, 1) == pytest.approx(1.0, abs=1e-15)
    m = random_measure(np.random.default_rng(0), 7)
    for p in (1, 2, 3):
        assert wasserstein_distance(m, m, p) == 0.0
        assert wasserstein_distance(m, make_measure(m.support, m.weights), p) == pytest.approx(0.0, abs=1e-7)


def test_lp_oracle_random(rng):
    for _ in range(60):
        n, m = rng.integers(1, 9, size=2)
        a = random_measure(rng, n, d=int(rng.integers(1, 4)))
        b = random_measure(rng, m, d=a.dim)
        for p in (1.0, 2.0):
            c = optimal_coupling(a, b, p)
            assert c.objective == pytest.approx(lp_ot_cost(a, b, p), rel=1e-9, abs=1e-12)
            assert np.abs(c.plan.sum(axis=1) - a.weights).max() <= 1e-9
            assert np.abs(c.plan.sum(axis=0) - b.weights).max() <= 1e-9
            assert (c.plan >= 0).all()
            # vertex solution
            assert np.count_nonzero(c.plan) <= n + m - 1


def test_plan_is_vertex_under_degeneracy():
    # uniform equal-size problems are maximally degenerate
    rng = np.random.default_rng(1)
    for n in range(2, 30, 3):
        a = random_measure(rng, n, uniform=True)
        b = random_measure(rng, n, uniform=True)
        c = optimal_coupling(a, b, 2)
        assert np.count_nonzero(c.plan) <= 2 * n - 1
        assert np.count_nonzero(c.plan) == n


def test_matching_oracle(rng):
    for n in range(1, 7):
        for _ in range(5):
            x = rng.normal(size=(n, 2))
            y = rng.normal(size=(n, 2))
            obj = optimal_coupling(make_measure(x), make_measure(y), 2).objective
            assert abs(obj - brute_force_matching(x, y, 2)) <= 1e-9


def test_deterministic_ties():
    # four equidistant targets: many optimal vertices, same answer every time
    a = make_measure([[0.0, 0.0], [0.0, 0.0 + 1e-3]])
    b = make_measure([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    plans = [optimal_coupling(a, b, 2).plan for _ in range(3)]
    for P in plans[1:]:
        np.testing.assert_array_equal(P, plans[0])


def test_solver_input_untouched(rng):
    a = random_measure(rng, 5)
    b = random_measure(rng, 6)
    sa, wa = a.support.copy(), a.weights.copy()
    optimal_coupling(a, b)
    np.testing.assert_array_equal(a.support, sa)
    np.testing.assert_array_equal(a.weights, wa)


def test_cost_shape_mismatch():
    a, b = make_measure([[0.0], [1.0]]), make_measure([[0.0]])
    with pytest.raises(DimensionMismatch):
        solve_kantorovich(a, b, cost_matrix(b, a, 2))


seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=60, deadline=None)
@given(seeds, st.sampled_from([1.0, 2.0]))
def test_symmetry(seed, p):
    rng = np.random.default_rng(seed)
    a = random_measure(rng, int(rng.integers(1, 10)))
    b = random_measure(rng, int(rng.integers(1, 10)))
    assert abs(wasserstein_distance(a, b, p) - wasserstein_distance(b, a, p)) <= 1e-12


@settings(max_examples=60, deadline=None)
@given(seeds, st.sampled_from([1.0, 2.0, 3.0]))
def test_triangle_inequality(seed, p):
    rng = np.random.default_rng(seed)
    a, b, c = (random_measure(rng, int(rng.integers(1, 9))) for _ in range(3))
    ab = wasserstein_distance(a, b, p)
    bc = wasserstein_distance(b, c, p)
    ac = wasserstein_distance(a, c, p)
    assert ac <= ab + bc + 1e-9


@settings(max_examples=60, deadline=None)
@given(seeds, st.floats(0.01, 100.0), st.sampled_from([1.0, 2.0]))
def test_scaling(seed, s, p):
    rng = np.random.default_rng(seed)
    a = random_measure(rng, int(rng.integers(1, 9)))
    b = random_measure(rng, int(rng.integers(1, 9)))
    base = wasserstein_distance(a, b, p)
    scaled = wasserstein_distance(
        make_measure(s * a.support, a.weights), make_measure(s * b.support, b.weights), p
    )
    assert scaled == pytest.approx(s * base, rel=1e-9)


def test_permutation_enumeration_sanity():
    # the oracle itself: identity is optimal for sorted scalars
    x = np.arange(4.0)[:, None]
    assert brute_force_matching(x, x + 1, 2) == pytest.approx(1.0)
    assert len(list(itertools.permutations(range(4)))) == 24
