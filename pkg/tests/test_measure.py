import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from wspline import DiscreteMeasure, RefinementConfig, TimedSequence, make_measure, merge_duplicates
from wspline.errors import ConfigError, DimensionMismatch, EmptyMeasure, NonFinite


def test_uniform_default():
    m = make_measure([[0.0], [1.0]])
    np.testing.assert_array_equal(m.weights, [0.5, 0.5])


def test_normalization():
    m = make_measure([[0.0], [1.0]], [2, 2])
    np.testing.assert_array_equal(m.weights, [0.5, 0.5])


def test_zero_weight_atoms_dropped():
    m = make_measure([[0.0], [1.0], [2.0]], [1, 0, 1])
    np.testing.assert_array_equal(m.support, [[0.0], [2.0]])
    np.testing.assert_array_equal(m.weights, [0.5, 0.5])


def test_one_dimensional_points_become_columns():
    m = make_measure([0.0, 1.0, 2.0])
    assert m.support.shape == (3, 1)
    assert m.dim == 1 and m.n == 3


@pytest.mark.parametrize(
    "points, weights, exc",
    [
        (np.zeros((0, 2)), None, EmptyMeasure),
        ([[0.0], [1.0]], [0, 0], EmptyMeasure),
        ([[0.0], [np.nan]], None, NonFinite),
        ([[0.0], [1.0]], [1.0, np.inf], NonFinite),
        ([[0.0], [1.0]], [1.0], DimensionMismatch),
        ([[0.0], [1.0]], [1.0, -1.0], ValueError),
    ],
)
def test_make_measure_errors(points, weights, exc):
    with pytest.raises(exc):
        make_measure(points, weights)


def test_measure_is_read_only():
    m = make_measure([[0.0, 1.0], [2.0, 3.0]])
    with pytest.raises(ValueError):
        m.support[0, 0] = 5.0
    with pytest.raises(ValueError):
        m.weights[0] = 0.1


def test_constructor_rejects_bad_sum():
    with pytest.raises(ValueError):
        DiscreteMeasure(np.zeros((2, 1)), np.array([0.5, 0.6]))


def test_merge_exact_coincidence():
    m = make_measure([[0.0], [0.0]], [0.3, 0.7])
    out = merge_duplicates(m, 1e-9)
    np.testing.assert_array_equal(out.support, [[0.0]])
    np.testing.assert_allclose(out.weights, [1.0], atol=1e-15)


def test_merge_leaves_separated_atoms():
    m = make_measure([[0.0], [1.0]])
    out = merge_duplicates(m, 1e-9)
    assert out is m


def test_merge_weighted_mean():
    m = make_measure([[0.0], [1e-12]], [0.5, 0.5])
    out = merge_duplicates(m, 1e-9)
    assert out.n == 1
    assert out.support[0, 0] == pytest.approx(5e-13, rel=1e-12)
    assert out.weights[0] == pytest.approx(1.0, abs=1e-15)


def test_merge_chain_reaches_fixpoint():
    # 0 and 0.6e-9 merge, then the merged atom sits within tol of 1.2e-9
    pts = np.array([[0.0], [0.6e-9], [1.2e-9], [5.0]])
    out = merge_duplicates(make_measure(pts), 1e-9)
    d = np.abs(out.support[:, None, 0] - out.support[None, :, 0])
    np.fill_diagonal(d, np.inf)
    assert d.min() > 1e-9
    assert out.weights.sum() == pytest.approx(1.0, abs=1e-15)


def test_merge_negative_tol():
    with pytest.raises(ValueError):
        merge_duplicates(make_measure([[0.0]]), -1.0)


clouds = st.integers(1, 12).flatmap(
    lambda n: st.tuples(
        arrays(np.float64, (n, 2), elements=st.sampled_from([0.0, 1e-10, 5e-10, 1.0, 1.0 + 3e-10, 2.5])),
        arrays(np.float64, n, elements=st.floats(0.1, 5.0)),
    )
)


@settings(max_examples=150, deadline=None)
@given(clouds, st.sampled_from([1e-9, 1e-6, 0.0]))
def test_merge_properties(data, tol):
    pts, w = data
    m = make_measure(pts, w)
    once = merge_duplicates(m, tol)
    twice = merge_duplicates(once, tol)
    # idempotent
    assert once.same_as(twice)
    # no two atoms within tol
    if once.n > 1:
        d = np.linalg.norm(once.support[:, None] - once.support[None], axis=-1)
        np.fill_diagonal(d, np.inf)
        assert d.min() > tol
    assert abs(once.weights.sum() - 1.0) <= 1e-12
    # inputs untouched
    np.testing.assert_array_equal(m.support, make_measure(pts, w).support)


def test_timed_sequence_validation():
    a, b = make_measure([[0.0]]), make_measure([[1.0]])
    with pytest.raises(ValueError):
        TimedSequence((1.0, 0.5), (a, b))
    with pytest.raises(DimensionMismatch):
        TimedSequence((0.0, 1.0), (a, make_measure([[0.0, 1.0]])))
    seq = TimedSequence.uniform([a, b, a])
    assert seq.times == (0.0, 1.0, 2.0)
    assert seq.without(1).times == (0.0, 2.0)
    t, m = seq[1]
    assert t == 1.0 and m is b


@pytest.mark.parametrize(
    "kwargs",
    [
        {"degree": 0},
        {"level": -1},
        {"cost_exponent": 0.5},
        {"prune_threshold": 1.0},
        {"prune_threshold": -1e-3},
        {"merge_tolerance": -1.0},
        {"degree": 1.5},
    ],
)
def test_config_bounds(kwargs):
    with pytest.raises(ConfigError):
        RefinementConfig(**kwargs)


def test_config_defaults():
    cfg = RefinementConfig()
    assert cfg.as_dict() == {
        "degree": 2,
        "level": 7,
        "cost_exponent": 2.0,
        "prune_threshold": 1e-10,
        "merge_tolerance": 1e-9,
        "seed": 0,
    }
