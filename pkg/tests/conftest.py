"""Shared fixtures and independent oracles for the test suite.

The oracles deliberately avoid the package's own solver: transport costs are
checked against scipy's HiGHS LP and exhaustive permutation search, and
scalar subdivision against a hand-written numpy loop.
"""

import itertools

import numpy as np
import pytest
from scipy.optimize import linprog
from scipy.spatial.distance import cdist

from wspline import DiscreteMeasure, make_measure

# acceptance lines collected during the session and echoed in the summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def lp_ot_cost(a: DiscreteMeasure, b: DiscreteMeasure, p: float) -> float:
    """Kantorovich optimum via a dense LP (scipy HiGHS)."""
    C = cdist(a.support, b.support) ** p
    n, m = C.shape
    A_eq = np.zeros((n + m, n * m))
    for i in range(n):
        A_eq[i, i * m : (i + 1) * m] = 1.0
    for j in range(m):
        A_eq[n + j, j::m] = 1.0
    res = linprog(
        C.ravel(),
        A_eq=A_eq,
        b_eq=np.concatenate([a.weights, b.weights]),
        bounds=(0, None),
        method="highs",
    )
    assert res.status == 0
    return float(res.fun)


def brute_force_matching(x: np.ndarray, y: np.ndarray, p: float) -> float:
    """Mean cost of the best one-to-one assignment, by enumerating permutations."""
    C = cdist(x, y) ** p
    n = C.shape[0]
    rows = np.arange(n)
    return min(C[rows, list(perm)].sum() for perm in itertools.permutations(range(n))) / n


def scalar_lane_riesenfeld(points, R: int, M: int) -> np.ndarray:
    """Lane-Riesenfeld on R^d written out with explicit loops.

    Boundary rule: after doubling, each endpoint is repeated M - 1 extra times
    so every averaging pass keeps it fixed.
    """
    seq = [np.asarray(p, dtype=float).reshape(-1) for p in points]
    for _ in range(R):
        doubled = []
        for p in seq:
            doubled += [p, p]
        seq = [seq[0]] * (M - 1) + doubled + [seq[-1]] * (M - 1)
        for _ in range(M):
            seq = [(u + v) / 2 for u, v in zip(seq[:-1], seq[1:])]
    return np.array(seq)


def random_measure(rng, n, d=2, uniform=False, scale=1.0, shift=0.0):
    pts = shift + scale * rng.normal(size=(n, d))
    w = None if uniform else rng.uniform(0.2, 1.0, size=n)
    return make_measure(pts, w)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
