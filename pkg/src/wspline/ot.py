"""Exact discrete optimal transport between weighted point clouds."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from ._simplex import STATUS_MAX_ITER, STATUS_OPTIMAL, network_simplex
from .errors import DimensionMismatch, SolverFailure
from .measure import DiscreteMeasure

MARGINAL_TOL = 1e-9
# plan entries this small (relative to the largest weight) are round-off from
# marginals that agree only up to a few ulps; they are not real mass splits
ROUNDOFF_FLOOR = 1e-13


@dataclass(frozen=True)
class CostMatrix:
    values: np.ndarray
    exponent: float

    @property
    def shape(self) -> tuple:
        return self.values.shape


@dataclass(frozen=True)
class Coupling:
    """An optimal transport plan together with its cost <plan, C>."""

    plan: np.ndarray
    objective: float

    def support(self, threshold: float = 0.0):
        """Row-major (i, j) indices of plan entries strictly above ``threshold``."""
        return np.nonzero(self.plan > threshold)


def cost_matrix(a: DiscreteMeasure, b: DiscreteMeasure, p: float = 2.0) -> CostMatrix:
    """Pairwise costs ||x_i - y_j||^p between the supports of ``a`` and ``b``."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
    if p < 1:
        raise ValueError(f"cost exponent must be >= 1, got {p}")
    if p == 2:
        values = cdist(a.support, b.support, "sqeuclidean")
    else:
        values = cdist(a.support, b.support, "euclidean")
        if p != 1:
            values = values**p
    values.setflags(write=False)
    return CostMatrix(values, float(p))


def solve_kantorovich(
    a: DiscreteMeasure, b: DiscreteMeasure, cost: CostMatrix, max_iter: int | None = None
) -> Coupling:
    """Solve the Kantorovich linear program exactly with the network simplex.

    The returned plan is a basic solution, so it has at most
    ``a.n + b.n - 1`` nonzero entries.
    """
    C = np.asarray(cost.values, dtype=np.float64)
    if C.shape != (a.n, b.n):
        raise DimensionMismatch(f"cost has shape {C.shape}, expected {(a.n, b.n)}")
    if a.n == 1 or b.n == 1:
        # only one feasible plan
        plan = np.outer(a.weights, b.weights)
    else:
        scale = C.max()
        scaled = C / scale if scale > 0 else np.zeros_like(C)
        if max_iter is None:
            max_iter = 50 * (a.n + b.n) * max(a.n, b.n) + 10_000
        plan, status, _ = network_simplex(a.weights, b.weights, scaled, max_iter)
        if status != STATUS_OPTIMAL:
            reason = "iteration cap reached" if status == STATUS_MAX_ITER else "unbounded pivot"
            raise SolverFailure(f"network simplex failed: {reason}")
        floor = ROUNDOFF_FLOOR * max(a.weights.max(), b.weights.max())
        plan[plan <= floor] = 0.0
    row_err = np.abs(plan.sum(axis=1) - a.weights).max()
    col_err = np.abs(plan.sum(axis=0) - b.weights).max()
    if max(row_err, col_err) > MARGINAL_TOL:
        raise SolverFailure(f"marginal violation {max(row_err, col_err):.3e}")
    plan.setflags(write=False)
    return Coupling(plan, float(np.sum(plan * C)))


def optimal_coupling(a: DiscreteMeasure, b: DiscreteMeasure, p: float = 2.0) -> Coupling:
    return solve_kantorovich(a, b, cost_matrix(a, b, p))


def wasserstein_distance(a: DiscreteMeasure, b: DiscreteMeasure, p: float = 2.0) -> float:
    if a is b:
        return 0.0
    f = optimal_coupling(a, b, p).objective
    return max(f, 0.0) ** (1.0 / p)
