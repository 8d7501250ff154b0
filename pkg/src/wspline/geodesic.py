"""Averaging of point clouds along optimal transport geodesics."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import EmptyAfterPrune
from .measure import DiscreteMeasure, RefinementConfig, merge_duplicates
from .ot import optimal_coupling

DEFAULT_CONFIG = RefinementConfig()


def ot_average(
    a: DiscreteMeasure, b: DiscreteMeasure, alpha: float, cfg: RefinementConfig | None = None
) -> DiscreteMeasure:
    """Push the optimal coupling of ``a`` and ``b`` through (1 - alpha) x + alpha y.

    For alpha in [0, 1] this is the point at parameter alpha on the
    Wasserstein geodesic from ``a`` to ``b``. Other values extrapolate along
    the same plan. Plan entries at or below ``cfg.prune_threshold`` are
    dropped before the weights are renormalized, and coincident atoms are
    merged.
    """
    cfg = cfg or DEFAULT_CONFIG
    if a is b or a.same_as(b):
        # identical clouds: the identity plan is the unique optimum
        return a
    coupling = optimal_coupling(a, b, cfg.cost_exponent)
    rows, cols = coupling.support(cfg.prune_threshold)
    if rows.size == 0:
        raise EmptyAfterPrune(
            f"no plan entry exceeds the prune threshold {cfg.prune_threshold}"
        )
    alpha = float(alpha)
    points = (1.0 - alpha) * a.support[rows] + alpha * b.support[cols]
    mass = coupling.plan[rows, cols]
    mass = mass / mass.sum()
    return merge_duplicates(DiscreteMeasure(points, mass), cfg.merge_tolerance)


def locate(t: float, length: int) -> tuple[int, float]:
    """Segment index and local offset of parameter ``t`` on ``length`` evenly spaced knots."""
    if length < 2:
        raise ValueError("need at least two knots")
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    x = t * (length - 1)
    i = min(int(math.floor(x)), length - 2)
    return i, x - i


def geodesic_interpolant(
    seq: Sequence[DiscreteMeasure], t: float, cfg: RefinementConfig | None = None
) -> DiscreteMeasure:
    """Evaluate the piecewise geodesic curve through ``seq`` at ``t`` in [0, 1].

    Knot k sits at parameter k / (len(seq) - 1).
    """
    seq = list(seq)
    i, s = locate(t, len(seq))
    if s == 0.0:
        return seq[i]
    if t == 1.0 or s == 1.0:
        return seq[i + 1]
    return ot_average(seq[i], seq[i + 1], s, cfg)


def sample_interpolant(
    seq: Sequence[DiscreteMeasure], ts, cfg: RefinementConfig | None = None
) -> list[DiscreteMeasure]:
    return [geodesic_interpolant(seq, float(t), cfg) for t in np.asarray(ts, dtype=float)]
