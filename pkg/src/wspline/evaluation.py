"""Leave-one-out evaluation of WLR trajectories.

An interior step is withheld, WLR is run on the remaining clouds, the
refined clouds are spread over the original time span and the piecewise
geodesic interpolant is read off at the withheld time. Predictions are
scored with W1 and, for uniform clouds of equal size, an assignment MSE.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import BoundaryHoldout
from .geodesic import geodesic_interpolant
from .measure import DiscreteMeasure, RefinementConfig, TimedSequence
from .ot import cost_matrix, wasserstein_distance
from .subdivision import wlr_refine
from .trace import assign_times

UNDEFINED = "undefined"
# refined clouds drift from exact 1/n weights by pruning round-off; treat
# anything this close as uniform
UNIFORM_RTOL = 1e-6


@dataclass(frozen=True)
class EvalReport:
    held_out_step: int
    w1: float
    mse: float | None
    mean_w1: float
    mean_mse: float | None
    runtime_seconds: float

    def to_json(self, config: RefinementConfig | None = None) -> dict:
        out = asdict(self)
        for key in ("mse", "mean_mse"):
            if out[key] is None:
                out[key] = UNDEFINED
        if config is not None:
            out["config"] = config.as_dict()
        return out


def _check_holdout(seq: TimedSequence, held: int) -> None:
    if len(seq) < 3:
        raise ValueError("leave-one-out needs at least three clouds")
    if held in (0, len(seq) - 1):
        raise BoundaryHoldout(f"step {held} is an endpoint; only interior steps can be held out")
    if not 0 < held < len(seq) - 1:
        raise IndexError(f"held-out step {held} out of range for {len(seq)} steps")


def predict_held_out(
    seq: TimedSequence, held: int, cfg: RefinementConfig | None = None, jobs: int = 1
) -> DiscreteMeasure:
    cfg = cfg or RefinementConfig()
    _check_holdout(seq, held)
    train = seq.without(held)
    refined = wlr_refine(train, cfg, jobs=jobs)
    t0, tT = seq.times[0], seq.times[-1]
    timed = assign_times(refined, t0, tT)
    s = (seq.times[held] - t0) / (tT - t0)
    return geodesic_interpolant(timed.measures, s, cfg)


def nearest_cloud_baseline(seq: TimedSequence, held: int) -> DiscreteMeasure:
    """Predict the withheld step by the retained cloud closest in time (earlier on ties)."""
    _check_holdout(seq, held)
    others = [k for k in range(len(seq)) if k != held]
    best = min(others, key=lambda k: (abs(seq.times[k] - seq.times[held]), k))
    return seq.measures[best]


def metric_w1(predicted: DiscreteMeasure, actual: DiscreteMeasure) -> float:
    return wasserstein_distance(predicted, actual, p=1.0)


def metric_mse(predicted: DiscreteMeasure, actual: DiscreteMeasure) -> float | None:
    """Mean squared distance under the optimal one-to-one assignment.

    Only defined for two uniform clouds with the same number of atoms;
    returns None otherwise. For such clouds the optimal transport plan is a
    permutation, found here directly as a linear assignment.
    """
    if predicted.n != actual.n:
        return None
    if not (predicted.is_uniform(UNIFORM_RTOL) and actual.is_uniform(UNIFORM_RTOL)):
        return None
    C = cost_matrix(predicted, actual, 2.0).values
    rows, cols = linear_sum_assignment(C)
    return float(C[rows, cols].mean())


def _mean_or_none(values):
    if any(v is None for v in values):
        return None
    return float(np.mean(values))


def mean_metrics(
    seq: TimedSequence, cfg: RefinementConfig | None = None, jobs: int = 1
) -> tuple[float, float | None]:
    """Average leave-one-out W1 and MSE over every interior step."""
    cfg = cfg or RefinementConfig()
    if len(seq) < 3:
        raise ValueError("leave-one-out needs at least three clouds")
    w1s, mses = [], []
    for held in range(1, len(seq) - 1):
        pred = predict_held_out(seq, held, cfg, jobs)
        actual = seq.measures[held]
        w1s.append(metric_w1(pred, actual))
        mses.append(metric_mse(pred, actual))
    return float(np.mean(w1s)), _mean_or_none(mses)


def evaluate(
    seq: TimedSequence, held: int, cfg: RefinementConfig | None = None, jobs: int = 1
) -> EvalReport:
    cfg = cfg or RefinementConfig()
    _check_holdout(seq, held)
    start = time.perf_counter()
    pred = predict_held_out(seq, held, cfg, jobs)
    runtime = time.perf_counter() - start
    actual = seq.measures[held]
    mean_w1, mean_mse = mean_metrics(seq, cfg, jobs)
    return EvalReport(
        held_out_step=held,
        w1=metric_w1(pred, actual),
        mse=metric_mse(pred, actual),
        mean_w1=mean_w1,
        mean_mse=mean_mse,
        runtime_seconds=runtime,
    )


def runtime_scaling_probe(
    seq: TimedSequence, levels=(3, 4, 5), degrees=(1, 2, 3), cfg: RefinementConfig | None = None
) -> list[dict]:
    """Wall-clock time of :func:`wlr_refine` over a grid of (R, M).

    Each row also carries ``r_growth``, the ratio to the row with the same M
    and the previous R (None for the first level). Diagnostic only.
    """
    base = cfg or RefinementConfig()
    rows = []
    prev: dict[int, float] = {}
    for R in levels:
        for M in degrees:
            c = RefinementConfig(
                degree=M,
                level=R,
                cost_exponent=base.cost_exponent,
                prune_threshold=base.prune_threshold,
                merge_tolerance=base.merge_tolerance,
                seed=base.seed,
            )
            start = time.perf_counter()
            wlr_refine(seq, c)
            seconds = time.perf_counter() - start
            growth = seconds / prev[M] if M in prev and prev[M] > 0 else None
            prev[M] = seconds
            rows.append({"R": R, "M": M, "seconds": seconds, "r_growth": growth})
    return rows
