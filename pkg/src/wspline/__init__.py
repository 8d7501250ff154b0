"""Trajectory inference on sequences of point clouds by consecutive optimal
transport averaging.

The Wasserstein Lane-Riesenfeld scheme (:func:`wlr_refine`) approximates a
degree-M B-spline through the clouds; :func:`four_point_refine` interpolates
them. Both are built on :func:`ot_average`, which moves two clouds along the
optimal transport geodesic joining them.
"""

__version__ = "0.1.0"

from .datasets import gen_converging_gaussian, gen_diverging_gaussian, load_sequence_csv, save_sequence_csv
from .evaluation import (
    EvalReport,
    evaluate,
    mean_metrics,
    metric_mse,
    metric_w1,
    nearest_cloud_baseline,
    predict_held_out,
    runtime_scaling_probe,
)
from .geodesic import geodesic_interpolant, ot_average
from .measure import DiscreteMeasure, RefinementConfig, TimedSequence, make_measure, merge_duplicates
from .ot import Coupling, CostMatrix, cost_matrix, optimal_coupling, solve_kantorovich, wasserstein_distance
from .subdivision import (
    RefinedSequence,
    cauchy_gaps,
    contraction_profile,
    delta_sup,
    expected_output_count,
    four_point_refine,
    lane_riesenfeld_linear,
    wlr_levels,
    wlr_refine,
)
from .trace import TrajectoryForest, assign_times, trace_paths

__all__ = [
    "Coupling",
    "CostMatrix",
    "DiscreteMeasure",
    "EvalReport",
    "RefinedSequence",
    "RefinementConfig",
    "TimedSequence",
    "TrajectoryForest",
    "assign_times",
    "cauchy_gaps",
    "contraction_profile",
    "cost_matrix",
    "delta_sup",
    "evaluate",
    "expected_output_count",
    "four_point_refine",
    "gen_converging_gaussian",
    "gen_diverging_gaussian",
    "geodesic_interpolant",
    "lane_riesenfeld_linear",
    "load_sequence_csv",
    "make_measure",
    "mean_metrics",
    "merge_duplicates",
    "metric_mse",
    "metric_w1",
    "nearest_cloud_baseline",
    "optimal_coupling",
    "ot_average",
    "predict_held_out",
    "runtime_scaling_probe",
    "save_sequence_csv",
    "solve_kantorovich",
    "trace_paths",
    "wasserstein_distance",
    "wlr_levels",
    "wlr_refine",
]
