"""Weighted point clouds, timed sequences and refinement settings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import ConfigError, DimensionMismatch, EmptyMeasure, NonFinite

WEIGHT_SUM_TOL = 1e-12


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """A finitely supported probability measure on R^d.

    ``support`` is an (n, d) array of atom positions and ``weights`` the n
    positive masses summing to one. Both arrays are read-only; atoms keep the
    order they were given in.
    """

    support: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        support = np.array(self.support, dtype=np.float64)
        weights = np.array(self.weights, dtype=np.float64)
        if support.ndim != 2:
            raise DimensionMismatch(f"support must be an (n, d) array, got shape {support.shape}")
        if weights.ndim != 1 or weights.shape[0] != support.shape[0]:
            raise DimensionMismatch(
                f"{support.shape[0]} atoms but weights have shape {weights.shape}"
            )
        if support.shape[0] == 0:
            raise EmptyMeasure("measure has no atoms")
        if not (np.all(np.isfinite(support)) and np.all(np.isfinite(weights))):
            raise NonFinite("support and weights must be finite")
        if np.any(weights <= 0):
            raise EmptyMeasure("every atom must carry positive mass")
        if abs(weights.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights sum to {weights.sum()!r}, expected 1")
        object.__setattr__(self, "support", _frozen(support))
        object.__setattr__(self, "weights", _frozen(weights))

    @property
    def n(self) -> int:
        return self.support.shape[0]

    @property
    def dim(self) -> int:
        return self.support.shape[1]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"DiscreteMeasure(n={self.n}, dim={self.dim})"

    def is_uniform(self, rtol: float = 1e-9) -> bool:
        return bool(np.allclose(self.weights, 1.0 / self.n, rtol=rtol, atol=0.0))

    def same_as(self, other: "DiscreteMeasure", atol: float = 0.0) -> bool:
        """Atom-for-atom comparison (order sensitive)."""
        if self is other:
            return True
        if self.support.shape != other.support.shape:
            return False
        if atol == 0.0:
            return bool(
                np.array_equal(self.support, other.support)
                and np.array_equal(self.weights, other.weights)
            )
        return bool(
            np.allclose(self.support, other.support, rtol=0.0, atol=atol)
            and np.allclose(self.weights, other.weights, rtol=0.0, atol=atol)
        )

    def translated(self, shift) -> "DiscreteMeasure":
        return DiscreteMeasure(self.support + np.asarray(shift, dtype=float), self.weights)


def make_measure(points, weights=None) -> DiscreteMeasure:
    """Build a measure from raw points, normalizing and dropping zero-mass atoms.

    >>> make_measure([[0.0], [1.0], [2.0]], [1, 0, 1]).weights
    array([0.5, 0.5])
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2:
        raise DimensionMismatch(f"points must be an (n, d) array, got shape {pts.shape}")
    if pts.shape[0] == 0:
        raise EmptyMeasure("no points given")
    if not np.all(np.isfinite(pts)):
        raise NonFinite("points contain NaN or infinity")
    if weights is None:
        w = np.full(pts.shape[0], 1.0 / pts.shape[0])
    else:
        w = np.asarray(weights, dtype=np.float64).ravel()
        if w.shape[0] != pts.shape[0]:
            raise DimensionMismatch(f"{pts.shape[0]} points but {w.shape[0]} weights")
        if not np.all(np.isfinite(w)):
            raise NonFinite("weights contain NaN or infinity")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        keep = w > 0
        if not np.any(keep):
            raise EmptyMeasure("all weights are zero")
        pts, w = pts[keep], w[keep]
        w = w / w.sum()
    return DiscreteMeasure(pts, w)


def _greedy_clusters(support: np.ndarray, tol: float) -> np.ndarray | None:
    pairs = cKDTree(support).query_pairs(tol, output_type="ndarray")
    if len(pairs) == 0:
        return None
    n = support.shape[0]
    neighbours: list[list[int]] = [[] for _ in range(n)]
    for i, j in pairs:
        neighbours[min(i, j)].append(max(i, j))
    labels = np.full(n, -1, dtype=np.int64)
    n_clusters = 0
    for i in range(n):
        if labels[i] != -1:
            continue
        labels[i] = n_clusters
        for j in neighbours[i]:
            if labels[j] == -1:
                labels[j] = n_clusters
        n_clusters += 1
    return labels


def merge_duplicates(m: DiscreteMeasure, tol: float = 1e-9) -> DiscreteMeasure:
    """Merge atoms lying within ``tol`` of each other.

    Clusters are grown greedily in support order around a seed atom; each
    cluster collapses to its mass-weighted mean. Passes repeat until no two
    atoms are within ``tol``, so the result is a fixed point.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    support, weights = m.support, m.weights
    changed = False
    while support.shape[0] > 1:
        labels = _greedy_clusters(support, tol)
        if labels is None:
            break
        changed = True
        k = labels.max() + 1
        mass = np.bincount(labels, weights=weights, minlength=k)
        merged = np.empty((k, support.shape[1]))
        for c in range(k):
            members = labels == c
            pts = support[members]
            if np.all(pts == pts[0]):
                merged[c] = pts[0]
            else:
                merged[c] = weights[members] @ pts / mass[c]
        support, weights = merged, mass
    if not changed:
        return m
    return DiscreteMeasure(support, weights / weights.sum())


@dataclass(frozen=True)
class TimedSequence:
    """Point clouds observed at strictly increasing times."""

    times: tuple
    measures: tuple

    def __post_init__(self):
        times = tuple(float(t) for t in self.times)
        measures = tuple(self.measures)
        if len(times) != len(measures):
            raise ValueError("times and measures differ in length")
        if not measures:
            raise EmptyMeasure("empty sequence")
        if any(not np.isfinite(t) for t in times):
            raise NonFinite("times must be finite")
        if any(t1 <= t0 for t0, t1 in zip(times, times[1:])):
            raise ValueError("times must be strictly increasing")
        dims = {m.dim for m in measures}
        if len(dims) != 1:
            raise DimensionMismatch(f"measures have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "measures", measures)

    @classmethod
    def uniform(cls, measures: Sequence[DiscreteMeasure], t0: float = 0.0, t1: float | None = None):
        """Place measures at evenly spaced times (unit spacing by default)."""
        n = len(measures)
        if t1 is None:
            t1 = t0 + n - 1
        return cls(tuple(np.linspace(t0, t1, n)), tuple(measures))

    @property
    def dim(self) -> int:
        return self.measures[0].dim

    def __len__(self) -> int:
        return len(self.measures)

    def __getitem__(self, idx):
        return self.times[idx], self.measures[idx]

    def __iter__(self) -> Iterator:
        return iter(zip(self.times, self.measures))

    def without(self, idx: int) -> "TimedSequence":
        keep = [k for k in range(len(self)) if k != idx]
        return TimedSequence(
            tuple(self.times[k] for k in keep), tuple(self.measures[k] for k in keep)
        )


@dataclass(frozen=True)
class RefinementConfig:
    degree: int = 2
    level: int = 7
    cost_exponent: float = 2.0
    prune_threshold: float = 1e-10
    merge_tolerance: float = 1e-9
    seed: int = 0

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 1:
            raise ConfigError(f"degree must be an integer >= 1, got {self.degree!r}")
        if int(self.level) != self.level or self.level < 0:
            raise ConfigError(f"level must be an integer >= 0, got {self.level!r}")
        if not self.cost_exponent >= 1:
            raise ConfigError(f"cost_exponent must be >= 1, got {self.cost_exponent!r}")
        if not 0 <= self.prune_threshold < 1:
            raise ConfigError(f"prune_threshold must lie in [0, 1), got {self.prune_threshold!r}")
        if not self.merge_tolerance >= 0:
            raise ConfigError(f"merge_tolerance must be >= 0, got {self.merge_tolerance!r}")
        object.__setattr__(self, "degree", int(self.degree))
        object.__setattr__(self, "level", int(self.level))
        object.__setattr__(self, "seed", int(self.seed))

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "level": self.level,
            "cost_exponent": self.cost_exponent,
            "prune_threshold": self.prune_threshold,
            "merge_tolerance": self.merge_tolerance,
            "seed": self.seed,
        }
