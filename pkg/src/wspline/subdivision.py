"""Subdivision schemes on point clouds: Lane-Riesenfeld (linear and
Wasserstein) and the interpolatory 4-point scheme.

Both Wasserstein schemes replace the affine average of classical
subdivision with :func:`~wspline.geodesic.ot_average`. One averaging pass
over a sequence of length L yields L - 1 clouds, one per consecutive pair.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import TooFewClouds, TooFewPoints
from .geodesic import geodesic_interpolant, ot_average
from .measure import DiscreteMeasure, RefinementConfig, TimedSequence
from .ot import wasserstein_distance

FOUR_POINT_W = 1.0 / 16.0


@dataclass(frozen=True)
class RefinedSequence:
    measures: tuple
    degree: int
    level: int
    scheme: str
    input_length: int

    def __len__(self) -> int:
        return len(self.measures)

    def __getitem__(self, idx):
        return self.measures[idx]

    def __iter__(self) -> Iterator[DiscreteMeasure]:
        return iter(self.measures)

    @property
    def meta(self) -> dict:
        return {
            "degree": self.degree,
            "level": self.level,
            "scheme": self.scheme,
            "input_length": self.input_length,
        }


def _as_measures(seq) -> list[DiscreteMeasure]:
    if isinstance(seq, TimedSequence):
        return list(seq.measures)
    return list(seq)


def _pairwise(fn: Callable, items: list, jobs: int) -> list:
    pairs = list(zip(items[:-1], items[1:]))
    if jobs > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda ab: fn(*ab), pairs))
    return [fn(x, y) for x, y in pairs]


def expected_output_count(T: int, R: int, M: int) -> int:
    """Length of the WLR output for T + 1 input clouds: 2^R (T + M - 1) + 2 - M."""
    if T < 1 or R < 0 or M < 1:
        raise ValueError("need T >= 1, R >= 0, M >= 1")
    return 2**R * (T + M - 1) + 2 - M


def _double_and_pad(items: list, M: int) -> list:
    # each endpoint ends up repeated M + 1 times, so M averaging passes return it unchanged
    doubled = [x for x in items for _ in (0, 1)]
    return [items[0]] * (M - 1) + doubled + [items[-1]] * (M - 1)


def lane_riesenfeld_linear(points, R: int, M: int) -> np.ndarray:
    """Classical Lane-Riesenfeld refinement of points in R^d.

    Uses the same endpoint padding as :func:`wlr_refine`, so running WLR on
    single-atom clouds reproduces this output.
    """
    y = np.asarray(points, dtype=float)
    if y.ndim == 1:
        y = y[:, None]
    if y.shape[0] < 2:
        raise TooFewPoints("Lane-Riesenfeld needs at least two points")
    if R < 0 or M < 1:
        raise ValueError("need R >= 0 and M >= 1")
    for _ in range(R):
        y = np.repeat(y, 2, axis=0)
        y = np.concatenate([np.repeat(y[:1], M - 1, axis=0), y, np.repeat(y[-1:], M - 1, axis=0)])
        for _ in range(M):
            y = 0.5 * (y[:-1] + y[1:])
    return y


def wlr_levels(
    seq, cfg: RefinementConfig | None = None, jobs: int = 1
) -> Iterator[list[DiscreteMeasure]]:
    """Yield the sequence after 0, 1, ..., cfg.level rounds of WLR."""
    cfg = cfg or RefinementConfig()
    clouds = _as_measures(seq)
    if len(clouds) < 2:
        raise TooFewClouds("WLR needs at least two clouds")
    M = cfg.degree

    def half(x, y):
        return ot_average(x, y, 0.5, cfg)

    yield clouds
    for _ in range(cfg.level):
        clouds = _double_and_pad(clouds, M)
        for _ in range(M):
            clouds = _pairwise(half, clouds, jobs)
        yield clouds


def wlr_refine(seq, cfg: RefinementConfig | None = None, jobs: int = 1) -> RefinedSequence:
    """Wasserstein Lane-Riesenfeld refinement of a cloud sequence.

    Every round doubles each cloud, repeats the two boundary clouds, and runs
    ``cfg.degree`` passes of midpoint OT averaging. The output has
    ``expected_output_count(T, R, M)`` clouds and starts and ends with the
    input endpoints (the same objects).
    """
    cfg = cfg or RefinementConfig()
    clouds = _as_measures(seq)
    out = clouds
    for out in wlr_levels(clouds, cfg, jobs):
        pass
    return RefinedSequence(tuple(out), cfg.degree, cfg.level, "wlr", len(clouds))


def four_point_levels(
    seq, R: int, w: float = FOUR_POINT_W, cfg: RefinementConfig | None = None, jobs: int = 1
) -> Iterator[list[DiscreteMeasure]]:
    """Yield the 4-point refinements for levels 0..R.

    Each round extends the sequence by one copy of each endpoint, inserts
    OT-av(OT-av(v_j, v_{j-1}, -2w), OT-av(v_{j+1}, v_{j+2}, -2w), 1/2)
    between every consecutive pair, and drops the two extension clouds
    again. Inputs therefore stay at the even positions and a sequence of
    length L becomes 2L - 1 long.
    """
    cfg = cfg or RefinementConfig()
    clouds = _as_measures(seq)
    if len(clouds) < 4:
        raise TooFewClouds(f"the 4-point scheme needs at least 4 clouds, got {len(clouds)}")
    if R < 0:
        raise ValueError("R must be >= 0")

    def insert(k, ext):
        xa = ot_average(ext[k], ext[k - 1], -2.0 * w, cfg)
        xb = ot_average(ext[k + 1], ext[k + 2], -2.0 * w, cfg)
        return ot_average(xa, xb, 0.5, cfg)

    yield clouds
    for _ in range(R):
        ext = [clouds[0]] + clouds + [clouds[-1]]
        ks = range(1, len(clouds))
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                inserted = list(pool.map(lambda k: insert(k, ext), ks))
        else:
            inserted = [insert(k, ext) for k in ks]
        refined = [clouds[0]]
        for mid, right in zip(inserted, clouds[1:]):
            refined += [mid, right]
        clouds = refined
        yield clouds


def four_point_refine(
    seq, R: int, w: float = FOUR_POINT_W, cfg: RefinementConfig | None = None, jobs: int = 1
) -> RefinedSequence:
    """Interpolatory Wasserstein 4-point refinement (tension ``w``, default 1/16)."""
    cfg = cfg or RefinementConfig()
    clouds = _as_measures(seq)
    out = clouds
    for out in four_point_levels(clouds, R, w, cfg, jobs):
        pass
    return RefinedSequence(tuple(out), cfg.degree, R, "four-point", len(clouds))


def delta_sup(seq: Sequence[DiscreteMeasure], p: float = 2.0) -> float:
    """Largest W_p distance between consecutive clouds."""
    seq = list(seq)
    if len(seq) < 2:
        raise ValueError("need at least two clouds")
    return max(wasserstein_distance(x, y, p) for x, y in zip(seq[:-1], seq[1:]))


def contraction_profile(seq, cfg: RefinementConfig, p: float | None = None) -> list[float]:
    """delta_sup of the WLR sequence at levels 0..cfg.level."""
    p = cfg.cost_exponent if p is None else p
    return [delta_sup(level, p) for level in wlr_levels(seq, cfg)]


def cauchy_gaps(
    seq, cfg: RefinementConfig, grid_size: int = 64, p: float | None = None
) -> list[float]:
    """sup over a dyadic t-grid of W_p(N_{R+1}(t), N_R(t)) for R = 0..cfg.level-1.

    N_R is the piecewise geodesic interpolant of the level-R WLR sequence.
    """
    p = cfg.cost_exponent if p is None else p
    ts = np.arange(grid_size + 1) / grid_size
    gaps = []
    prev = None
    for level in wlr_levels(seq, cfg):
        curve = [geodesic_interpolant(level, t, cfg) for t in ts]
        if prev is not None:
            gaps.append(max(wasserstein_distance(x, y, p) for x, y in zip(prev, curve)))
        prev = curve
    return gaps
