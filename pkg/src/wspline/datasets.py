"""Synthetic cloud sequences and the CSV sequence format.

Random numbers come from :func:`numpy.random.default_rng` (PCG64), whose
streams are stable across platforms for a given seed.

CSV layout, one sequence per file::

    step,time,mass,x0,x1,...,x{d-1}

Rows are sorted by step and every row of a step carries the same time.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import BadConfig, ParseError
from .measure import TimedSequence, make_measure


def _directions(k: int, d: int) -> np.ndarray:
    """k unit vectors fanning out in the first two coordinates."""
    dirs = np.zeros((k, d))
    if d == 1:
        dirs[:, 0] = np.where(np.arange(k) % 2 == 0, 1.0, -1.0)
        return dirs
    angles = np.pi / 2 + np.linspace(-np.pi / 3, np.pi / 3, k) if k > 1 else np.array([np.pi / 2])
    dirs[:, 0] = np.cos(angles)
    dirs[:, 1] = np.sin(angles)
    return dirs


def _split(n: int, k: int) -> list[int]:
    base, extra = divmod(n, k)
    return [base + (1 if c < extra else 0) for c in range(k)]


def gen_diverging_gaussian(
    seed: int,
    n: int = 200,
    steps: int = 4,
    d: int = 2,
    branches: int = 3,
    speed: float = 2.0,
    spread: float = 0.15,
) -> TimedSequence:
    """A tight cluster at the origin that splits into ``branches`` arms moving outwards.

    At step s each arm is an isotropic Gaussian with mean ``speed * s`` along
    its direction and standard deviation ``spread * (1 + s)``. Steps sit at
    times 0, 1, ..., steps - 1 and every point has mass 1/n.
    """
    if n < 1 or steps < 2 or d < 1 or branches < 1:
        raise BadConfig("need n >= 1, steps >= 2, d >= 1, branches >= 1")
    if not (speed > 0 and spread > 0):
        raise BadConfig("speed and spread must be positive")
    rng = np.random.default_rng(seed)
    dirs = _directions(branches, d)
    measures = []
    for s in range(steps):
        sigma = spread * (1 + s)
        if s == 0:
            pts = rng.normal(scale=sigma, size=(n, d))
        else:
            pts = np.concatenate(
                [
                    speed * s * dirs[c] + rng.normal(scale=sigma, size=(cnt, d))
                    for c, cnt in enumerate(_split(n, branches))
                ]
            )
        measures.append(make_measure(pts))
    return TimedSequence.uniform(measures)


# second-axis centres of the mixture components at each step
_CONVERGING_LAYOUT = [
    [0.0],
    [-2.0, 0.0, 2.0],
    [-1.0, 1.0],
    [0.0],
]


def gen_converging_gaussian(
    seed: int,
    counts: Sequence[int] = (32, 96, 64, 32),
    d: int = 2,
    spread: float = 0.25,
    step_size: float = 2.0,
) -> TimedSequence:
    """Gaussian mixtures that branch out and then merge again.

    The number of mixture components per step follows 1, 3, 2, 1 (cycled
    for longer ``counts``); step s is centred at x = ``step_size * s`` and
    its components are spread along the second axis.
    """
    counts = [int(c) for c in counts]
    if len(counts) < 2 or min(counts) < 1 or d < 1:
        raise BadConfig("need at least two steps, positive counts and d >= 1")
    if spread <= 0:
        raise BadConfig("spread must be positive")
    rng = np.random.default_rng(seed)
    measures = []
    for s, n in enumerate(counts):
        centres = _CONVERGING_LAYOUT[s % len(_CONVERGING_LAYOUT)]
        k = min(len(centres), n)
        chunks = []
        for c, cnt in enumerate(_split(n, k)):
            mean = np.zeros(d)
            mean[0] = step_size * s
            if d > 1:
                mean[1] = centres[c]
            chunks.append(mean + rng.normal(scale=spread, size=(cnt, d)))
        measures.append(make_measure(np.concatenate(chunks)))
    return TimedSequence.uniform(measures)


def save_sequence_csv(seq: TimedSequence, path) -> Path:
    path = Path(path)
    header = ["step", "time", "mass"] + [f"x{k}" for k in range(seq.dim)]
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for step, (t, m) in enumerate(seq):
            for x, w in zip(m.support, m.weights):
                writer.writerow([step, repr(float(t)), repr(float(w))] + [repr(float(v)) for v in x])
    return path


def load_sequence_csv(path) -> TimedSequence:
    """Read a sequence written by :func:`save_sequence_csv` (or by hand)."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        d = len(header) - 3
        if header[:3] != ["step", "time", "mass"] or d < 1:
            raise ParseError(f"{path}: header must be step,time,mass,x0,... got {header}")
        if header[3:] != [f"x{k}" for k in range(d)]:
            raise ParseError(f"{path}: coordinate columns must be x0..x{d - 1}")

        steps: list[tuple[float, list, list]] = []
        last_step = None
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != d + 3:
                raise ParseError(f"{path}:{lineno}: expected {d + 3} fields, got {len(row)}")
            try:
                step = int(row[0])
                t, w = float(row[1]), float(row[2])
                x = [float(v) for v in row[3:]]
            except ValueError as exc:
                raise ParseError(f"{path}:{lineno}: {exc}") from None
            if not all(math.isfinite(v) for v in [t, w, *x]):
                raise ParseError(f"{path}:{lineno}: non-finite value")
            if w < 0:
                raise ParseError(f"{path}:{lineno}: negative mass {w}")
            if step != last_step:
                if last_step is not None and step != last_step + 1:
                    raise ParseError(f"{path}:{lineno}: step {step} follows step {last_step}")
                if last_step is None and step != 0:
                    raise ParseError(f"{path}:{lineno}: first step must be 0, got {step}")
                if steps and t <= steps[-1][0]:
                    raise ParseError(f"{path}:{lineno}: times must increase, {t} after {steps[-1][0]}")
                steps.append((t, [], []))
                last_step = step
            elif t != steps[-1][0]:
                raise ParseError(f"{path}:{lineno}: step {step} has inconsistent times")
            steps[-1][1].append(x)
            steps[-1][2].append(w)
    if not steps:
        raise ParseError(f"{path}: no data rows")
    try:
        measures = [make_measure(np.array(pts), np.array(ws)) for _, pts, ws in steps]
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from None
    return TimedSequence(tuple(t for t, _, _ in steps), tuple(measures))
