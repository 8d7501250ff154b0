"""Dependency-free SVG rendering of cloud sequences and traced paths."""

from __future__ import annotations

import numpy as np

from .errors import BadDims
from .measure import TimedSequence

WIDTH = 640
HEIGHT = 480
MARGIN = 24
MAX_RADIUS = 6.0


def _colour(frac: float) -> str:
    # blue at the first step, red at the last
    r = int(round(40 + 200 * frac))
    b = int(round(240 - 200 * frac))
    return f"#{r:02x}50{b:02x}"


def circle_radii(masses: np.ndarray, max_mass: float) -> np.ndarray:
    """Radii with circle area proportional to mass."""
    return MAX_RADIUS * np.sqrt(np.asarray(masses) / max_mass)


def render_svg(seq: TimedSequence, dims=(0, 1), forest=None) -> str:
    """One circle per atom (area proportional to mass), projected onto ``dims``.

    Edges of ``forest`` are drawn as line segments under the atoms.
    """
    i, j = (int(k) for k in dims)
    if not (0 <= i < seq.dim and 0 <= j < seq.dim) or i == j:
        raise BadDims(f"dims {i} {j} invalid for dimension {seq.dim}")
    pts = np.concatenate([m.support[:, [i, j]] for m in seq.measures])
    if forest is not None and forest.n_nodes:
        if forest.node_pos.shape[1] <= max(i, j):
            raise BadDims(f"dims {i} {j} invalid for the traced positions")
        pts = np.concatenate([pts, forest.node_pos[:, [i, j]]])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = np.where(hi - lo > 0, hi - lo, 1.0)
    scale = min((WIDTH - 2 * MARGIN) / span[0], (HEIGHT - 2 * MARGIN) / span[1])

    def xy(p):
        x = MARGIN + (p[0] - lo[0]) * scale
        y = HEIGHT - MARGIN - (p[1] - lo[1]) * scale
        return x, y

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if forest is not None and forest.n_edges:
        top = forest.edge_mass.max()
        out.append('<g class="trace" stroke="#555555" fill="none">')
        for u, v, m in zip(forest.edge_src, forest.edge_dst, forest.edge_mass):
            x1, y1 = xy(forest.node_pos[u, [i, j]])
            x2, y2 = xy(forest.node_pos[v, [i, j]])
            out.append(
                f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
                f'stroke-opacity="{0.15 + 0.85 * m / top:.3f}" stroke-width="0.8"/>'
            )
        out.append("</g>")

    max_mass = max(m.weights.max() for m in seq.measures)
    steps = len(seq)
    for k, m in enumerate(seq.measures):
        colour = _colour(k / (steps - 1) if steps > 1 else 0.0)
        out.append(f'<g class="step" data-step="{k}" fill="{colour}" fill-opacity="0.8">')
        for p, r in zip(m.support[:, [i, j]], circle_radii(m.weights, max_mass)):
            x, y = xy(p)
            out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{r:.4f}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
