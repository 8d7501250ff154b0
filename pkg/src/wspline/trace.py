"""Per-particle trajectories through a refined sequence of point clouds."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import BadInterval
from .measure import RefinementConfig, TimedSequence
from .ot import optimal_coupling


def assign_times(refined, t0: float, tT: float) -> TimedSequence:
    """Spread the refined clouds evenly over [t0, tT], endpoints included."""
    if not t0 < tT:
        raise BadInterval(f"need t0 < tT, got [{t0}, {tT}]")
    clouds = list(refined)
    if len(clouds) < 2:
        raise ValueError("need at least two clouds")
    return TimedSequence(tuple(np.linspace(t0, tT, len(clouds))), tuple(clouds))


@dataclass(frozen=True)
class TrajectoryForest:
    """Atoms of every step as nodes, transported mass between steps as edges.

    Node ``k`` is atom ``node_atom[k]`` of step ``node_step[k]``; edges only
    join consecutive steps.
    """

    node_step: np.ndarray
    node_atom: np.ndarray
    node_pos: np.ndarray
    node_mass: np.ndarray
    edge_src: np.ndarray
    edge_dst: np.ndarray
    edge_mass: np.ndarray

    @property
    def n_nodes(self) -> int:
        return len(self.node_step)

    @property
    def n_edges(self) -> int:
        return len(self.edge_src)

    @property
    def n_steps(self) -> int:
        return int(self.node_step.max()) + 1 if self.n_nodes else 0

    @property
    def roots(self) -> np.ndarray:
        return np.flatnonzero(self.node_step == 0)

    def outflow(self) -> np.ndarray:
        return np.bincount(self.edge_src, weights=self.edge_mass, minlength=self.n_nodes)

    def inflow(self) -> np.ndarray:
        return np.bincount(self.edge_dst, weights=self.edge_mass, minlength=self.n_nodes)

    def children(self, node: int) -> np.ndarray:
        return self.edge_dst[self.edge_src == node]

    def branch_nodes(self) -> np.ndarray:
        """Nodes whose mass leaves along two or more edges."""
        counts = np.bincount(self.edge_src, minlength=self.n_nodes)
        return np.flatnonzero(counts >= 2)

    def paths(self) -> Iterator[tuple[list[int], float]]:
        """Enumerate root-to-leaf paths with the mass that follows each one.

        Mass leaving a node is split in proportion to its outgoing edges, so
        the path masses from one root add up to the root's mass.
        """
        out = {}
        for e in range(self.n_edges):
            out.setdefault(int(self.edge_src[e]), []).append(e)
        stack = [([int(r)], float(self.node_mass[r])) for r in self.roots[::-1]]
        while stack:
            path, mass = stack.pop()
            edges = out.get(path[-1], [])
            if not edges:
                yield path, mass
                continue
            total = sum(self.edge_mass[e] for e in edges)
            for e in reversed(edges):
                stack.append((path + [int(self.edge_dst[e])], mass * self.edge_mass[e] / total))

    def translated(self, shift) -> "TrajectoryForest":
        return TrajectoryForest(
            self.node_step,
            self.node_atom,
            self.node_pos + np.asarray(shift, dtype=float),
            self.node_mass,
            self.edge_src,
            self.edge_dst,
            self.edge_mass,
        )

    def to_json(self) -> dict:
        return {
            "nodes": [
                {
                    "step": int(s),
                    "atom": int(a),
                    "pos": [float(x) for x in p],
                    "mass": float(m),
                }
                for s, a, p, m in zip(self.node_step, self.node_atom, self.node_pos, self.node_mass)
            ],
            "edges": [
                {"from": int(u), "to": int(v), "mass": float(m)}
                for u, v, m in zip(self.edge_src, self.edge_dst, self.edge_mass)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TrajectoryForest":
        nodes, edges = data["nodes"], data["edges"]
        dim = len(nodes[0]["pos"]) if nodes else 0
        return cls(
            np.array([n["step"] for n in nodes], dtype=np.int64),
            np.array([n["atom"] for n in nodes], dtype=np.int64),
            np.array([n["pos"] for n in nodes], dtype=float).reshape(len(nodes), dim),
            np.array([n["mass"] for n in nodes], dtype=float),
            np.array([e["from"] for e in edges], dtype=np.int64),
            np.array([e["to"] for e in edges], dtype=np.int64),
            np.array([e["mass"] for e in edges], dtype=float),
        )


def trace_paths(
    refined, mass_threshold: float = 1e-8, cfg: RefinementConfig | None = None, jobs: int = 1
) -> TrajectoryForest:
    """Link atoms of consecutive clouds through their optimal couplings.

    Couplings are recomputed with ``cfg.cost_exponent``; plan entries above
    ``mass_threshold`` become edges. With a zero threshold every node's
    outgoing mass equals its own mass.
    """
    cfg = cfg or RefinementConfig()
    if not 0 <= mass_threshold < 1:
        raise ValueError(f"mass_threshold must lie in [0, 1), got {mass_threshold}")
    clouds = list(refined.measures if isinstance(refined, TimedSequence) else refined)
    if len(clouds) < 2:
        raise ValueError("need at least two clouds to trace")

    def plan(pair):
        a, b = pair
        return optimal_coupling(a, b, cfg.cost_exponent).plan

    pairs = list(zip(clouds[:-1], clouds[1:]))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            plans = list(pool.map(plan, pairs))
    else:
        plans = [plan(p) for p in pairs]

    offsets = np.concatenate([[0], np.cumsum([c.n for c in clouds])])
    node_step = np.concatenate([np.full(c.n, k, dtype=np.int64) for k, c in enumerate(clouds)])
    node_atom = np.concatenate([np.arange(c.n, dtype=np.int64) for c in clouds])
    node_pos = np.concatenate([c.support for c in clouds])
    node_mass = np.concatenate([c.weights for c in clouds])

    src, dst, mass = [], [], []
    for k, P in enumerate(plans):
        rows, cols = np.nonzero(P > mass_threshold)
        src.append(rows + offsets[k])
        dst.append(cols + offsets[k + 1])
        mass.append(P[rows, cols])
    return TrajectoryForest(
        node_step,
        node_atom,
        node_pos,
        node_mass,
        np.concatenate(src).astype(np.int64),
        np.concatenate(dst).astype(np.int64),
        np.concatenate(mass),
    )
