# %% One point splitting into two
# A point mass moving onto two half-weight atoms has only one feasible plan,
# so every refined cloud splits the mass and the traced forest branches once.
import json
from pathlib import Path

from wspline import RefinementConfig, TimedSequence, make_measure, trace_paths, wlr_refine
from wspline.plot import render_svg

out = Path("demo_output")
out.mkdir(exist_ok=True)

start = make_measure([[0.0, 0.0]])
end = make_measure([[-1.0, 2.0], [1.0, 2.0]])
refined = wlr_refine([start, end], RefinementConfig(degree=2, level=4))
print("clouds:", len(refined), "atoms per cloud:", [m.n for m in refined][:6], "...")

# %% Tracing
forest = trace_paths(refined, mass_threshold=0.0)
for nodes, mass in forest.paths():
    print(f"branch ending at {forest.node_pos[nodes[-1]]} carries mass {mass:.3f}")
print("branching nodes:", forest.branch_nodes())

(out / "split_forest.json").write_text(json.dumps(forest.to_json()))
svg = render_svg(TimedSequence.uniform(list(refined)), forest=forest)
(out / "split.svg").write_text(svg)
print("wrote", out / "split.svg")
