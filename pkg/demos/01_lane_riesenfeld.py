# %% Wasserstein Lane-Riesenfeld on single points
# With one atom per cloud, optimal transport has nothing to decide and the
# Wasserstein scheme collapses to the classical Lane-Riesenfeld refinement.
import numpy as np

from wspline import RefinementConfig, lane_riesenfeld_linear, make_measure, wlr_refine

control = np.array([[0.0, 0.0], [1.0, 2.0], [3.0, 2.5], [4.0, 0.0], [6.0, 1.0]])
clouds = [make_measure(p[None, :]) for p in control]

for M in (1, 2, 3):
    refined = wlr_refine(clouds, RefinementConfig(degree=M, level=5))
    curve = np.array([m.support[0] for m in refined])
    classical = lane_riesenfeld_linear(control, 5, M)
    print(f"M={M}: {len(curve)} points, max gap to classical LR = {np.abs(curve - classical).max():.1e}")

# %% The output count
# Each round doubles the clouds, pads both ends and runs M averaging passes,
# which gives 2^R (T + M - 1) + 2 - M clouds for T + 1 inputs.
from wspline import expected_output_count

for R in range(4):
    n = len(wlr_refine(clouds, RefinementConfig(degree=2, level=R)))
    print(f"R={R}: {n} clouds (formula {expected_output_count(len(clouds) - 1, R, 2)})")
