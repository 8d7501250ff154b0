# %% Interpolatory refinement with the 4-point rule
# Unlike WLR, the 4-point scheme keeps every input cloud in place and
# inserts new clouds between them. Linear data gets exact midpoints.
import numpy as np

from wspline import four_point_refine, make_measure, wasserstein_distance

line = [make_measure([[float(k)]]) for k in range(4)]
print("scalar:", [float(m.support[0, 0]) for m in four_point_refine(line, 1)])

# %% Point clouds
rng = np.random.default_rng(1)
clouds = [make_measure(rng.normal(scale=0.3, size=(12, 2)) + [k, np.sin(k)]) for k in range(5)]
refined = four_point_refine(clouds, 3)
print("refined length:", len(refined))
for k, m in enumerate(clouds):
    print(f"input {k} at position {k * 8}: W2 = {wasserstein_distance(refined[k * 8], m):.1e}")
