# %% Leave-one-out evaluation
# Hold out the middle step, refit with WLR and compare the prediction to
# the withheld cloud and to a naive nearest-in-time guess.
import time

from wspline import (
    RefinementConfig,
    gen_converging_gaussian,
    gen_diverging_gaussian,
    metric_mse,
    metric_w1,
    nearest_cloud_baseline,
    predict_held_out,
)

cfg = RefinementConfig(degree=2, level=6)
for name, gen in (("diverging", gen_diverging_gaussian), ("converging", gen_converging_gaussian)):
    seq = gen(0)
    tic = time.perf_counter()
    pred = predict_held_out(seq, 2, cfg)
    actual = seq.measures[2]
    base = nearest_cloud_baseline(seq, 2)
    print(
        f"{name:>10}: WLR W1 {metric_w1(pred, actual):.3f}, baseline W1 {metric_w1(base, actual):.3f}, "
        f"MSE {metric_mse(pred, actual)}, {time.perf_counter() - tic:.1f}s"
    )

# %% Runtime against R
from wspline import runtime_scaling_probe

small = gen_diverging_gaussian(0, n=50)
for row in runtime_scaling_probe(small, levels=(3, 4, 5), degrees=(2,)):
    print(row)
