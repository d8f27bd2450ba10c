# The noise family and the tail-decay diagnostic.
#
# The selector's guarantees ride on one property of the standardized noise:
# subset sums of squared coordinates must not exceed a linear budget by
# much, with exponentially decaying exceedance probability. All bundled
# models have it; the diagnostic estimates the decay empirically so a new
# model can be sanity-checked before use.

import numpy as np

from hullselect import (
    Ar1,
    BoundedUniform,
    IidGaussian,
    MeanOf,
    Rademacher,
    noise_model_from_spec,
    sample_noise,
    tail_decay_diagnostic,
)

rng = np.random.default_rng(0)

models = {
    "iid gaussian": IidGaussian(),
    "ar1(rho=0.5)": Ar1(0.5),
    "bounded uniform(1.5)": BoundedUniform(1.5),
    "rademacher": Rademacher(),
    "mean of 4 gaussians": MeanOf(IidGaussian(), 4),
}

print("sample moments over 50k draws:")
for name, model in models.items():
    x = sample_noise(model, 50_000, np.random.default_rng(1))
    print(f"  {name:<22} mean {x.mean():8.4f}  var {x.var():8.4f}")

# Averaging m replicates is how extra measurements buy a smaller effective
# noise intensity: the variance scales like 1/m.
for m in (1, 4, 16):
    x = sample_noise(MeanOf(IidGaussian(), m), 50_000, np.random.default_rng(2))
    print(f"  mean-of-{m:<2} variance {x.var():.4f}  (expect {1/m:.4f})")

# Models round-trip through their JSON spec form, which is what experiment
# configs embed.
spec = {"variant": "mean-of-m", "m": 4, "inner": {"variant": "ar1", "rho": 0.5}}
print("\nspec round-trip:", noise_model_from_spec(spec).to_spec() == spec)

print("\ntail-decay diagnostic (slope of log-survival per unit of margin):")
for name, model in models.items():
    report = tail_decay_diagnostic(
        model,
        n=200,
        per_coordinate_budget=2.0,
        m_grid=[float(m) for m in range(0, 21, 2)],
        subset_sizes=[10],
        reps=4000,
        rng=np.random.default_rng(3),
    )
    slope = "vanished" if report.fitted_slope is None else f"{report.fitted_slope:8.3f}"
    print(f"  {name:<22} slope {slope:>9}  passes {report.passes}")
