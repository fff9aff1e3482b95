"""
Simulation against the exact answer
===================================

Seeded sampling with numpy's counter-based Philox generator.  The
histograms do not depend on the thread count, so a run is reproducible
from its seed alone.
"""

from motzkin_lab import SampleConfig, StepWeights, empirical_pmfs, pmf_exact
from motzkin_lab.sampler import goodness_of_fit

unit = StepWeights(1, 1, 1)
cfg = SampleConfig(unit, n=60, reps=200_000, seed=2024)

# %%
stats = ["returns_to_zero", "sign_changes", "height"]
emp = empirical_pmfs(cfg, stats)
for s in stats:
    fit = goodness_of_fit(emp[s], pmf_exact(unit, 60, s, "walk"))
    print(f"{s:16s} TV={fit.tv:.4f}  chi-square p={fit.pvalue:.3f}")

# %%
# Bridges by rejection: keep the walks that end at 0.
bridges = empirical_pmfs(cfg, ["sign_changes"], family="bridge")["sign_changes"]
print("accepted", int(bridges.total), "of", cfg.reps)
