"""
Distributions from generating functions
=======================================

Everything is built from the small root u1(z) of the kernel
1 - z P(u) = 0.  The per-k series give the whole distribution, and a
jet in u about 1 gives mean and variance without listing any paths.
"""

from motzkin_lab import Model, StepWeights, base_series, gf_pmf, model_jet, pmf_exact

w = StepWeights(1, 2, 3)

# %%
# Exact series through z^30.  Bridges, excursions and meanders all come out
# of u1 by series arithmetic (square root by Newton iteration, no FFT).
base = base_series(w, 30)
print("u1 ", [int(c) for c in base.u1][:8])
print("B  ", [int(c) for c in base.B][:8])
print("E  ", [int(c) for c in base.E][:8])

# %%
# The coefficient extractor and the dynamic program agree exactly.
for model in Model:
    gf = gf_pmf(model, base, 30)
    dp = pmf_exact(w, 30, model.stat, model.family)
    print(f"{model.value:13s} identical: {gf.weights == dp.weights}")

# %%
# Float series read off probabilities directly and reach n in the thousands.
num = base_series(w, 2000, numeric=True)
jet = model_jet(Model.RETURNS_WALK, num)
for n in (10, 100, 1000, 2000):
    print(f"n={n:5d}  E[returns]={jet.mean(n):.4f}  Var={jet.variance(n):.4f}")
