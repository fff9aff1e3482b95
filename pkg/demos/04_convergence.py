"""
How fast do the laws kick in?
=============================

Exact distributions at n = 400, 1600 and 3200 against their limits.  A
halving of the Kolmogorov distance per fourfold n means the rate is
about n^(-1/2).
"""

from motzkin_lab import StepWeights, convergence_report, rate_estimate

unit = StepWeights(1, 1, 1)
ns = [400, 1600, 3200]

# %%
for stat, family in [("returns_to_zero", "walk"), ("height", "walk"), ("sign_changes", "bridge")]:
    rep = convergence_report(unit, stat, family, ns)
    ks = [(r.n, r.K) for r in rep.rows]
    print(f"{rep.model:13s}", "  ".join(f"K({n})={k:.4f}" for n, k in ks),
          f" slope {rate_estimate(ks):+.3f}")

# %%
# In a geometric regime the distribution is already the limit up to
# exponentially small terms.
rep = convergence_report(StepWeights(1, 1, 2), "returns_to_zero", "walk", [50, 100, 200])
for r in rep.rows:
    print(f"n={r.n:4d}  TV={r.TV:.2e}")

# %%
# The same report as CSV, ready for a spreadsheet or pandas.
print(convergence_report(unit, "returns_to_zero", "walk", [400, 1600]).to_csv())
