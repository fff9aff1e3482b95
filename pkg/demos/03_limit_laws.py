"""
Which limit law?
================

The drift p_plus - p_minus decides the regime.  At zero drift the returns
to zero, sign changes and height of walks all scale like sqrt(n) with
half-normal limits, and sign changes of bridges are Rayleigh.  With a drift
most statistics stay bounded and become geometric, while the height of an
upward-drifting walk is asymptotically normal.
"""

from motzkin_lab import StepWeights, predict_law

pairs = [("returns_to_zero", "walk"), ("sign_changes", "walk"),
         ("sign_changes", "bridge"), ("height", "walk")]

# %%
for triple in [(1, 1, 1), (1, 1, 2), (2, 1, 1)]:
    w = StepWeights(*triple)
    print(f"weights {triple}, drift {w.drift}")
    for stat, family in pairs:
        print(f"   {stat:16s} {family:7s}", predict_law(w, stat, family).describe())
