"""
Counting weighted Motzkin paths
===============================

Steps are -1, 0 and +1 with weights (p_minus, p_zero, p_plus).  The
enumerator runs a dynamic program over (length, altitude) and returns exact
rational weights.
"""

from fractions import Fraction

from motzkin_lab import StepWeights, count_table, pmf_exact

# %%
# With unit weights every path has weight 1, so the tables are plain counts.
# Excursions are the Motzkin numbers, bridges the central trinomials.
unit = StepWeights(1, 1, 1)
for family in ("walk", "bridge", "meander", "excursion"):
    print(f"{family:9s}", [int(c) for c in count_table(unit, 8, family)])

# %%
# Weights can be any positive rationals.  The weight of a family is a
# polynomial in them; here half-weight down steps.
w = StepWeights(Fraction(1, 2), 1, 1)
print([str(c) for c in count_table(w, 5, "excursion")])

# %%
# A statistic splits the family total into a distribution.  Returns to zero
# over the nine walks of length 2: four never return, four return once and
# the flat walk returns twice.
pmf = pmf_exact(unit, 2, "returns_to_zero", "walk")
print({k: int(v) for k, v in pmf.weights.items()}, "total", int(pmf.total))

# %%
# Sign changes of bridges, and the height of walks, at n = 10.
for stat, family in [("sign_changes", "bridge"), ("height", "walk")]:
    pmf = pmf_exact(unit, 10, stat, family)
    print(stat, family, {k: int(v) for k, v in pmf.weights.items()})
    print("  mean", float(pmf.mean()), "variance", float(pmf.variance()))
