"""
Checking the half-normal scheme
===============================

A bivariate generating function whose reciprocal splits as
g(z, u) + h(z, u) sqrt(1 - z/rho) near (rho, 1) has a half-normal limit when
g, h, g_u and g_uu vanish there and g_z, h_u do not.  The checker tests those
conditions and returns sigma = sqrt(2) h_u / (rho g_z).
"""

import math

from motzkin_lab import SchemeInstance, StepWeights, builtin_scheme, check_scheme, predict_law

# %%
# Returns to zero of zero-drift walks fit the scheme, and the sigma it
# produces is the one the limit-law table predicts.
for triple in [(1, 1, 1), (1, 3, 1), (2, 1, 2)]:
    w = StepWeights(*triple)
    rep = check_scheme(builtin_scheme("returns", w))
    print(triple, rep.passed, f"{rep.sigma:.6f}", f"{predict_law(w, 'returns_to_zero').sigma:.6f}",
          f"{math.sqrt(w.p_one / w.jump_dd(1)):.6f}")

# %%
# A broken instance is reported condition by condition.
bad = SchemeInstance.from_mapping({"rho": "1/3", "g": 0, "g_z": -3, "g_u": 1,
                                   "g_uu": 0, "h": 0, "h_u": -1})
print(check_scheme(bad).violations)
