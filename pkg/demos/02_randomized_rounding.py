# %% [markdown]
# Randomized rounding at moderate scale
#
# Solve the LP on a random instance with general generators, then round
# the fractional coordinates many times and look at how far the rounded
# vector drifts from the fractional one.

# %%
import math

import numpy as np

from segcvp import INF, RngSpec, approx_solve, build_lp, gen_random_instance, prepare_lattice
from segcvp import randomized_round, round_sum_preserving, solve_lp

d = 40
inst = gen_random_instance(d, d, 8, INF, False, RngSpec(2024).generator())
lp = solve_lp(build_lp(inst))
prob = prepare_lattice(lp, inst)
print("LP value", lp.value, "| nonzero coefficients", lp.nonzero_u_count,
      "| fractional", sum(x != 0 for x in prob.x))

# %% Drift of b over 2000 roundings
G = np.array(inst.generators, dtype=float).T
b_star = G @ np.array([float(x) for x in lp.u_star])
samples = np.array([randomized_round(prob, RngSpec(7, t)) for t in range(2000)], dtype=float)
drift = np.abs(samples @ G.T - b_star).max(axis=1)
print(f"max drift {drift.max():.2f}, radius sqrt(4 d ln d) = {math.sqrt(4 * d * math.log(d)):.2f}")
print("drift quartiles", np.percentile(drift, [25, 50, 75]).round(2))

# %% Sum-preserving rounding pins the beam-on time to floor or ceil of the LP sum
sums = {sum(round_sum_preserving(prob, RngSpec(7, t))) for t in range(500)}
print("LP beam-on", float(prob.u_star_sum), "rounded sums seen", sorted(sums))

# %% Best of 32 trials
rep = approx_solve(inst, RngSpec(1), trials=32)
print(rep.status.value, "tc", rep.solution.tc, "vs LP", rep.lp_value)
