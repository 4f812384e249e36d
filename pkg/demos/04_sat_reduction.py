# %% [markdown]
# From 3SAT-6 to a two-row decomposition
#
# Each variable owns a six-column block in the first row and each clause a
# five-column block in the second. A truth assignment picks segments whose
# first-row pieces tile every variable block; a clause block can be tiled
# exactly when at least one of its literals is true.

# %%
import itertools

from segcvp import assignment_to_plan, brute_force_maxsat, brute_force_opt, gen_sat36, reduce_3sat6
from segcvp import RngSpec

formula = gen_sat36(4, RngSpec(341).generator())
print(formula.to_text())
red = reduce_3sat6(formula)
inst = red.matrix_instance
print(f"matrix {inst.m}x{inst.n}, {len(red.segments)} segments")

# %% Every assignment: total change equals the number of falsified clauses
for bits in itertools.product((False, True), repeat=formula.s):
    plan = assignment_to_plan(red, bits)
    print("".join("T" if b else "F" for b in bits), "tc", plan.tc, "satisfied", formula.satisfied(bits))

# %% The optimum of the reduced instance matches t minus MaxSAT
opt = brute_force_opt(inst.to_cvp())
print("optimal tc", opt.solution.tc, "| t - maxsat", formula.t - brute_force_maxsat(formula))
