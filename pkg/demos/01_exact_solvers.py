# %% [markdown]
# Exact solvers side by side
#
# Three routes to an optimal decomposition: the LP relaxation, min-cost
# flow (interval generators only) and plain enumeration. On interval
# generators all three agree; on general generators the LP can sit strictly
# below the integer optimum.

# %%
from segcvp import CvpInstance, INF, ObjectiveWeights, build_lp, build_network, brute_force_opt
from segcvp import interval_indicator, min_cost_flow, solve_lp

# %% A small interval instance
d = 6
intervals = [(1, 2), (2, 5), (3, 3), (4, 6)]
gens = [interval_indicator(iv, d) for iv in intervals]
a = (2, 3, 4, 2, 1, 1)
inst = CvpInstance(a, gens, cap=1)

lp = solve_lp(build_lp(inst))
net = build_network(inst)
flow = min_cost_flow(net)
oracle = brute_force_opt(inst)
print("LP value   ", lp.value, "u* =", [str(x) for x in lp.u_star])
print("flow cost  ", flow.cost)
print("enumerated ", oracle.solution.objective, "u =", oracle.solution.u)

# %% The flow network, one arc per line
print(net.to_edgelist())

# %% Beam-on time enters the objective through the generator arcs
weighted = inst.with_weights(ObjectiveWeights(1, 1))
print("with nu=1:", solve_lp(build_lp(weighted)).value, min_cost_flow(build_network(weighted)).cost)

# %% A triangle of pairwise overlaps: the LP splits every generator in half
tri = CvpInstance((1, 1, 1), [(1, 1, 0), (0, 1, 1), (1, 0, 1)], INF)
lp = solve_lp(build_lp(tri))
print("LP", lp.value, [str(x) for x in lp.u_star], "vs integer optimum", brute_force_opt(tri).solution.objective)
