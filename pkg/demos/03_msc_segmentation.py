# %% [markdown]
# Leaf sequencing with a minimum opening width
#
# Every open leaf pair must span at least `lam` columns. The allowed
# segments form a product over rows, so each row is solved on its own and
# the row plans are stacked into matrix segments slice by slice.

# %%
from segcvp import EMPTY, INF, MatrixInstance, MinSeparation, msc_row_intervals, solve_msc, solve_row

A = (
    (0, 2, 3, 3, 1),
    (1, 3, 4, 2, 2),
    (0, 1, 1, 1, 0),
)

# %% A lone peak cannot be built from wide openings
print("width-3 openings:", msc_row_intervals(5, 3))
print("exact:", solve_row((1, 1, 4, 1, 1), msc_row_intervals(5, 3), cap=0).status.value)
best = solve_row((1, 1, 4, 1, 1), msc_row_intervals(5, 3), cap=INF)
print("closest:", best.solution.b, "tc", best.solution.tc)

# %% Whole matrix
for lam in (1, 2, 3):
    plan = solve_msc(MatrixInstance(A, MinSeparation(lam), cap=INF))
    print(f"lam={lam}: tc={plan.tc} beam-on={plan.bot} segments={len(plan.terms)}")

plan = solve_msc(MatrixInstance(A, MinSeparation(2), cap=INF))
for seg, coef in plan.terms:
    rows = ["closed" if iv is EMPTY else f"[{iv[0]},{iv[1]}]" for iv in seg.rows]
    print(f"  x{coef}: " + "  ".join(rows))
print("delivered:")
for row in plan.realized:
    print("  ", row)
