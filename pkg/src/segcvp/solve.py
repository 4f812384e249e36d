"""One entry point over the exact and approximate vector solvers."""
from __future__ import annotations

from .core import EMPTY, CvpInstance, SolveReport, Status, evaluate
from .flow import FlowStatus, build_network, flow_to_solution, min_cost_flow
from .lp import LpStatus, build_lp, solve_lp
from .oracle import OracleBudget, brute_force_opt
from .rounding import RngSpec, approx_solve

METHODS = ("auto", "lp", "flow", "round", "oracle")


class FractionalVertex(ValueError):
    pass


def solve_flow(instance: CvpInstance) -> SolveReport:
    """Exact solve through min-cost flow; all-zero generators get coefficient 0."""
    keep = [j for j, iv in enumerate(instance.intervals) if iv is not EMPTY]
    sub = CvpInstance(instance.a, [instance.generators[j] for j in keep], instance.cap, instance.weights)
    network = build_network(sub)
    outcome = min_cost_flow(network)
    if outcome.status is FlowStatus.INFEASIBLE:
        return SolveReport(Status.INFEASIBLE, method="flow")
    partial = flow_to_solution(sub, network, outcome)
    u = [0] * instance.k
    for j, uj in zip(keep, partial.u):
        u[j] = uj
    sol = evaluate(instance, u)
    return SolveReport(Status.OPTIMAL_EXACT, sol, outcome.cost, "flow")


def solve_exact_lp(instance: CvpInstance) -> SolveReport:
    outcome = solve_lp(build_lp(instance))
    if outcome.status is LpStatus.INFEASIBLE:
        return SolveReport(Status.INFEASIBLE, method="lp")
    if any(x.denominator != 1 for x in outcome.u_star):
        raise FractionalVertex(
            f"LP vertex is fractional (value {outcome.value}); use the rounding method")
    sol = evaluate(instance, [int(x) for x in outcome.u_star])
    return SolveReport(Status.OPTIMAL_EXACT, sol, outcome.value, "lp")


def solve(instance: CvpInstance, method: str = "auto", *, trials: int = 32, seed: int = 0,
          sum_preserving: bool = False, workers: int = 1, budget: OracleBudget = None) -> SolveReport:
    if method == "auto":
        method = "flow" if instance.consecutive else "round"
    if method == "flow":
        return solve_flow(instance)
    if method == "lp":
        return solve_exact_lp(instance)
    if method == "round":
        return approx_solve(instance, RngSpec(seed), trials, sum_preserving, workers)
    if method == "oracle":
        return brute_force_opt(instance, budget or OracleBudget())
    raise ValueError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
