"""Brute-force ground truth.

``brute_force_opt`` enumerates coefficient vectors depth-first with
partial-sum pruning. ``exhaustive_table`` is a vectorised enumerator used by
large sweeps: it scores every coefficient vector in a box against many
targets at once. Neither touches the LP or flow code.

Coefficient bound: if ``u_j > max(a)`` for a nonzero generator, every
coordinate it covers has ``b_i >= u_j > a_i``, so decreasing ``u_j`` by one
lowers ``|a_i - b_i|`` on its support, keeps the cap satisfied and lowers the
beam-on time. Hence ``u_max = max(a)`` already contains an optimum and proves
infeasibility when the box holds no feasible point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .core import INF, CvpInstance, SolveReport, Status, evaluate
from .errors import BudgetExceeded, TooManyVariables


@dataclass(frozen=True)
class OracleBudget:
    u_max: Optional[int] = None  # None: use the sufficient bound max(a)
    node_limit: int = 10_000_000


def sufficient_u_max(instance: CvpInstance) -> int:
    return max(instance.a, default=0)


def _integer_weights(weights):
    scale = math.lcm(weights.mu.denominator, weights.nu.denominator)
    return int(weights.mu * scale), int(weights.nu * scale), scale


def brute_force_opt(instance: CvpInstance, budget: OracleBudget = OracleBudget()) -> SolveReport:
    """Exact optimum of ``mu*tc + nu*bot`` subject to ``linf <= cap`` by enumeration."""
    d, k = instance.d, instance.k
    a = instance.a
    cap = instance.cap
    capv = math.inf if cap is INF else cap
    wmu, wnu, scale = _integer_weights(instance.weights)
    suff = sufficient_u_max(instance)
    u_max = suff if budget.u_max is None else budget.u_max
    certified = u_max >= suff

    supports = [tuple(i for i, gi in enumerate(g) if gi) for g in instance.generators]
    order = sorted(range(k), key=lambda j: (supports[j][0] if supports[j] else d, j))
    sup = [supports[j] for j in order]
    umax = [u_max if sup[p] else 0 for p in range(k)]

    last_cover = [-1] * d
    for p, s in enumerate(sup):
        for i in s:
            last_cover[i] = p
    closing = [[] for _ in range(k)]
    for i, p in enumerate(last_cover):
        if p >= 0:
            closing[p].append(i)

    b = [0] * d
    base_err = 0
    for i in range(d):
        if last_cover[i] < 0:
            if a[i] > capv:
                return SolveReport(Status.INFEASIBLE, method="oracle") if certified else _exceeded()
            base_err += a[i]
    if k == 0:
        return _finish(instance, (), certified)

    best = [math.inf, None]
    u = [0] * k
    nodes = [0]
    limit = [math.inf]

    def dfs(p, closed_err, over_open, bot):
        nodes[0] += 1
        if nodes[0] > budget.node_limit:
            raise BudgetExceeded(f"oracle exceeded {budget.node_limit} search nodes")
        s = sup[p]
        cl = closing[p]
        over = over_open
        v = 0
        added = 0
        while True:
            # cells closing here: exact error replaces their running over-count
            err = 0
            over_closing = 0
            ok = True
            for i in cl:
                dev = b[i] - a[i]
                if dev > 0:
                    over_closing += dev
                    err += dev
                else:
                    err -= dev
                if abs(dev) > capv:
                    ok = False
            if ok:
                new_closed = closed_err + err
                new_over = over - over_closing
                bound = wmu * (new_closed + new_over) + wnu * (bot + v)
                if bound < best[0] and bound <= limit[0]:
                    u[p] = v
                    if p + 1 == k:
                        best[0] = bound
                        best[1] = tuple(u)
                    else:
                        dfs(p + 1, new_closed, new_over, bot + v)
            if v == umax[p]:
                break
            v += 1
            broke = False
            for i in s:
                b[i] += 1
                if b[i] > a[i]:
                    over += 1
                    if b[i] - a[i] > capv:
                        broke = True
            added = v
            if broke:
                break
        for i in s:
            b[i] -= added
        u[p] = 0

    # Search under a growing objective ceiling first: a cheap early incumbent
    # keeps branch-and-bound from wandering through high-error regions.
    worst = wmu * sum(max(ai, u_max * k) for ai in a) + wnu * u_max * k
    ceiling = 0
    while best[1] is None:
        limit[0] = ceiling if ceiling <= worst else math.inf
        dfs(0, base_err, 0, 0)
        if limit[0] == math.inf:
            break
        ceiling = 2 * ceiling + 1
    if best[1] is None:
        if certified:
            return SolveReport(Status.INFEASIBLE, method="oracle")
        _exceeded()
    u_orig = [0] * k
    for p, j in enumerate(order):
        u_orig[j] = best[1][p]
    return _finish(instance, tuple(u_orig), certified)


def _exceeded():
    raise BudgetExceeded("no feasible point within u_max, and u_max is below max(a)")


def _finish(instance, u, certified):
    sol = evaluate(instance, u)
    if not sol.within_cap:
        return SolveReport(Status.INFEASIBLE, method="oracle") if certified else _exceeded()
    status = Status.OPTIMAL_EXACT if certified else Status.APPROXIMATE
    return SolveReport(status, sol, method="oracle")


def coefficient_box(k: int, u_max: int) -> np.ndarray:
    """All vectors in ``{0..u_max}^k`` as rows, lexicographic order."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*([np.arange(u_max + 1, dtype=np.int64)] * k), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def exhaustive_table(generators, targets, u_max: int):
    """Score every ``u`` in the box against every target.

    Returns ``(tc, linf, bot)`` with shapes ``(T, N)``, ``(T, N)`` and ``(N,)``.
    """
    A = np.asarray(targets, dtype=np.int64)
    k = len(generators)
    G = np.asarray(generators, dtype=np.int64).reshape(k, A.shape[1])
    U = coefficient_box(k, u_max)
    B = U @ G
    dev = np.abs(A[:, None, :] - B[None, :, :])
    return dev.sum(axis=2), dev.max(axis=2, initial=0), U.sum(axis=1)


def optima_from_table(tc, linf, bot, cap, weights):
    """Per-target optimal objective (``Fraction``) or ``None`` when infeasible."""
    wmu, wnu, scale = _integer_weights(weights)
    obj = wmu * tc + wnu * bot[None, :]
    if cap is not INF:
        obj = np.where(linf <= cap, obj, np.iinfo(np.int64).max)
    best = obj.min(axis=1)
    out = []
    for v in best.tolist():
        out.append(None if v == np.iinfo(np.int64).max else Fraction(v, scale))
    return out


def count_satisfied(clauses, assignment) -> int:
    n = 0
    for clause in clauses:
        if any((lit > 0) == bool(assignment[abs(lit) - 1]) for lit in clause):
            n += 1
    return n


def brute_force_maxsat(formula) -> int:
    """Maximum number of simultaneously satisfiable clauses, over all ``2^s`` assignments."""
    s = formula.s
    if s > 20:
        raise TooManyVariables(f"s={s} exceeds the exhaustive limit of 20")
    bits = (np.arange(2**s, dtype=np.int64)[:, None] >> np.arange(s)) & 1
    sat = np.zeros(2**s, dtype=np.int64)
    for clause in formula.clauses:
        hit = np.zeros(2**s, dtype=bool)
        for lit in clause:
            col = bits[:, abs(lit) - 1]
            hit |= (col == 1) if lit > 0 else (col == 0)
        sat += hit
    return int(sat.max())
