"""Exact LP relaxation of the CVP.

Variables are ordered ``u_1..u_k, alpha_1..alpha_d, beta_1..beta_d`` with rows

    sum_j u_j g_ij - alpha_i + beta_i = a_i        (i = 1..d)

``0 <= alpha_i, beta_i <= C`` and ``u_j >= 0``; the objective is
``mu * sum(alpha + beta) + nu * sum(u)``.

The solver is a bounded-variable primal simplex (upper bounds handled by
bound flips, so the basis always has ``d`` columns) run on an
integer-preserving tableau: entries are kept as integers over a common
denominator ``D = det(B)`` and every pivot divides exactly (Bareiss), so the
arithmetic is exact without ``Fraction`` overhead in the inner loop. Entering
and leaving variables follow Bland's lowest-index rule.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import INF, CvpInstance
from .errors import InternalError


class LpStatus(str, enum.Enum):
    INFEASIBLE = "Infeasible"
    OPTIMAL = "Optimal"


@dataclass(frozen=True)
class LpModel:
    instance: CvpInstance
    rows: tuple  # d rows of k + 2d integer coefficients
    rhs: tuple
    costs: tuple  # Fractions
    upper: tuple  # per variable: int bound or None

    @property
    def d(self) -> int:
        return self.instance.d

    @property
    def k(self) -> int:
        return self.instance.k

    @property
    def n_vars(self) -> int:
        return self.k + 2 * self.d

    def variable_names(self) -> list:
        return ([f"u{j + 1}" for j in range(self.k)]
                + [f"alpha{i + 1}" for i in range(self.d)]
                + [f"beta{i + 1}" for i in range(self.d)])


@dataclass(frozen=True)
class LpOutcome:
    status: LpStatus
    value: Optional[Fraction] = None
    u_star: tuple = ()
    alpha_star: tuple = ()
    beta_star: tuple = ()
    basis: frozenset = frozenset()
    pivots: int = 0

    @property
    def nonzero_u_count(self) -> int:
        return sum(1 for x in self.u_star if x != 0)

    @property
    def integral(self) -> bool:
        return all(x.denominator == 1 for x in self.u_star + self.alpha_star + self.beta_star)


def build_lp(instance: CvpInstance) -> LpModel:
    d, k = instance.d, instance.k
    rows = []
    for i in range(d):
        row = [instance.generators[j][i] for j in range(k)]
        row += [-1 if t == i else 0 for t in range(d)]
        row += [1 if t == i else 0 for t in range(d)]
        rows.append(tuple(row))
    mu, nu = instance.weights.mu, instance.weights.nu
    costs = (nu,) * k + (mu,) * (2 * d)
    bound = None if instance.cap is INF else instance.cap
    upper = (None,) * k + (bound,) * (2 * d)
    return LpModel(instance, tuple(rows), tuple(instance.a), costs, upper)


class _Tableau:
    """Integer tableau ``[D * B^-1 A | D * x_B]`` over the common denominator ``D``.

    The last column holds ``D`` times the basic values; nonbasic variables
    sitting at their upper bound are folded into it.
    """

    def __init__(self, rows, rhs, upper, basis, n):
        self.T = [list(r) + [b] for r, b in zip(rows, rhs)]
        self.D = 1
        self.upper = upper
        self.basis = list(basis)
        self.n = n
        self.at_upper = [False] * n
        self.is_basic = [False] * n
        for v in self.basis:
            self.is_basic[v] = True
        self.pivots = 0
        self.z = None

    def set_cost(self, cost):
        """Reduced-cost row ``D*c_j - sum_i c_B(i) T[i][j]``; ``cost`` must be integral."""
        D = self.D
        z = [D * c for c in cost] + [0]
        for i, v in enumerate(self.basis):
            cb = cost[v]
            if cb:
                z = [zj - cb * tj for zj, tj in zip(z, self.T[i])]
        self.z = z

    def pivot(self, r, c):
        T, D = self.T, self.D
        Tr = T[r]
        p = Tr[c]
        for i, Ti in enumerate(T):
            if i == r:
                continue
            f = Ti[c]
            if f:
                T[i] = [(p * x - f * y) // D for x, y in zip(Ti, Tr)]
            elif p != D:
                T[i] = [(p * x) // D if x else 0 for x in Ti]
        f = self.z[c]
        self.z = [(p * x - f * y) // D for x, y in zip(self.z, Tr)]
        self.D = p
        if p < 0:
            self.T = [[-x for x in Ti] for Ti in self.T]
            self.z = [-x for x in self.z]
            self.D = -p
        self.is_basic[self.basis[r]] = False
        self.basis[r] = c
        self.is_basic[c] = True
        self.pivots += 1

    def _shift(self, j, amount):
        """Move nonbasic ``j`` by ``amount`` (in value units), updating the basic values."""
        for Ti in self.T:
            if Ti[j]:
                Ti[-1] -= amount * Ti[j]

    def run(self, allowed):
        """Primal simplex with Bland's rule; returns at optimality."""
        n = self.n
        while True:
            z = self.z
            enter = None
            for j in range(n):
                if self.is_basic[j] or not allowed[j] or self.upper[j] == 0:
                    continue
                if (z[j] < 0 and not self.at_upper[j]) or (z[j] > 0 and self.at_upper[j]):
                    enter = j
                    break
            if enter is None:
                return
            direction = -1 if self.at_upper[enter] else 1
            D = self.D
            # candidate steps are kept as (numerator, denominator) in value units * D
            best = None  # (num, den, var, row, leaves_at_upper)
            ub = self.upper[enter]
            if ub is not None:
                best = (ub * D, D, enter, None, False)
            for i, Ti in enumerate(self.T):
                tic = Ti[enter]
                if not tic:
                    continue
                v = self.basis[i]
                coef = direction * tic
                if coef > 0:
                    cand = (Ti[-1], coef, v, i, False)
                else:
                    bu = self.upper[v]
                    if bu is None:
                        continue
                    cand = (bu * D - Ti[-1], -coef, v, i, True)
                if best is None:
                    best = cand
                else:
                    lhs, rhs = cand[0] * best[1], best[0] * cand[1]
                    if lhs < rhs or (lhs == rhs and cand[2] < best[2]):
                        best = cand
            if best is None:
                raise InternalError("LP relaxation reported unbounded; the objective is bounded below")
            _, _, _, r, leave_upper = best
            if r is None:
                # bound flip: the entering variable crosses to its other bound
                self._shift(enter, direction * ub)
                self.at_upper[enter] = not self.at_upper[enter]
                continue
            leaving = self.basis[r]
            if self.at_upper[enter]:
                # unfold the entering variable from the rhs before it becomes basic
                self._shift(enter, -ub)
                self.at_upper[enter] = False
            self.pivot(r, enter)
            if leave_upper:
                self.at_upper[leaving] = True
                self._shift(leaving, self.upper[leaving])

    def values(self):
        zero = Fraction(0)
        vals = [Fraction(self.upper[j]) if self.at_upper[j] else zero for j in range(self.n)]
        for i, v in enumerate(self.basis):
            vals[v] = Fraction(self.T[i][-1], self.D)
        return vals


def _integral_costs(costs):
    scale = math.lcm(*(c.denominator for c in costs)) if costs else 1
    return [c.numerator * (scale // c.denominator) for c in costs], scale


def solve_lp(model: LpModel) -> LpOutcome:
    d, k = model.d, model.k
    n = model.n_vars
    cost, scale = _integral_costs(model.costs)
    cap = model.instance.cap
    if d == 0:
        return LpOutcome(LpStatus.OPTIMAL, Fraction(0), tuple(Fraction(0) for _ in range(k)))

    if cap is INF or all(ai <= cap for ai in model.rhs):
        # beta = a, everything else at zero, is a feasible basis
        tab = _Tableau(model.rows, model.rhs, list(model.upper), range(k + d, k + 2 * d), n)
        tab.set_cost(cost)
        tab.run([True] * n)
    else:
        rows = [list(r) + [1 if t == i else 0 for t in range(d)] for i, r in enumerate(model.rows)]
        upper = list(model.upper) + [None] * d
        tab = _Tableau(rows, model.rhs, upper, range(n, n + d), n + d)
        tab.set_cost([0] * n + [1] * d)
        tab.run([True] * (n + d))
        if any(v >= n and tab.T[i][-1] for i, v in enumerate(tab.basis)):
            return LpOutcome(LpStatus.INFEASIBLE, pivots=tab.pivots)
        _drive_out_artificials(tab, n)
        tab.set_cost(cost + [0] * d)
        tab.run([True] * n + [False] * d)

    vals = tab.values()[:n]
    num = sum(cost[v] * tab.T[i][-1] for i, v in enumerate(tab.basis) if v < n)
    num += tab.D * sum(cost[j] * model.upper[j] for j in range(n) if tab.at_upper[j])
    value = Fraction(num, tab.D * scale)
    if any(v < 0 for v in vals) or any(
        model.upper[j] is not None and vals[j] > model.upper[j] for j in range(n)
    ):
        raise InternalError("simplex produced a point outside the variable bounds")
    return LpOutcome(
        LpStatus.OPTIMAL,
        value,
        tuple(vals[:k]),
        tuple(vals[k:k + d]),
        tuple(vals[k + d:]),
        frozenset(tab.basis),
        tab.pivots,
    )


def _drive_out_artificials(tab: _Tableau, n: int):
    tab.z = [0] * (tab.n + 1)
    for r in range(len(tab.basis)):
        if tab.basis[r] < n:
            continue
        row = tab.T[r]
        col = next((j for j in range(n) if row[j] and not tab.is_basic[j]), None)
        if col is None:
            raise InternalError("artificial variable cannot leave the basis; rows are independent")
        if tab.at_upper[col]:
            tab._shift(col, -tab.upper[col])
            tab.at_upper[col] = False
        tab.pivot(r, col)
