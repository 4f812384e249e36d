"""Randomized rounding of an extremal LP optimum.

Random numbers come from numpy's PCG64 bit generator seeded with
``SeedSequence(seed, spawn_key=(stream,))``. Each probability draw takes the
top 53 bits of one raw 64-bit output and compares them against an exact
rational by cross-multiplication, so rounding decisions never go through
floating point.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .core import CvpInstance, Solution, SolveReport, Status, evaluate
from .errors import InternalError
from .lp import LpOutcome, LpStatus, build_lp, solve_lp

_BITS = 53
_ONE = 1 << _BITS


@dataclass(frozen=True)
class RngSpec:
    seed: int = 0
    stream: int = 0

    def bit_generator(self) -> np.random.PCG64:
        ss = np.random.SeedSequence(self.seed % (1 << 64), spawn_key=(self.stream,))
        return np.random.PCG64(ss)

    def generator(self) -> np.random.Generator:
        return np.random.Generator(self.bit_generator())


class _Draws:
    """Sequential 53-bit uniforms from one (seed, stream) pair."""

    def __init__(self, rng: RngSpec):
        self._bg = rng.bit_generator()

    def below(self, p: Fraction) -> bool:
        """True with probability exactly ``p`` (up to the 2^-53 grid)."""
        r = int(self._bg.random_raw()) >> (64 - _BITS)
        return r * p.denominator < p.numerator * _ONE


@dataclass(frozen=True)
class LatticeRoundingProblem:
    h: tuple  # d x d binary rows; column p is generator columns[p] (zeros for padding)
    x: tuple  # fractional parts, one per column
    floor_part: tuple
    columns: tuple  # original generator index per column, None for zero padding
    k: int

    @property
    def d(self) -> int:
        return len(self.x)

    def to_coefficients(self, y: Sequence[int]) -> tuple:
        u = [0] * self.k
        for p, j in enumerate(self.columns):
            if j is not None:
                u[j] = self.floor_part[p] + y[p]
            elif y[p]:
                raise InternalError("padding column rounded up")
        return tuple(u)

    @property
    def u_star_sum(self) -> Fraction:
        return sum(self.x, Fraction(0)) + sum(self.floor_part)


def prepare_lattice(outcome: LpOutcome, instance: CvpInstance) -> LatticeRoundingProblem:
    if outcome.status is not LpStatus.OPTIMAL:
        raise ValueError("prepare_lattice needs an optimal LP outcome")
    d, k = instance.d, instance.k
    u = outcome.u_star
    nonzero = [j for j in range(k) if u[j] != 0]
    if len(nonzero) > d:
        raise InternalError(f"{len(nonzero)} nonzero coefficients in a vertex of a {d}-row LP")
    zero = [j for j in range(k) if u[j] == 0]
    columns = (nonzero + zero)[:d]
    columns += [None] * (d - len(columns))
    x, floor_part = [], []
    for j in columns:
        if j is None:
            x.append(Fraction(0))
            floor_part.append(0)
        else:
            f = math.floor(u[j])
            floor_part.append(f)
            x.append(u[j] - f)
    h = tuple(
        tuple(0 if j is None else instance.generators[j][i] for j in columns)
        for i in range(d)
    )
    return LatticeRoundingProblem(h, tuple(x), tuple(floor_part), tuple(columns), k)


def randomized_round(problem: LatticeRoundingProblem, rng: RngSpec) -> tuple:
    """Round each coordinate up independently with probability equal to its fractional part."""
    draws = _Draws(rng)
    y = [1 if draws.below(xp) else 0 for xp in problem.x]
    return problem.to_coefficients(y)


def round_sum_preserving(problem: LatticeRoundingProblem, rng: RngSpec) -> tuple:
    """Dependent pair rounding that keeps every marginal and fixes the rounded sum.

    An auxiliary coordinate ``ceil(sum x) - sum x`` makes the total integral;
    the two lowest-indexed fractional coordinates then trade mass until one
    of them is integral, choosing the direction with probabilities that leave
    both expectations unchanged.
    """
    total = sum(problem.x, Fraction(0))
    x = list(problem.x) + [math.ceil(total) - total]
    draws = _Draws(rng)
    frac = [i for i, v in enumerate(x) if v.denominator != 1]
    while len(frac) >= 2:
        i, j = frac[0], frac[1]
        up = min(1 - x[i], x[j])    # move mass into i
        down = min(x[i], 1 - x[j])  # move mass out of i
        if draws.below(down / (up + down)):
            x[i] += up
            x[j] -= up
        else:
            x[i] -= down
            x[j] += down
        frac = [t for t in frac if x[t].denominator != 1]
    if frac:
        raise InternalError("fractional mass left after pair rounding")
    y = [int(v) for v in x[:-1]]
    return problem.to_coefficients(y)


def _best(candidates):
    # candidates: (trial, Solution); ties resolve to the lowest trial index
    return min(candidates, key=lambda c: (c[1].objective, c[1].linf, c[0]))


def approx_solve(
    instance: CvpInstance,
    rng: RngSpec = RngSpec(),
    trials: int = 32,
    sum_preserving: bool = False,
    workers: int = 1,
    outcome: Optional[LpOutcome] = None,
) -> SolveReport:
    """LP relaxation followed by the best of ``trials`` independent roundings.

    Trial ``t`` uses substream ``t`` of ``rng.seed``. The result is
    ``OptimalExact`` when the rounded objective meets the LP bound within the cap.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    method = "round-sum" if sum_preserving else "round"
    if outcome is None:
        outcome = solve_lp(build_lp(instance))
    if outcome.status is LpStatus.INFEASIBLE:
        return SolveReport(Status.INFEASIBLE, method=method, seed=rng.seed)
    problem = prepare_lattice(outcome, instance)
    rounder = round_sum_preserving if sum_preserving else randomized_round

    def one(t) -> Solution:
        return evaluate(instance, rounder(problem, RngSpec(rng.seed, t)))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            sols = list(pool.map(one, range(trials)))
    else:
        sols = [one(t) for t in range(trials)]
    _, sol = _best(enumerate(sols))
    exact = sol.within_cap and sol.objective == outcome.value
    status = Status.OPTIMAL_EXACT if exact else Status.APPROXIMATE
    return SolveReport(status, sol, outcome.value, method, rng.seed)


@dataclass(frozen=True)
class DeviationEstimate:
    mean: float
    stderr: float
    bound: float
    trials: int

    @property
    def passed(self) -> bool:
        return self.mean <= self.bound + 3 * self.stderr


def lemma_bound(q: int) -> float:
    return math.sqrt(math.log(2) / 2) * math.sqrt(q)


def deviation_estimate(p, trials: int, rng: RngSpec = RngSpec(), chunk: int = 1 << 22) -> DeviationEstimate:
    """Monte Carlo estimate of ``E|X_1 + ... + X_q|`` for centred Bernoulli ``X_j``.

    ``X_j = 1 - p_j`` with probability ``p_j`` and ``-p_j`` otherwise.
    """
    p = np.asarray(p, dtype=float)
    q = p.size
    if q < 1:
        raise ValueError("need at least one probability")
    if trials < 1:
        raise ValueError("trials must be positive")
    if np.any((p < 0) | (p > 1)):
        raise ValueError("probabilities must lie in [0, 1]")
    gen = rng.generator()
    rows = max(1, chunk // q)
    shift = p.sum()
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < trials:
        m = min(rows, trials - done)
        hits = (gen.random((m, q)) < p).sum(axis=1)
        s = np.abs(hits - shift)
        total += s.sum()
        total_sq += (s * s).sum()
        done += m
    mean = total / trials
    var = max(total_sq / trials - mean * mean, 0.0)
    se = math.sqrt(var / (trials - 1)) if trials > 1 else 0.0
    return DeviationEstimate(float(mean), se, lemma_bound(q), trials)
