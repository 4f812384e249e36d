"""Domain types for the closest vector problem and exact solution evaluation.

An instance asks for nonnegative integer coefficients ``u`` such that
``b = sum_j u_j g_j`` stays within l-infinity distance ``cap`` of the target
``a`` while minimising ``mu * ||a - b||_1 + nu * sum(u)``.

All arithmetic here is exact: integers for vectors and norms, ``Fraction``
for objective weights and values.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Union

from .errors import InvalidCoefficients


class Cap(enum.Enum):
    INFINITE = "inf"

    def __repr__(self):
        return "INF"


class _EmptyInterval(enum.Enum):
    EMPTY = "empty"

    def __repr__(self):
        return "EMPTY"


INF = Cap.INFINITE
EMPTY = _EmptyInterval.EMPTY

CapValue = Union[int, Cap]
Interval = tuple  # (l, r), 1-based and inclusive


class Status(str, enum.Enum):
    INFEASIBLE = "Infeasible"
    OPTIMAL_EXACT = "OptimalExact"
    APPROXIMATE = "Approximate"


def is_finite(cap: CapValue) -> bool:
    return cap is not INF


def within(value: int, cap: CapValue) -> bool:
    return cap is INF or value <= cap


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        # decimal reading: 0.1 means 1/10, not the nearest double
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class ObjectiveWeights:
    mu: Fraction = Fraction(1)
    nu: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "mu", _as_fraction(self.mu))
        object.__setattr__(self, "nu", _as_fraction(self.nu))
        if self.mu < 0 or self.nu < 0:
            raise ValueError(f"weights must be nonnegative, got mu={self.mu}, nu={self.nu}")

    def value(self, tc, bot) -> Fraction:
        return self.mu * tc + self.nu * bot


DEFAULT_WEIGHTS = ObjectiveWeights()


@dataclass(frozen=True)
class CvpInstance:
    """Target ``a``, binary generators (each a length-d tuple), cap and weights.

    The constructor only normalises containers to tuples; use
    :func:`validate_instance` to check the invariants.
    """

    a: tuple
    generators: tuple
    cap: CapValue = INF
    weights: ObjectiveWeights = field(default_factory=ObjectiveWeights)

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "generators", tuple(tuple(int(x) for x in g) for g in self.generators))

    @property
    def d(self) -> int:
        return len(self.a)

    @property
    def k(self) -> int:
        return len(self.generators)

    @cached_property
    def intervals(self) -> tuple:
        """Per-generator result of :func:`has_consecutive_ones`."""
        return tuple(has_consecutive_ones(g) for g in self.generators)

    @property
    def consecutive(self) -> bool:
        return all(iv is not None for iv in self.intervals)

    def with_weights(self, weights: ObjectiveWeights) -> "CvpInstance":
        return CvpInstance(self.a, self.generators, self.cap, weights)

    def with_cap(self, cap: CapValue) -> "CvpInstance":
        return CvpInstance(self.a, self.generators, cap, self.weights)


@dataclass(frozen=True)
class Solution:
    u: tuple
    b: tuple
    tc: int
    linf: int
    bot: int
    objective: Fraction
    within_cap: bool


@dataclass(frozen=True)
class SolveReport:
    status: Status
    solution: Optional[Solution] = None
    lp_value: Optional[Fraction] = None
    method: str = ""
    seed: Optional[int] = None

    def __post_init__(self):
        if (self.status is Status.INFEASIBLE) != (self.solution is None):
            raise ValueError("solution must be absent exactly when the status is Infeasible")
        if self.status is Status.OPTIMAL_EXACT and not self.solution.within_cap:
            raise ValueError("an exact optimum must respect the cap")

    @property
    def feasible(self) -> bool:
        return self.status is not Status.INFEASIBLE


def realize(generators: Sequence[Sequence[int]], u: Sequence[int], d: int) -> tuple:
    b = [0] * d
    for g, uj in zip(generators, u):
        if uj:
            for i, gi in enumerate(g):
                if gi:
                    b[i] += uj
    return tuple(b)


def evaluate(instance: CvpInstance, u: Sequence[int]) -> Solution:
    u = tuple(u)
    if len(u) != instance.k:
        raise InvalidCoefficients(f"expected {instance.k} coefficients, got {len(u)}")
    for j, uj in enumerate(u):
        if isinstance(uj, bool) or int(uj) != uj or uj < 0:
            raise InvalidCoefficients(f"coefficient u[{j}]={uj!r} is not a nonnegative integer")
    u = tuple(int(uj) for uj in u)
    b = realize(instance.generators, u, instance.d)
    dev = [abs(ai - bi) for ai, bi in zip(instance.a, b)]
    tc = sum(dev)
    linf = max(dev, default=0)
    bot = sum(u)
    return Solution(
        u=u,
        b=b,
        tc=tc,
        linf=linf,
        bot=bot,
        objective=instance.weights.value(tc, bot),
        within_cap=within(linf, instance.cap),
    )


def validate_instance(instance: CvpInstance) -> list:
    violations = []
    d = instance.d
    if d < 1:
        violations.append("a: dimension d must be positive")
    for i, ai in enumerate(instance.a):
        if ai < 0:
            violations.append(f"a[{i}]: negative target entry {ai}")
    for j, g in enumerate(instance.generators):
        if len(g) != d:
            violations.append(f"generators[{j}]: length {len(g)} differs from d={d}")
        for i, gi in enumerate(g):
            if gi not in (0, 1):
                violations.append(f"generators[{j}][{i}]: entry {gi} is not binary")
    cap = instance.cap
    if cap is not INF and (isinstance(cap, bool) or not isinstance(cap, int) or cap < 0):
        violations.append(f"cap: {cap!r} is neither a nonnegative integer nor INF")
    return violations


def has_consecutive_ones(g: Sequence[int]):
    """Return the 1-based interval ``(l, r)`` of ones, ``EMPTY`` or ``None``.

    ``None`` means the ones are not contiguous.
    """
    first = last = None
    count = 0
    for i, gi in enumerate(g):
        if gi:
            if first is None:
                first = i
            last = i
            count += 1
    if first is None:
        return EMPTY
    if last - first + 1 != count:
        return None
    return (first + 1, last + 1)


def interval_indicator(interval, n: int) -> tuple:
    if interval is EMPTY:
        return (0,) * n
    l, r = interval
    return tuple(1 if l <= j <= r else 0 for j in range(1, n + 1))
