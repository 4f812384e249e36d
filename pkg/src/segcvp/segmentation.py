"""Matrix instances for multileaf-collimator segmentation.

A segment opens one interval of leaves per row (or keeps the row closed).
Under the minimum separation constraint every open row must span at least
``lam`` columns, and the allowed segments are a product of per-row choices,
so the matrix problem splits into independent single-row problems.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .core import (EMPTY, INF, CvpInstance, ObjectiveWeights, SolveReport, Status,
                   interval_indicator, within)
from .errors import InvalidLambda
from .solve import solve


@dataclass(frozen=True)
class Segment:
    rows: tuple  # per row: (l, r) 1-based inclusive, or EMPTY

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(
            EMPTY if iv is EMPTY or iv is None else (int(iv[0]), int(iv[1])) for iv in self.rows))

    def matrix(self, n: int) -> tuple:
        return tuple(interval_indicator(iv, n) for iv in self.rows)

    def flat(self, n: int) -> tuple:
        return tuple(x for row in self.matrix(n) for x in row)

    def bad_rows(self, n: int, lam: Optional[int] = None) -> list:
        """Indices of rows that are malformed or open narrower than ``lam``."""
        bad = []
        for i, iv in enumerate(self.rows):
            if iv is EMPTY:
                continue
            l, r = iv
            if not 1 <= l <= r <= n or (lam is not None and r - l < lam - 1):
                bad.append(i)
        return bad


@dataclass(frozen=True)
class MinSeparation:
    lam: int


@dataclass(frozen=True)
class ExplicitSegments:
    segments: tuple

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(
            s if isinstance(s, Segment) else Segment(s) for s in self.segments))


@dataclass(frozen=True)
class MatrixInstance:
    a_matrix: tuple
    constraint: Union[MinSeparation, ExplicitSegments]
    cap: object = INF
    weights: ObjectiveWeights = field(default_factory=ObjectiveWeights)

    def __post_init__(self):
        object.__setattr__(self, "a_matrix", tuple(tuple(int(x) for x in row) for row in self.a_matrix))

    @property
    def m(self) -> int:
        return len(self.a_matrix)

    @property
    def n(self) -> int:
        return len(self.a_matrix[0]) if self.a_matrix else 0

    def validate(self) -> list:
        out = []
        if self.m < 1 or self.n < 1:
            out.append("A: matrix must have at least one row and one column")
        for i, row in enumerate(self.a_matrix):
            if len(row) != self.n:
                out.append(f"A[{i}]: row length {len(row)} differs from n={self.n}")
            for j, x in enumerate(row):
                if x < 0:
                    out.append(f"A[{i}][{j}]: negative target entry {x}")
        c = self.constraint
        if isinstance(c, MinSeparation):
            if not 1 <= c.lam <= self.n:
                out.append(f"constraint: lambda={c.lam} outside [1, {self.n}]")
        else:
            for s_idx, seg in enumerate(c.segments):
                if len(seg.rows) != self.m:
                    out.append(f"segments[{s_idx}]: has {len(seg.rows)} rows, expected {self.m}")
                for i in seg.bad_rows(self.n):
                    out.append(f"segments[{s_idx}][{i}]: interval {seg.rows[i]} outside [1, {self.n}]")
        if self.cap is not INF and (not isinstance(self.cap, int) or self.cap < 0):
            out.append(f"C: {self.cap!r} is neither a nonnegative integer nor inf")
        return out

    def to_cvp(self) -> CvpInstance:
        """Row-major flattening; only defined for explicit segment lists."""
        if not isinstance(self.constraint, ExplicitSegments):
            raise TypeError("only explicit segment lists flatten to a single vector instance")
        a = tuple(x for row in self.a_matrix for x in row)
        gens = [seg.flat(self.n) for seg in self.constraint.segments]
        return CvpInstance(a, gens, self.cap, self.weights)


@dataclass(frozen=True)
class MatrixPlan:
    terms: tuple  # (Segment, positive coefficient)
    realized: tuple
    tc: int
    linf: int
    bot: int
    objective: Fraction
    within_cap: bool
    row_optimal: bool = False
    status: Status = Status.APPROXIMATE

    @property
    def certified_optimal(self) -> bool:
        """Row-wise optimality certifies the matrix optimum only without a beam-on term."""
        return self.row_optimal and self.status is Status.OPTIMAL_EXACT


def evaluate_plan(instance: MatrixInstance, terms, row_optimal=False, status=Status.APPROXIMATE) -> MatrixPlan:
    m, n = instance.m, instance.n
    B = [[0] * n for _ in range(m)]
    bot = 0
    for seg, coef in terms:
        bot += coef
        for i, iv in enumerate(seg.rows):
            if iv is not EMPTY:
                for j in range(iv[0] - 1, iv[1]):
                    B[i][j] += coef
    dev = [abs(x - y) for ra, rb in zip(instance.a_matrix, B) for x, y in zip(ra, rb)]
    tc, linf = sum(dev), max(dev, default=0)
    return MatrixPlan(
        terms=tuple(terms),
        realized=tuple(tuple(r) for r in B),
        tc=tc,
        linf=linf,
        bot=bot,
        objective=instance.weights.value(tc, bot),
        within_cap=within(linf, instance.cap),
        row_optimal=row_optimal,
        status=status,
    )


def msc_row_intervals(n: int, lam: int) -> list:
    """All intervals in ``[1, n]`` spanning at least ``lam`` columns, lexicographic."""
    if not 1 <= lam <= n:
        raise InvalidLambda(f"lambda={lam} must lie in [1, {n}]")
    return [(l, r) for l in range(1, n + 1) for r in range(l + lam - 1, n + 1)]


def solve_row(row: Sequence[int], intervals, cap=INF, weights=ObjectiveWeights(), method="flow",
              **options) -> SolveReport:
    """Solve one row over the given intervals; ``options`` go to :func:`segcvp.solve.solve`."""
    n = len(row)
    gens = [interval_indicator(iv, n) for iv in intervals]
    return solve(CvpInstance(tuple(row), gens, cap, weights), method, **options)


def assemble_matrix_segments(row_plans) -> list:
    """Stack per-row plans into matrix segments by unit time slices.

    Row ``i`` lists its intervals in lexicographic order, each repeated by its
    coefficient and padded with closed slots up to the longest row; slice
    ``t`` across rows is one segment, and equal consecutive segments merge.
    """
    slots = []
    for plan in row_plans:
        seq = []
        for iv, coef in sorted(plan, key=lambda t: t[0]):
            seq.extend([iv] * coef)
        slots.append(seq)
    T = max((len(s) for s in slots), default=0)
    terms = []
    for t in range(T):
        seg = Segment(tuple(s[t] if t < len(s) else EMPTY for s in slots))
        if terms and terms[-1][0] == seg:
            terms[-1] = (seg, terms[-1][1] + 1)
        else:
            terms.append((seg, 1))
    return terms


def solve_msc(instance: MatrixInstance, method: str = "flow", workers: int = 1,
              **options) -> Optional[MatrixPlan]:
    """Row-by-row solve under the minimum separation constraint; ``None`` if infeasible."""
    if not isinstance(instance.constraint, MinSeparation):
        raise TypeError("solve_msc needs a MinSeparation constraint")
    intervals = msc_row_intervals(instance.n, instance.constraint.lam)

    def one(row):
        return solve_row(row, intervals, instance.cap, instance.weights, method, **options)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(one, instance.a_matrix))
    else:
        reports = [one(row) for row in instance.a_matrix]
    if any(r.status is Status.INFEASIBLE for r in reports):
        return None
    row_plans = [[(iv, c) for iv, c in zip(intervals, r.solution.u) if c] for r in reports]
    exact_rows = all(r.status is Status.OPTIMAL_EXACT for r in reports)
    # without a beam-on term, row optima add up to the matrix optimum
    status = Status.OPTIMAL_EXACT if exact_rows and instance.weights.nu == 0 else Status.APPROXIMATE
    return evaluate_plan(instance, assemble_matrix_segments(row_plans), exact_rows, status)
