"""Instance factories: random vector instances, MSC matrices and the 3SAT-6 gadget reduction.

Generators take a ``numpy.random.Generator``; use ``RngSpec(seed).generator()``
for reproducible output.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import EMPTY, INF, CvpInstance, ObjectiveWeights
from .errors import MalformedFormula
from .segmentation import (ExplicitSegments, MatrixInstance, MatrixPlan, MinSeparation, Segment,
                           evaluate_plan, msc_row_intervals)


@dataclass(frozen=True)
class Sat36Formula:
    """CNF where every clause has three distinct variables and every literal occurs three times.

    Clauses are triples of signed 1-based variable indices.
    """

    s: int
    clauses: tuple

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(int(x) for x in c) for c in self.clauses))
        problems = self.violations()
        if problems:
            raise MalformedFormula(problems[0])

    @property
    def t(self) -> int:
        return len(self.clauses)

    def violations(self) -> list:
        out = []
        if self.s < 1:
            out.append(f"s={self.s}: need at least one variable")
        if self.t != 2 * self.s:
            out.append(f"t={self.t}: a 3SAT-6 formula over {self.s} variables has {2 * self.s} clauses")
        for j, c in enumerate(self.clauses, 1):
            if len(c) != 3:
                out.append(f"clause {j}: has {len(c)} literals, expected 3")
                continue
            for lit in c:
                if lit == 0 or abs(lit) > self.s:
                    out.append(f"clause {j}: literal {lit} outside 1..{self.s}")
            if len({abs(x) for x in c}) != len(c):
                out.append(f"clause {j}: repeats a variable")
        counts = Counter(lit for c in self.clauses for lit in c)
        for v in range(1, self.s + 1):
            for lit in (v, -v):
                if counts[lit] != 3:
                    out.append(f"literal {lit}: occurs {counts[lit]} times, expected 3")
        return out

    def satisfied(self, assignment) -> int:
        return sum(any((lit > 0) == bool(assignment[abs(lit) - 1]) for lit in c) for c in self.clauses)

    def to_text(self) -> str:
        lines = [f"p sat36 {self.s} {self.t}"]
        lines += [" ".join(str(x) for x in c) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Sat36Formula":
        """Read ``p sat36 s t`` followed by ``t`` lines of three signed ints (optional trailing 0)."""
        header = None
        clauses = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            if header is None:
                parts = line.split()
                if len(parts) != 4 or parts[:2] != ["p", "sat36"]:
                    raise MalformedFormula(f"line {lineno}: expected header 'p sat36 s t'")
                try:
                    header = (int(parts[2]), int(parts[3]))
                except ValueError:
                    raise MalformedFormula(f"line {lineno}: non-integer header fields") from None
                continue
            try:
                nums = [int(x) for x in line.split()]
            except ValueError:
                raise MalformedFormula(f"line {lineno}: non-integer literal") from None
            if nums and nums[-1] == 0:
                nums.pop()
            if len(nums) != 3:
                raise MalformedFormula(f"line {lineno}: clause has {len(nums)} literals, expected 3")
            clauses.append(tuple(nums))
        if header is None:
            raise MalformedFormula("missing 'p sat36 s t' header")
        s, t = header
        if len(clauses) != t:
            raise MalformedFormula(f"header declares {t} clauses, found {len(clauses)}")
        return cls(s, tuple(clauses))


def gen_sat36(s: int, rng: np.random.Generator, max_tries: int = 100_000) -> Sat36Formula:
    """Uniform pairing of literal copies into clauses, retried until no clause repeats a variable."""
    if s < 3:
        raise MalformedFormula(f"s={s}: clauses need three distinct variables, so s >= 3")
    slots = np.array([lit for v in range(1, s + 1) for lit in (v, -v) for _ in range(3)])
    for _ in range(max_tries):
        perm = rng.permutation(slots).reshape(2 * s, 3)
        if all(len(set(np.abs(row))) == 3 for row in perm):
            return Sat36Formula(s, tuple(tuple(int(x) for x in row) for row in perm))
    raise RuntimeError(f"no valid formula after {max_tries} attempts")


# Sub-intervals of a clause block, relative to its first column (1..5).
CLAUSE_PIECES = {
    1: (1, 1), 2: (3, 3), 3: (5, 5), 4: (2, 2), 5: (4, 4),
    6: (1, 2), 7: (4, 5), 8: (2, 4), 9: (1, 4), 10: (2, 5),
}
# Sub-intervals of a variable block, relative to its first column (1..6); True is the positive literal.
VARIABLE_PIECES = {
    True: {1: (1, 1), 2: (2, 4), 3: (5, 6)},
    False: {1: (1, 2), 2: (3, 5), 3: (6, 6)},
}
# Fillers completing a clause block given which literal pieces are present.
# With none present the block can only be approximated; piece 9 leaves one unit uncovered.
FILLERS = {
    frozenset(): (9,),
    frozenset({1}): (10,),
    frozenset({2}): (6, 7),
    frozenset({3}): (9,),
    frozenset({1, 2}): (4, 7),
    frozenset({1, 3}): (8,),
    frozenset({2, 3}): (6, 5),
    frozenset({1, 2, 3}): (4, 5),
}


def _shift(piece, offset):
    return (piece[0] + offset, piece[1] + offset)


@dataclass(frozen=True)
class ReducedInstance:
    formula: Sat36Formula
    matrix_instance: MatrixInstance
    segments: tuple
    provenance: tuple  # per segment: ("literal", lit, clause, alpha, beta) or ("filler", gamma, clause)

    def literal_index(self) -> dict:
        return {(p[1], p[2]): idx for idx, p in enumerate(self.provenance) if p[0] == "literal"}

    def filler_index(self) -> dict:
        return {(p[1], p[2]): idx for idx, p in enumerate(self.provenance) if p[0] == "filler"}


def reduce_3sat6(formula: Sat36Formula) -> ReducedInstance:
    """Build the 2 x 10s instance whose optimal total change is ``t`` minus the MaxSAT value."""
    problems = formula.violations()
    if problems:
        raise MalformedFormula(problems[0])
    s, t = formula.s, formula.t
    n = 10 * s
    A = ([1] * (6 * s) + [0] * (4 * s), [1] * n)
    seen = Counter()
    segments, provenance = [], []
    for j, clause in enumerate(formula.clauses, 1):
        for alpha, lit in enumerate(clause, 1):
            seen[lit] += 1
            beta = seen[lit]
            var = abs(lit)
            top = _shift(VARIABLE_PIECES[lit > 0][beta], 6 * var - 6)
            bottom = _shift(CLAUSE_PIECES[alpha], 5 * j - 5)
            segments.append(Segment((top, bottom)))
            provenance.append(("literal", lit, j, alpha, beta))
    for j in range(1, t + 1):
        for gamma in range(4, 11):
            segments.append(Segment((EMPTY, _shift(CLAUSE_PIECES[gamma], 5 * j - 5))))
            provenance.append(("filler", gamma, j))
    inst = MatrixInstance(A, ExplicitSegments(tuple(segments)), INF, ObjectiveWeights(1, 0))
    return ReducedInstance(formula, inst, tuple(segments), tuple(provenance))


def assignment_to_plan(reduced: ReducedInstance, assignment: Sequence[bool]) -> MatrixPlan:
    """Literal segments chosen by ``assignment`` plus the fillers that best complete each clause."""
    formula = reduced.formula
    lit_idx = reduced.literal_index()
    fill_idx = reduced.filler_index()
    chosen = []
    for j, clause in enumerate(formula.clauses, 1):
        present = set()
        for alpha, lit in enumerate(clause, 1):
            if (lit > 0) == bool(assignment[abs(lit) - 1]):
                present.add(alpha)
                chosen.append(lit_idx[(lit, j)])
        chosen.extend(fill_idx[(gamma, j)] for gamma in FILLERS[frozenset(present)])
    terms = [(reduced.segments[idx], 1) for idx in sorted(chosen)]
    return evaluate_plan(reduced.matrix_instance, terms)


def gen_random_instance(d: int, k: int, max_entry: int, cap, consecutive_only: bool,
                        rng: np.random.Generator, weights: ObjectiveWeights = ObjectiveWeights()) -> CvpInstance:
    if d < 1 or k < 0 or max_entry < 0:
        raise ValueError("need d >= 1, k >= 0 and max_entry >= 0")
    a = tuple(int(x) for x in rng.integers(0, max_entry + 1, size=d))
    gens = []
    if consecutive_only:
        intervals = [(l, r) for l in range(1, d + 1) for r in range(l, d + 1)]
        for idx in rng.integers(0, len(intervals), size=k):
            l, r = intervals[idx]
            gens.append(tuple(1 if l <= i <= r else 0 for i in range(1, d + 1)))
    else:
        # uniform over nonzero binary vectors by rejection
        while len(gens) < k:
            g = rng.integers(0, 2, size=d)
            if g.any():
                gens.append(tuple(int(x) for x in g))
    return CvpInstance(a, gens, cap, weights)


def gen_msc_matrix(m: int, n: int, lam: int, max_entry: int, rng: np.random.Generator,
                   decomposable: bool = False, cap=INF,
                   weights: ObjectiveWeights = ObjectiveWeights()) -> MatrixInstance:
    """Random MSC matrix; ``decomposable`` emits the realized matrix of a sampled plan instead."""
    intervals = msc_row_intervals(n, lam)
    if not decomposable:
        A = rng.integers(0, max_entry + 1, size=(m, n)).tolist()
    else:
        A = []
        for _ in range(m):
            row = [0] * n
            # add random intervals while every entry stays within max_entry
            for idx in rng.permutation(len(intervals)):
                l, r = intervals[idx]
                room = min(max_entry - row[c] for c in range(l - 1, r))
                if room > 0:
                    c_val = int(rng.integers(0, room + 1))
                    for c in range(l - 1, r):
                        row[c] += c_val
            A.append(row)
    return MatrixInstance(tuple(map(tuple, A)), MinSeparation(lam), cap, weights)
