import itertools

import pytest

from conftest import FIXTURES
from segcvp.core import EMPTY, INF, Status, has_consecutive_ones, validate_instance
from segcvp.errors import MalformedFormula
from segcvp.instgen import (CLAUSE_PIECES, FILLERS, Sat36Formula, assignment_to_plan, gen_msc_matrix,
                            gen_random_instance, gen_sat36, reduce_3sat6)
from segcvp.oracle import brute_force_maxsat
from segcvp.rounding import RngSpec
from segcvp.segmentation import MatrixInstance, MinSeparation, solve_msc

NAMED = (FIXTURES / "sat36_named_s3.cnf").read_text()


def rng(seed):
    return RngSpec(seed).generator()


# ---- formulas ----

def test_parse_named_fixture():
    f = Sat36Formula.parse(NAMED)
    assert f.s == 3 and f.t == 6 and f.clauses[1] == (1, 2, -3)


def test_text_round_trip():
    f = gen_sat36(5, rng(2))
    assert Sat36Formula.parse(f.to_text()) == f


def test_parse_without_trailing_zero():
    text = "p sat36 3 6\n" + "\n".join(line[:-2] for line in NAMED.splitlines()[2:])
    assert Sat36Formula.parse(text) == Sat36Formula.parse(NAMED)


@pytest.mark.parametrize("text, fragment", [
    ("1 2 3 0\n", "header"),
    ("p cnf 3 6\n", "header"),
    ("p sat36 3 6\n1 2 0\n", "2 literals"),
    ("p sat36 3 6\n1 2 x 0\n", "non-integer"),
    ("p sat36 3 7\n" + "1 2 3 0\n" * 6, "declares 7"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(MalformedFormula, match=fragment):
        Sat36Formula.parse(text)


def test_repeated_variable_rejected():
    clauses = list(Sat36Formula.parse(NAMED).clauses)
    clauses[0] = (1, 1, 3)
    with pytest.raises(MalformedFormula, match="repeats a variable"):
        Sat36Formula(3, clauses)


def test_literal_count_rejected():
    clauses = list(Sat36Formula.parse(NAMED).clauses)
    clauses[5] = (1, -2, -3)
    with pytest.raises(MalformedFormula, match="occurs"):
        Sat36Formula(3, clauses)


def test_clause_count_rejected():
    with pytest.raises(MalformedFormula, match="clauses"):
        Sat36Formula(3, Sat36Formula.parse(NAMED).clauses[:5])


def test_generated_formulas_valid_and_reproducible():
    for s in (3, 4, 6, 9):
        f = gen_sat36(s, rng(s))
        assert f.violations() == []
        assert gen_sat36(s, rng(s)) == f


def test_too_few_variables():
    with pytest.raises(MalformedFormula):
        gen_sat36(1, rng(0))


# ---- reduction ----

def test_named_reduction_shape():
    red = reduce_3sat6(Sat36Formula.parse(NAMED))
    inst = red.matrix_instance
    assert (inst.m, inst.n) == (2, 30)
    assert inst.a_matrix[0] == (1,) * 18 + (0,) * 12
    assert inst.a_matrix[1] == (1,) * 30
    assert len(red.segments) == 60 and inst.cap is INF
    kinds = [p[0] for p in red.provenance]
    assert kinds.count("literal") == 18 and kinds.count("filler") == 42


@pytest.mark.parametrize("s", [3, 4, 5])
def test_gadget_geometry(s):
    f = gen_sat36(s, rng(10 + s))
    red = reduce_3sat6(f)
    assert len(red.segments) == 20 * s
    for seg, prov in zip(red.segments, red.provenance):
        for iv in seg.rows:
            assert iv is EMPTY or 1 <= iv[0] <= iv[1] <= 10 * s
        if prov[0] == "literal":
            _, lit, j, alpha, beta = prov
            l, r = seg.rows[0]
            var = abs(lit)
            assert r - l + 1 in {1, 2, 3}
            assert 6 * var - 5 <= l <= r <= 6 * var
            assert f.clauses[j - 1][alpha - 1] == lit
            assert seg.rows[1] == (5 * j - 5 + CLAUSE_PIECES[alpha][0],) * 2
        else:
            _, gamma, j = prov
            assert seg.rows[0] is EMPTY
            if gamma == 9:
                assert seg.rows[1] == (5 * j - 4, 5 * j - 1)
    # every literal's three segments tile its variable block in one of two ways
    for v in range(1, s + 1):
        for lit in (v, -v):
            pieces = sorted(seg.rows[0] for seg, p in zip(red.segments, red.provenance)
                            if p[0] == "literal" and p[1] == lit)
            covered = [c for l, r in pieces for c in range(l, r + 1)]
            assert covered == list(range(6 * v - 5, 6 * v + 1))


def test_filler_table_is_best_completion():
    """Each tabulated completion matches the best filler subset found by enumeration."""
    def cover(pieces):
        counts = [0] * 5
        for p in pieces:
            l, r = CLAUSE_PIECES[p]
            for c in range(l, r + 1):
                counts[c - 1] += 1
        return sum(abs(1 - x) for x in counts)

    for present in itertools.chain.from_iterable(itertools.combinations((1, 2, 3), n) for n in range(4)):
        best = min(cover(present + extra)
                   for n in range(8) for extra in itertools.combinations(range(4, 11), n))
        tabled = cover(present + FILLERS[frozenset(present)])
        assert tabled == best
        assert best == (1 if not present else 0)


def test_assignment_plan_counts_unsatisfied_clauses():
    f = Sat36Formula.parse(NAMED)
    red = reduce_3sat6(f)
    for bits in itertools.product((False, True), repeat=3):
        plan = assignment_to_plan(red, bits)
        assert plan.tc == f.t - f.satisfied(bits)
    assert assignment_to_plan(red, (True, False, False)).tc == 0
    # all-true falsifies only the all-negative clause
    assert brute_force_maxsat(f) == 6
    assert assignment_to_plan(red, (True, True, True)).tc == 1


def test_assignment_plan_uses_each_segment_once():
    red = reduce_3sat6(gen_sat36(4, rng(1)))
    plan = assignment_to_plan(red, (True, False, True, False))
    assert all(c == 1 for _, c in plan.terms)
    assert sum(1 for seg, _ in plan.terms if seg.rows[0] is not EMPTY) == 12


def test_malformed_formula_rejected_by_reduction():
    f = Sat36Formula.parse(NAMED)
    object.__setattr__(f, "clauses", f.clauses[:4])
    with pytest.raises(MalformedFormula):
        reduce_3sat6(f)


# ---- random instances ----

def test_consecutive_generators():
    inst = gen_random_instance(8, 12, 3, 1, True, rng(3))
    assert inst.consecutive and all(has_consecutive_ones(g) is not EMPTY for g in inst.generators)


def test_random_instance_reproducible_and_valid():
    a = gen_random_instance(50, 50, 9, INF, False, rng(4))
    assert a == gen_random_instance(50, 50, 9, INF, False, rng(4))
    assert validate_instance(a) == []
    assert all(any(g) for g in a.generators)


def test_decomposable_msc_matrix():
    for seed in range(20):
        inst = gen_msc_matrix(3, 6, 2, 4, rng(seed), decomposable=True, cap=0)
        plan = solve_msc(inst)
        assert plan is not None and plan.tc == 0
        assert max(max(r) for r in inst.a_matrix) <= 4


def test_full_width_interval_cannot_split_peaks():
    inst = MatrixInstance(((2, 0, 0, 1),), MinSeparation(4), cap=0)
    assert solve_msc(inst) is None


def test_msc_matrix_reproducible():
    assert gen_msc_matrix(4, 5, 2, 3, rng(7)) == gen_msc_matrix(4, 5, 2, 3, rng(7))
    assert gen_msc_matrix(4, 5, 2, 3, rng(7)).validate() == []
