import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURES, e1, e2
from segcvp.core import INF, CvpInstance, ObjectiveWeights, Status, evaluate
from segcvp.errors import BudgetExceeded, TooManyVariables
from segcvp.instgen import Sat36Formula
from segcvp.oracle import (OracleBudget, brute_force_maxsat, brute_force_opt, coefficient_box, count_satisfied,
                           exhaustive_table, optima_from_table, sufficient_u_max)


def naive_opt(inst, u_max):
    """Plain enumeration of the whole box, no pruning."""
    best = None
    for u in itertools.product(range(u_max + 1), repeat=inst.k):
        sol = evaluate(inst, u)
        if sol.within_cap and (best is None or sol.objective < best):
            best = sol.objective
    return best


def test_e1():
    rep = brute_force_opt(e1())
    assert rep.status is Status.OPTIMAL_EXACT and rep.solution.objective == 0 and rep.solution.u == (1, 1)


def test_e2():
    rep = brute_force_opt(e2(), OracleBudget(u_max=2))
    assert rep.solution.objective == 1
    assert naive_opt(e2(), 2) == 1


def test_beam_on_objective():
    rep = brute_force_opt(CvpInstance((1,), [(1,)], cap=0, weights=ObjectiveWeights(0, 1)))
    assert rep.solution.objective == 1 and rep.solution.u == (1,)


def test_infeasible_certified():
    assert brute_force_opt(CvpInstance((5,), [], cap=2)).status is Status.INFEASIBLE
    assert brute_force_opt(CvpInstance((3, 0, 3), [(1, 1, 1)], cap=1)).status is Status.INFEASIBLE


def test_small_box_is_not_certified():
    rep = brute_force_opt(CvpInstance((4,), [(1,)]), OracleBudget(u_max=2))
    assert rep.status is Status.APPROXIMATE and rep.solution.u == (2,)
    with pytest.raises(BudgetExceeded):
        brute_force_opt(CvpInstance((4,), [(1,)], cap=0), OracleBudget(u_max=2))


def test_node_limit():
    inst = CvpInstance((3,) * 6, [tuple(int(i == j) for i in range(6)) for j in range(6)] * 2)
    with pytest.raises(BudgetExceeded):
        brute_force_opt(inst, OracleBudget(node_limit=5))


def test_sufficient_bound():
    assert sufficient_u_max(CvpInstance((0, 3, 1), [])) == 3


@st.composite
def tiny(draw):
    d = draw(st.integers(1, 4))
    k = draw(st.integers(0, 3))
    a = draw(st.lists(st.integers(0, 3), min_size=d, max_size=d))
    gens = draw(st.lists(st.lists(st.integers(0, 1), min_size=d, max_size=d), min_size=k, max_size=k))
    cap = draw(st.sampled_from([0, 1, INF]))
    w = ObjectiveWeights(draw(st.sampled_from([0, 1, 2])), draw(st.sampled_from([0, 1, Fraction(1, 3)])))
    return CvpInstance(a, gens, cap, w)


@settings(max_examples=300, deadline=None)
@given(tiny())
def test_pruned_search_matches_plain_enumeration(inst):
    # a box of 2 * max(a) + 1 also checks that max(a) is already enough
    wide = naive_opt(inst, 2 * max(inst.a) + 1)
    rep = brute_force_opt(inst)
    if wide is None:
        assert rep.status is Status.INFEASIBLE
    else:
        assert rep.status is Status.OPTIMAL_EXACT and rep.solution.objective == wide
    table = exhaustive_table(inst.generators, [inst.a], sufficient_u_max(inst))
    assert optima_from_table(*table, inst.cap, inst.weights) == [wide]


def test_coefficient_box():
    box = coefficient_box(2, 1)
    assert box.tolist() == [[0, 0], [0, 1], [1, 0], [1, 1]]
    assert coefficient_box(0, 3).shape == (1, 0)


def test_table_without_generators():
    tc, linf, bot = exhaustive_table([], [(1, 2), (0, 0)], 3)
    assert tc.tolist() == [[3], [0]] and linf.tolist() == [[2], [0]] and bot.tolist() == [0]


def test_maxsat_named_fixture():
    f = Sat36Formula.parse((FIXTURES / "sat36_named_s3.cnf").read_text())
    assert brute_force_maxsat(f) == 6
    assert count_satisfied(f.clauses, (1, 1, 1)) == 5


def test_maxsat_unsatisfiable_fixture():
    f = Sat36Formula.parse((FIXTURES / "sat36_unsat_s4_seed341.cnf").read_text())
    assert brute_force_maxsat(f) == 7
    best = max(count_satisfied(f.clauses, bits) for bits in itertools.product((0, 1), repeat=4))
    assert best == 7


class _Wide:
    s = 21
    clauses = ()


def test_maxsat_variable_limit():
    with pytest.raises(TooManyVariables):
        brute_force_maxsat(_Wide())
