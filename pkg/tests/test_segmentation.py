import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from segcvp.core import EMPTY, INF, CvpInstance, ObjectiveWeights, Status, interval_indicator
from segcvp.errors import InvalidLambda
from segcvp.oracle import OracleBudget, brute_force_opt
from segcvp.segmentation import (ExplicitSegments, MatrixInstance, MinSeparation, Segment,
                                 assemble_matrix_segments, evaluate_plan, msc_row_intervals, solve_msc,
                                 solve_row)

PEAK = (1, 1, 4, 1, 1)


def test_intervals_lexicographic():
    assert msc_row_intervals(5, 3) == [(1, 3), (1, 4), (1, 5), (2, 4), (2, 5), (3, 5)]
    assert msc_row_intervals(3, 3) == [(1, 3)]


@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_unconstrained_count(n):
    assert len(msc_row_intervals(n, 1)) == n * (n + 1) // 2


@pytest.mark.parametrize("n, lam", [(3, 0), (3, 4)])
def test_invalid_lambda(n, lam):
    with pytest.raises(InvalidLambda):
        msc_row_intervals(n, lam)


def test_peak_row_not_decomposable_with_min_width_three():
    assert solve_row(PEAK, msc_row_intervals(5, 3), cap=0).status is Status.INFEASIBLE


def test_peak_row_unbounded_cap():
    ivs = msc_row_intervals(5, 3)
    rep = solve_row(PEAK, ivs, cap=INF)
    assert rep.status is Status.OPTIMAL_EXACT and rep.solution.tc == 2
    oracle = brute_force_opt(CvpInstance(PEAK, [interval_indicator(iv, 5) for iv in ivs]), OracleBudget(u_max=5))
    assert oracle.solution.tc == 2


def test_zero_row():
    rep = solve_row((0, 0, 0, 0), msc_row_intervals(4, 2))
    assert rep.solution.tc == 0 and set(rep.solution.u) == {0}


def test_single_row_matrix():
    plan = solve_msc(MatrixInstance((PEAK,), MinSeparation(3)))
    assert plan.tc == 2 and plan.realized == ((1, 1, 2, 1, 1),)


def test_full_segment_reproduces_ones():
    plan = solve_msc(MatrixInstance(((1, 1), (1, 1)), MinSeparation(2), cap=0))
    assert plan.terms == ((Segment(((1, 2), (1, 2))), 1),)
    assert plan.tc == 0 and plan.status is Status.OPTIMAL_EXACT and plan.certified_optimal


def test_separated_entries_infeasible():
    assert solve_msc(MatrixInstance(((1, 1, 1), (1, 0, 1)), MinSeparation(3), cap=0)) is None
    # the single wide interval with coefficient 0 or 1 never matches (1, 0, 1)
    inst = CvpInstance((1, 0, 1), [(1, 1, 1)], cap=0)
    assert brute_force_opt(inst, OracleBudget(u_max=1)).status is Status.INFEASIBLE


def test_beam_on_weight_drops_certification():
    plan = solve_msc(MatrixInstance(((1, 2, 1),), MinSeparation(1), weights=ObjectiveWeights(1, 1)))
    assert plan.row_optimal and plan.status is Status.APPROXIMATE and not plan.certified_optimal


def test_solve_msc_needs_min_separation():
    with pytest.raises(TypeError):
        solve_msc(MatrixInstance(((1,),), ExplicitSegments(())))


def test_assembly_single_row():
    assert assemble_matrix_segments([[((2, 4), 3), ((1, 2), 1)]]) == [
        (Segment(((1, 2),)), 1), (Segment(((2, 4),)), 3)]


def test_assembly_closed_row():
    assert assemble_matrix_segments([[((1, 2), 1)], []]) == [(Segment(((1, 2), EMPTY)), 1)]


def test_assembly_pads_shorter_row():
    terms = assemble_matrix_segments([[((1, 3), 2)], [((2, 3), 1)]])
    assert terms == [(Segment(((1, 3), (2, 3))), 1), (Segment(((1, 3), EMPTY)), 1)]


def test_segment_checks():
    seg = Segment(((1, 2), EMPTY, (3, 3), (0, 2)))
    assert seg.bad_rows(3) == [3]
    assert seg.bad_rows(3, lam=2) == [2, 3]
    assert seg.matrix(3) == ((1, 1, 0), (0, 0, 0), (0, 0, 1), (1, 1, 0))


def test_matrix_validation_messages():
    inst = MatrixInstance(((1, -1), (0,)), MinSeparation(3))
    msgs = inst.validate()
    assert any("A[0][1]" in m for m in msgs)
    assert any("A[1]" in m and "row length" in m for m in msgs)
    assert any("lambda" in m for m in msgs)


def test_flattening_is_row_major():
    inst = MatrixInstance(((1, 2), (3, 4)), ExplicitSegments([((1, 1), (1, 2)), (EMPTY, (2, 2))]))
    cvp = inst.to_cvp()
    assert cvp.a == (1, 2, 3, 4)
    assert cvp.generators == ((1, 0, 1, 1), (0, 0, 0, 1))


def _decomposable(row, lam):
    """Exact decomposability by enumeration: some u in the box realizes the row."""
    ivs = msc_row_intervals(len(row), lam)
    gens = [interval_indicator(iv, len(row)) for iv in ivs]
    rep = brute_force_opt(CvpInstance(row, gens, cap=0))
    return rep.status is not Status.INFEASIBLE


def test_exhaustive_single_row_decomposability():
    for n in range(1, 5):
        for lam in range(1, n + 1):
            for row in itertools.product(range(4), repeat=n):
                plan = solve_msc(MatrixInstance((row,), MinSeparation(lam), cap=0))
                assert (plan is not None) == _decomposable(row, lam), (row, lam)


@st.composite
def msc_matrices(draw):
    m = draw(st.integers(1, 4))
    n = draw(st.integers(1, 6))
    A = draw(st.lists(st.lists(st.integers(0, 4), min_size=n, max_size=n), min_size=m, max_size=m))
    lam = draw(st.integers(1, n))
    cap = draw(st.sampled_from([0, 1, 2, INF]))
    nu = draw(st.sampled_from([0, 1]))
    return MatrixInstance(A, MinSeparation(lam), cap, ObjectiveWeights(1, nu))


@settings(max_examples=150, deadline=None)
@given(msc_matrices(), st.sampled_from([1, 3]))
def test_row_fidelity_and_additivity(inst, workers):
    lam = inst.constraint.lam
    ivs = msc_row_intervals(inst.n, lam)
    reports = [solve_row(r, ivs, inst.cap, inst.weights) for r in inst.a_matrix]
    plan = solve_msc(inst, workers=workers)
    if any(r.status is Status.INFEASIBLE for r in reports):
        assert plan is None
        return
    assert plan.realized == tuple(r.solution.b for r in reports)
    assert plan.tc == sum(r.solution.tc for r in reports)
    assert plan.linf == max(r.solution.linf for r in reports)
    assert plan.bot == max(r.solution.bot for r in reports)
    assert all(c > 0 for _, c in plan.terms)
    for seg, _ in plan.terms:
        assert seg.bad_rows(inst.n, lam) == []
    assert evaluate_plan(inst, plan.terms).realized == plan.realized
