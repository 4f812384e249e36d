"""Exact and approximate solvers for decomposing integer vectors and matrices into binary generators."""
from .core import (DEFAULT_WEIGHTS, EMPTY, INF, CvpInstance, ObjectiveWeights, Solution, SolveReport,
                   Status, evaluate, has_consecutive_ones, interval_indicator, realize, validate_instance)
from .errors import *  # noqa: F401,F403
from .flow import build_network, flow_to_solution, min_cost_flow
from .instgen import (Sat36Formula, assignment_to_plan, gen_msc_matrix, gen_random_instance, gen_sat36,
                      reduce_3sat6)
from .lp import build_lp, solve_lp
from .oracle import OracleBudget, brute_force_maxsat, brute_force_opt
from .rounding import (RngSpec, approx_solve, deviation_estimate, lemma_bound, prepare_lattice,
                       randomized_round, round_sum_preserving)
from .segmentation import (ExplicitSegments, MatrixInstance, MatrixPlan, MinSeparation, Segment,
                           assemble_matrix_segments, msc_row_intervals, solve_msc, solve_row)
from .solve import solve

__version__ = "0.1.0"
