"""Biased random k-SAT: sampling, solvers, analytic bounds and experiments."""

from .formula import (
    BiasParams, Formula, InvalidParameters, Literal, MalformedWord,
    clause_to_subcube, evaluate, is_satisfied, sample_clause, sample_formula, subcube_to_clause,
)
from .bounds import (
    alpha2, c_p_maximize, c_px, closed_form_bounds, cs_x, pair_q_exact, q_exact,
    second_moment_ratio, single_flip_bound, ucp_bound, x_star,
)
from .harness import ExperimentConfig, parabola_experiment, sat_curve, spine_experiment, threshold_bisect
from .kk import cascade_decompose, fvector_valid, min_w_brute, shadow_bound, w_of_cascade, w_of_g
from .liquid import closed_form, empirical_trajectory, integrate
from .russo import pivotal_rho_estimate, russo_check
from .solvers import brute_force_sat, dpll_sat, spine_set, two_sat_solve, ucp_run

__version__ = "0.1.0"
