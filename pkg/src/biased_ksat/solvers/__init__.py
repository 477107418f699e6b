from .brute import SolutionCounts, brute_force_sat, brute_spine, solutions
from .dpll import SolverRefusal, dpll_sat, is_sat
from .spine import SpineReport, UnsatisfiableInput, spine_set
from .stats import DegreeStats, degree_stats, sparsity_check
from .twosat import two_sat_solve
from .ucp import UcpOutcome, ucp_run

__all__ = [
    "SolutionCounts", "brute_force_sat", "brute_spine", "solutions",
    "SolverRefusal", "dpll_sat", "is_sat",
    "SpineReport", "UnsatisfiableInput", "spine_set",
    "DegreeStats", "degree_stats", "sparsity_check",
    "two_sat_solve", "UcpOutcome", "ucp_run",
]
