"""Necessary-condition toolkit and search for even almost perfect numbers 2^r * b^2."""

__version__ = "0.1.0"

from .arith import abundancy, as_power_of_two, factorize, gcd, omega, sigma
from .criteria import (
    c_lower_bound,
    deficiency_c,
    is_almost_perfect_criterion,
    is_almost_perfect_direct,
    is_deficient_criterion,
)
from .pipeline import CandidateVerdict, admissible, check_bounds, check_solitary_gcd, determine_r, evaluate_candidate
from .search import Checkpoint, ScanHit, generate_a059046, run_task, scan_odd_squares
from .sieve import SieveSegment, partition_range, sieve_sigma_segment

__all__ = [
    "CandidateVerdict", "Checkpoint", "ScanHit", "SieveSegment",
    "abundancy", "admissible", "as_power_of_two", "c_lower_bound", "check_bounds",
    "check_solitary_gcd", "deficiency_c", "determine_r", "evaluate_candidate",
    "factorize", "gcd", "generate_a059046", "is_almost_perfect_criterion",
    "is_almost_perfect_direct", "is_deficient_criterion", "omega", "partition_range",
    "run_task", "scan_odd_squares", "sieve_sigma_segment", "sigma",
]
