"""Hypervolume-optimal point distributions and their multiplicative approximation ratio."""

from .approximation import (
    ApproxResult,
    Certificate,
    IntervalRatio,
    certificate_for,
    check_certificate,
    interval_worst_point,
    ratio,
)
from .closed_form import (
    RatioBreakdown,
    RefRegime,
    convex_hyp_certificate,
    convex_hyp_dist,
    convex_hyp_dist_ref,
    convex_hyp_ratio_fixed,
    convex_hyp_ratio_ref,
    convex_opt_app_certificate,
    convex_opt_app_dist,
    convex_optimal_reference,
    linear_hyp_certificate,
    linear_hyp_dist,
    linear_hyp_dist_ref,
    linear_hyp_ratio_fixed,
    linear_hyp_ratio_ref,
    linear_opt_app_certificate,
    linear_opt_app_dist,
    linear_optimal_reference,
)
from .errors import (
    BudgetError,
    ConstructionError,
    ConvergenceError,
    DegenerateReferenceError,
    DomainError,
    HvApproxError,
    InvalidCertificateError,
    RegimeClassificationError,
    SolverError,
    ValidationError,
)
from .front import Front, Linear, PowerFamily, Reciprocal, parse_front
from .hypervolume import HypervolumeResult, PointSet, ReferencePoint, contributions, hyp2d, hypervolume
from .kernels import BACKEND
from .numeric import (
    HypervolumeSolution,
    SolverOptions,
    brute_force_best,
    maximize_hypervolume,
    optimal_approximation,
    solve_hypervolume,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxResult",
    "BACKEND",
    "BudgetError",
    "Certificate",
    "ConstructionError",
    "ConvergenceError",
    "DegenerateReferenceError",
    "DomainError",
    "Front",
    "HvApproxError",
    "HypervolumeResult",
    "HypervolumeSolution",
    "IntervalRatio",
    "InvalidCertificateError",
    "Linear",
    "PointSet",
    "PowerFamily",
    "RatioBreakdown",
    "Reciprocal",
    "RefRegime",
    "ReferencePoint",
    "RegimeClassificationError",
    "SolverError",
    "SolverOptions",
    "ValidationError",
    "brute_force_best",
    "certificate_for",
    "check_certificate",
    "contributions",
    "convex_hyp_certificate",
    "convex_hyp_dist",
    "convex_hyp_dist_ref",
    "convex_hyp_ratio_fixed",
    "convex_hyp_ratio_ref",
    "convex_opt_app_certificate",
    "convex_opt_app_dist",
    "convex_optimal_reference",
    "hyp2d",
    "hypervolume",
    "interval_worst_point",
    "linear_hyp_certificate",
    "linear_hyp_dist",
    "linear_hyp_dist_ref",
    "linear_hyp_ratio_fixed",
    "linear_hyp_ratio_ref",
    "linear_opt_app_certificate",
    "linear_opt_app_dist",
    "linear_optimal_reference",
    "maximize_hypervolume",
    "optimal_approximation",
    "parse_front",
    "ratio",
    "solve_hypervolume",
]
