"""Exact-arithmetic toolkit for Poisson cluster algebras.

Core objects: integer matrices and lattices (intlinalg), sparse Laurent
polynomials over exact rationals (laurent), seeds and mutation (seed),
log-canonical brackets and compatible pairs (poisson), torus-invariant
Poisson prime candidates (tpp), and built-in cross-verified examples
(corpus).  A FastAPI service (service) and a thin CLI client (cli) wrap
the library for batch and multi-client use.
"""

__version__ = "0.1.0"

from .errors import ClusterPoissonError, DimensionMismatch, InvariantViolation
from .intlinalg import IntMatrix, LatticeBasis, integer_kernel, rational_rank, skew_symmetrizer, sum_rank
from .laurent import LaurentPoly, NotDivisible, parse_poly
from .poisson import PoissonSeed, bracket, check_pair, mutate_pair, super_toric, toric_lattice
from .seed import Seed, explore, mutate_matrix
from .tpp import (
    CandidateSet,
    MembershipOracle,
    acyclic_classify,
    codim_report,
    defining_cluster,
    ideal_member,
    inclusion_poset,
    quotient_project,
    scan_tp_candidates,
    y_set,
)

__all__ = [
    "ClusterPoissonError",
    "DimensionMismatch",
    "InvariantViolation",
    "IntMatrix",
    "LatticeBasis",
    "integer_kernel",
    "rational_rank",
    "skew_symmetrizer",
    "sum_rank",
    "LaurentPoly",
    "NotDivisible",
    "parse_poly",
    "PoissonSeed",
    "bracket",
    "check_pair",
    "mutate_pair",
    "super_toric",
    "toric_lattice",
    "Seed",
    "explore",
    "mutate_matrix",
    "CandidateSet",
    "MembershipOracle",
    "acyclic_classify",
    "codim_report",
    "defining_cluster",
    "ideal_member",
    "inclusion_poset",
    "quotient_project",
    "scan_tp_candidates",
    "y_set",
    "__version__",
]
