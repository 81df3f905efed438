"""Exact recursive lattice reduction over the rationals.

Lattices are given by rational basis rows; reductions return sublattices
(integer coefficients against the parent basis) whose density ratio carries
a provable closed-form bound, checked in exact arithmetic.  See the README
for the module map, the CLI, and the tradeoff planner.
"""

from .errors import (
    HypothesisViolated,
    InvalidParams,
    InvalidRank,
    InvariantViolation,
    LatrecError,
    NotASublattice,
    NotPrimitive,
    PlanLatticeMismatch,
    RankMismatch,
    SizeTooSmall,
)
from .lattice import Lattice, Sublattice, density_ratio
from .reduce import (
    ReductionParams,
    RunStats,
    dsp_to_dsp,
    dsp_to_hsvp,
    gamma_sq_within,
    hsvp_recursive,
    theorem_bound,
)

__version__ = "0.1.0"

__all__ = [
    "HypothesisViolated",
    "InvalidParams",
    "InvalidRank",
    "InvariantViolation",
    "LatrecError",
    "Lattice",
    "NotASublattice",
    "NotPrimitive",
    "PlanLatticeMismatch",
    "RankMismatch",
    "ReductionParams",
    "RunStats",
    "SizeTooSmall",
    "Sublattice",
    "density_ratio",
    "dsp_to_dsp",
    "dsp_to_hsvp",
    "gamma_sq_within",
    "hsvp_recursive",
    "theorem_bound",
    "__version__",
]
