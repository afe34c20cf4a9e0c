"""Independent ramification data from Newton polygons and Puiseux branches."""
from .oracle import (
    OracleProfile,
    branch_valuation,
    element_valuation,
    good_primes,
    profile_at,
    puiseux_branches,
    ramification_oracle,
    reduce_input,
)
from .puiseux import NewtonPolygon, PuiseuxBranch, expand_at, newton_polygon

__all__ = [
    "NewtonPolygon",
    "OracleProfile",
    "PuiseuxBranch",
    "branch_valuation",
    "element_valuation",
    "expand_at",
    "good_primes",
    "newton_polygon",
    "profile_at",
    "puiseux_branches",
    "ramification_oracle",
    "reduce_input",
]
