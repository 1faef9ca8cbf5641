"""condgrad: projection-free convex optimization over norm balls.

The solver replaces projections with closed-form linear minimization oracles
over lp, Schatten and group-norm balls (all strongly convex for exponents in
(1, 2]) plus a box baseline, takes exact line-search steps against the
quadratic upper model, and ships the measurement tools that verify the
convergence-rate guarantees each regime comes with.
"""

from .analysis import (
    RateReport,
    bound_crossover,
    check_bound,
    contraction_factor,
    contraction_violations,
    convex_rate_bound,
    linear_rate_factor,
    rate_exponent,
    rate_report,
    strongly_convex_rate_bound,
    trace_contraction_violations,
)
from .linalg import (
    NumericalError,
    SpectralBounds,
    SvdResult,
    singular_values,
    spectral_bounds,
    svd,
)
from .norms import StrongConvexityParam, dual_exponent, group_norm, lp_norm, schatten_norm
from .objectives import (
    LeastSquares,
    Quadratic,
    finite_difference_gradient,
    gradient_bound_violations,
)
from .oracles import lmo_box, lmo_group, lmo_lp, lmo_schatten
from .sets import Box, GroupBall, LpBall, SchattenBall, verify_set_strong_convexity
from .solver import (
    IterationRecord,
    SolveResult,
    SolverConfig,
    default_start,
    duality_gap,
    frank_wolfe,
    line_search_eta,
)

__all__ = [
    "Box",
    "GroupBall",
    "IterationRecord",
    "LeastSquares",
    "LpBall",
    "NumericalError",
    "Quadratic",
    "RateReport",
    "SchattenBall",
    "SolveResult",
    "SolverConfig",
    "SpectralBounds",
    "StrongConvexityParam",
    "SvdResult",
    "bound_crossover",
    "check_bound",
    "contraction_factor",
    "contraction_violations",
    "convex_rate_bound",
    "default_start",
    "dual_exponent",
    "duality_gap",
    "finite_difference_gradient",
    "frank_wolfe",
    "gradient_bound_violations",
    "group_norm",
    "line_search_eta",
    "linear_rate_factor",
    "lmo_box",
    "lmo_group",
    "lmo_lp",
    "lmo_schatten",
    "lp_norm",
    "rate_exponent",
    "rate_report",
    "schatten_norm",
    "singular_values",
    "spectral_bounds",
    "strongly_convex_rate_bound",
    "svd",
    "trace_contraction_violations",
    "verify_set_strong_convexity",
]

__version__ = "0.1.0"
