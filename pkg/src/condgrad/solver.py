"""Projection-free solver: linear oracle steps with exact line search.

Each iteration asks the feasible set's linear minimization oracle for the
point p minimizing the dot product with the current gradient, then moves to
the convex combination x + eta * (p - x) with eta minimizing the quadratic
upper model

    eta * (p - x) . grad + (beta / 2) * eta^2 * ||p - x||^2

over [0, 1], in the set's own norm. The trace records, per iteration, the
objective value, the duality gap (x - p) . grad (which upper-bounds the
suboptimality by convexity), eta, the step norm, the dual norm of the
gradient, and f - f_star when the optimal value is known.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

from .linalg import NumericalError

ZERO_DIRECTION_TOL = 1e-14


@dataclass(frozen=True)
class SolverConfig:
    """Run parameters. ``beta_override`` replaces the objective's smoothness
    constant; overestimates are safe (the line-search model stays an upper
    bound), underestimates void the guarantees."""

    max_iters: int = 1000
    gap_tolerance: float = 0.0
    beta_override: float | None = None
    record_trace: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.gap_tolerance < 0.0:
            raise ValueError(f"gap_tolerance must be >= 0, got {self.gap_tolerance}")
        if self.beta_override is not None and not self.beta_override > 0.0:
            raise ValueError(f"beta_override must be positive, got {self.beta_override}")


@dataclass(frozen=True)
class IterationRecord:
    """One row of the convergence trace."""

    t: int
    f_value: float
    duality_gap: float
    eta: float
    step_norm: float
    grad_dual_norm: float
    h: float | None = None


@dataclass
class SolveResult:
    final_point: np.ndarray
    final_value: float
    final_gap: float
    iterations_used: int
    trace: list = field(default_factory=list)
    terminated_by: str = "max_iters"


def line_search_eta(g, beta, step_norm_sq):
    """Minimizer over [0, 1] of eta*g + (beta/2)*eta^2*step_norm_sq."""
    if step_norm_sq <= 0.0:
        return 0.0
    return min(max(-g / (beta * step_norm_sq), 0.0), 1.0)


def duality_gap(x, p, grad):
    """(x - p) . grad for oracle output p; nonnegative at feasible x."""
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    grad = np.asarray(grad, dtype=float)
    if x.shape != p.shape or x.shape != grad.shape:
        raise ValueError(f"shape mismatch: x {x.shape}, p {p.shape}, grad {grad.shape}")
    return float(np.vdot(x - p, grad))


def default_start(ball):
    """A deterministic extreme feasible point: the oracle's answer to an
    all-ones objective."""
    return ball.lmo(np.ones(ball.domain_shape))


def frank_wolfe(objective, ball, x_init=None, config=None):
    """Minimize a smooth convex objective over a feasible set via its linear
    minimization oracle.

    Stops when the duality gap reaches config.gap_tolerance, after
    config.max_iters steps, or when the oracle direction degenerates (p_t is
    numerically x_t). Objective values along the trace are non-increasing
    because eta = 0 is always a line-search candidate.

    Raises ValueError when x_init is infeasible and NumericalError when a
    non-finite value shows up mid-run.
    """
    if config is None:
        config = SolverConfig()
    beta = config.beta_override if config.beta_override is not None else objective.smoothness_constant()
    if not beta > 0.0:
        raise ValueError(f"smoothness constant must be positive, got {beta}")

    x = default_start(ball) if x_init is None else np.asarray(x_init, dtype=float)
    if x.shape != tuple(ball.domain_shape):
        raise ValueError(f"x_init has shape {x.shape}, feasible set expects {ball.domain_shape}")
    if not ball.contains(x, tol=1e-9):
        raise ValueError("x_init is not feasible (membership tolerance 1e-9)")

    f_star = objective.f_star
    trace = []
    fx = gap = float("nan")
    terminated_by = "max_iters"
    t = 0
    for t in itertools.count():
        fx = objective.value(x)
        grad = objective.gradient(x)
        if not (np.isfinite(fx) and np.all(np.isfinite(grad))):
            raise NumericalError(f"non-finite objective or gradient at iteration {t}")
        p = ball.lmo(grad)
        gap = duality_gap(x, p, grad)
        d = p - x
        step_norm = ball.norm(d)

        if gap <= config.gap_tolerance:
            terminated_by = "gap_tolerance"
        elif step_norm <= ZERO_DIRECTION_TOL * (1.0 + ball.norm(x)):
            terminated_by = "zero_direction"
        elif t == config.max_iters:
            terminated_by = "max_iters"
        else:
            terminated_by = ""
        eta = 0.0 if terminated_by else line_search_eta(float(np.vdot(d, grad)), beta, step_norm**2)

        if config.record_trace:
            trace.append(
                IterationRecord(
                    t=t,
                    f_value=fx,
                    duality_gap=gap,
                    eta=eta,
                    step_norm=step_norm,
                    grad_dual_norm=ball.dual_norm(grad),
                    h=None if f_star is None else fx - f_star,
                )
            )
        if terminated_by:
            break
        x = x + eta * d

    return SolveResult(
        final_point=x,
        final_value=fx,
        final_gap=gap,
        iterations_used=t,
        trace=trace,
        terminated_by=terminated_by,
    )
