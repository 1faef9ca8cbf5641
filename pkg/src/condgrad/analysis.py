"""Convergence-rate measurement and bound checking for solver traces.

The checks are one-sided: every bound here is an upper bound on the
suboptimality h_t = f(x_t) - f_star, so observing convergence faster than a
bound is success. Records with h at or below the floating-point floor are
excluded from fits and checks, since at that scale cancellation in f - f_star
dominates the signal.
"""

import math
from dataclasses import dataclass

import numpy as np

H_FLOOR = 1e-14
BOUND_REL_SLACK = 1e-9
CONTRACTION_SLACK = 1e-10


@dataclass(frozen=True)
class RateReport:
    """Fitted log-log rate exponent plus the bound-check summary of a trace."""

    exponent: float
    fit_window: tuple
    bound_name: str
    violations: int
    max_violation_ratio: float


def convex_rate_bound(t, beta, diameter):
    """Suboptimality bound 8 * beta * D^2 / t for smooth convex minimization
    over any compact convex set, t >= 1."""
    if t < 1:
        raise ValueError(f"bound is defined for t >= 1, got {t}")
    return 8.0 * beta * diameter**2 / t


def strongly_convex_rate_bound(t, beta, diameter, alpha_obj, alpha_set):
    """Suboptimality bound for a strongly convex set and an objective with
    gradient lower-bound constant alpha_obj:

        max(4.5 * beta * D^2, 18 / M^2) / (t + 2)^2,
        M = sqrt(alpha_obj) * alpha_set / (8 * sqrt(2) * beta).

    All four constants must be taken in the same norm.
    """
    if t < 1:
        raise ValueError(f"bound is defined for t >= 1, got {t}")
    if alpha_obj <= 0.0 or alpha_set <= 0.0:
        raise ValueError(
            f"curvature constants must be positive, got alpha_obj={alpha_obj}, alpha_set={alpha_set}"
        )
    m = math.sqrt(alpha_obj) * alpha_set / (8.0 * math.sqrt(2.0) * beta)
    c = max(4.5 * beta * diameter**2, 18.0 / m**2)
    return c / (t + 2) ** 2


def linear_rate_factor(regime, beta, diameter=None, alpha_obj=None, alpha_set=None, g=None, r_int=None):
    """Per-iteration error contraction factor in the two geometric regimes.

    regime "gradient_bounded": gradients of dual norm >= g everywhere on a
    set with curvature constant alpha_set gives
    max(1/2, 1 - alpha_set * g / (8 * beta)).

    regime "interior": an optimum at own-norm distance >= r_int from the
    boundary of a set of diameter D gives
    1 - r_int^2 * alpha_obj / (4 * beta * D^2).
    """
    if regime == "gradient_bounded":
        if alpha_set is None or g is None:
            raise ValueError("gradient_bounded regime needs alpha_set and g")
        factor = max(0.5, 1.0 - alpha_set * g / (8.0 * beta))
    elif regime == "interior":
        if diameter is None or alpha_obj is None or r_int is None:
            raise ValueError("interior regime needs diameter, alpha_obj and r_int")
        factor = 1.0 - r_int**2 * alpha_obj / (4.0 * beta * diameter**2)
    else:
        raise ValueError(f"unknown regime {regime!r}")
    if not 0.0 < factor < 1.0:
        raise ValueError(f"inconsistent constants: contraction factor {factor} is outside (0, 1)")
    return factor


def contraction_factor(grad_dual_norm, beta, alpha_set):
    """max(1/2, 1 - alpha_set * ||grad||_* / (8 * beta)), the per-iteration
    contraction the solver achieves over a strongly convex set."""
    return max(0.5, 1.0 - alpha_set * grad_dual_norm / (8.0 * beta))


def check_bound(trace, bound, floor=H_FLOOR):
    """Count iterations whose recorded h exceeds bound(t).

    ``bound`` is a callable on integer t >= 1; rows with t = 0 are skipped
    (the bounds start at the first iterate) and rows with h <= floor are
    excluded. Returns (violations, max_ratio) where max_ratio is the largest
    h_t / bound(t) seen. Every record must carry h.
    """
    violations = 0
    max_ratio = 0.0
    for rec in trace:
        if rec.h is None:
            raise ValueError(f"record at t={rec.t} has no h value")
        if rec.t < 1 or rec.h <= floor:
            continue
        limit = bound(rec.t)
        ratio = rec.h / limit
        max_ratio = max(max_ratio, ratio)
        if rec.h > limit * (1.0 + BOUND_REL_SLACK):
            violations += 1
    return violations, max_ratio


def contraction_violations(h_values, factors, floor=H_FLOOR, slack=CONTRACTION_SLACK):
    """Count consecutive pairs with h[t+1] > h[t] * factor[t] + slack * (1 + h[t]).

    ``factors`` is a scalar or a sequence with one entry per step (len(h) - 1
    of them are used). Pairs where either value sits at or below the floor are
    skipped.
    """
    h = [float(v) for v in h_values]
    steps = len(h) - 1
    if np.isscalar(factors):
        factors = [float(factors)] * steps
    else:
        factors = [float(f) for f in factors]
        if len(factors) < steps:
            raise ValueError(f"need {steps} factors for {len(h)} h values, got {len(factors)}")
    bad = 0
    for t in range(steps):
        if h[t] <= floor or h[t + 1] <= floor:
            continue
        if h[t + 1] > h[t] * factors[t] + slack * (1.0 + h[t]):
            bad += 1
    return bad


def trace_contraction_violations(trace, alpha_set, beta, grad_dual_norms=None, floor=H_FLOOR, slack=CONTRACTION_SLACK):
    """Check a solver trace against the per-iteration contraction
    h_{t+1} <= h_t * max(1/2, 1 - alpha_set * ||grad_t||_* / (8 beta)).

    ``grad_dual_norms`` defaults to the values recorded in the trace; when
    passed explicitly it must have one entry per record.
    """
    if grad_dual_norms is None:
        grad_dual_norms = [rec.grad_dual_norm for rec in trace]
    if len(grad_dual_norms) != len(trace):
        raise ValueError(f"{len(trace)} records but {len(grad_dual_norms)} gradient norms")
    h = []
    for rec in trace:
        if rec.h is None:
            raise ValueError(f"record at t={rec.t} has no h value")
        h.append(rec.h)
    factors = [contraction_factor(gdn, beta, alpha_set) for gdn in grad_dual_norms[:-1]]
    return contraction_violations(h, factors, floor=floor, slack=slack)


def rate_exponent(trace, t_lo, t_hi, floor=H_FLOOR):
    """Least-squares slope of log h_t against log t over t in [t_lo, t_hi].

    Records with h <= floor are excluded as floating-point noise; fewer than
    two usable points is a degenerate fit and raises.
    """
    if not t_hi > t_lo >= 1:
        raise ValueError(f"need t_hi > t_lo >= 1, got [{t_lo}, {t_hi}]")
    ts, hs = [], []
    for rec in trace:
        if rec.h is None:
            raise ValueError(f"record at t={rec.t} has no h value")
        if t_lo <= rec.t <= t_hi and rec.h > floor:
            ts.append(rec.t)
            hs.append(rec.h)
    if len(ts) < 2:
        raise ValueError(f"degenerate fit: only {len(ts)} usable points in [{t_lo}, {t_hi}]")
    lt = np.log(np.asarray(ts, dtype=float))
    lh = np.log(np.asarray(hs, dtype=float))
    lt -= lt.mean()
    return float((lt @ (lh - lh.mean())) / (lt @ lt))


def rate_report(trace, bound, bound_name, t_lo, t_hi, floor=H_FLOOR):
    """Bundle the exponent fit and the bound check for one trace."""
    violations, max_ratio = check_bound(trace, bound, floor=floor)
    exponent = rate_exponent(trace, t_lo, t_hi, floor=floor)
    return RateReport(
        exponent=exponent,
        fit_window=(t_lo, t_hi),
        bound_name=bound_name,
        violations=violations,
        max_violation_ratio=max_ratio,
    )


def bound_crossover(beta, diameter, alpha_obj, alpha_set):
    """Smallest t past which the strongly-convex-set bound stays below the
    general convex one (quadratic vs linear decay guarantees one exists)."""
    if alpha_obj <= 0.0 or alpha_set <= 0.0 or beta <= 0.0 or diameter <= 0.0:
        raise ValueError("all constants must be positive")
    c1 = 8.0 * beta * diameter**2
    m = math.sqrt(alpha_obj) * alpha_set / (8.0 * math.sqrt(2.0) * beta)
    c2 = max(4.5 * beta * diameter**2, 18.0 / m**2)
    # c2/(t+2)^2 < c1/t  <=>  phi(t) = c1*(t+2)^2 - c2*t > 0. phi is an
    # upward parabola with vertex at c2/(2*c1) - 2, so past the vertex the
    # first sign change is permanent.
    t = max(1, int(c2 / (2.0 * c1)))
    while c2 * t >= c1 * (t + 2) ** 2:
        t += max(1, t // 8)
    return t
