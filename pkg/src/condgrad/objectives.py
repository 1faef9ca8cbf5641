"""Smooth convex objectives with their curvature constants.

Two families cover every regime the solver is verified against: quadratics
0.5 * (x - x0)' Q (x - x0) + c0 (strongly convex when Q is positive definite)
and under-determined least squares 0.5 * ||A x - b||^2, which is not strongly
convex but still satisfies the gradient lower bound

    ||grad f(x)||_* >= sqrt(alpha/2) * sqrt(f(x) - f_star)

with alpha = 4 * lambda_min(A A'); that weaker property is all the fast-rate
analysis needs.
"""

import numpy as np

from .linalg import spectral_bounds

DEGENERATE_REL_TOL = 1e-12


class Quadratic:
    """f(x) = 0.5 * (x - x0)' Q (x - x0) + c0 with Q symmetric PSD.

    ``x0`` may be a vector or a matrix; Q acts on the raveled coordinates, so
    matrix-domain problems (Schatten / group balls) reuse the same class.
    Supply ``f_star`` when the constrained optimal value is known so that
    solver traces carry the suboptimality column.
    """

    def __init__(self, q, x0, c0=0.0, f_star=None):
        q = np.asarray(q, dtype=float)
        x0 = np.asarray(x0, dtype=float)
        if q.ndim != 2 or q.shape[0] != q.shape[1]:
            raise ValueError(f"Q must be square, got shape {q.shape}")
        if q.shape[0] != x0.size:
            raise ValueError(f"Q is {q.shape[0]}x{q.shape[1]} but x0 has {x0.size} coordinates")
        scale = float(np.max(np.abs(q))) or 1.0
        if float(np.max(np.abs(q - q.T))) > 1e-12 * scale:
            raise ValueError("Q must be symmetric within 1e-12 relative tolerance")
        self.q = q
        self.x0 = x0
        self.c0 = float(c0)
        self.f_star = None if f_star is None else float(f_star)
        self._bounds = None

    @property
    def domain_shape(self):
        return self.x0.shape

    def value(self, x):
        d = self._delta(x)
        return float(0.5 * d @ (self.q @ d) + self.c0)

    def gradient(self, x):
        return (self.q @ self._delta(x)).reshape(self.x0.shape)

    def smoothness_constant(self):
        return self._spectral().lambda_max

    def grad_lower_bound_constant(self):
        """Strong convexity constant lambda_min(Q), which implies the
        gradient lower bound with the same alpha."""
        b = self._spectral()
        if b.lambda_min <= DEGENERATE_REL_TOL * b.lambda_max:
            raise ValueError(
                "Q is not positive definite: lambda_min "
                f"{b.lambda_min:.3e} vs lambda_max {b.lambda_max:.3e}"
            )
        return b.lambda_min

    def _delta(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != self.x0.shape:
            raise ValueError(f"expected shape {self.x0.shape}, got {x.shape}")
        return (x - self.x0).ravel()

    def _spectral(self):
        if self._bounds is None:
            self._bounds = spectral_bounds(self.q)
        return self._bounds


class LeastSquares:
    """f(x) = 0.5 * ||A x - b||_2^2 over vectors x."""

    def __init__(self, a, b, f_star=None):
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        if a.ndim != 2:
            raise ValueError(f"A must be a matrix, got ndim={a.ndim}")
        if b.ndim != 1 or b.shape[0] != a.shape[0]:
            raise ValueError(f"b must be a vector of length {a.shape[0]}, got shape {b.shape}")
        self.a = a
        self.b = b
        self.f_star = None if f_star is None else float(f_star)
        self._gram_bounds = None
        self._row_gram_bounds = None

    @property
    def domain_shape(self):
        return (self.a.shape[1],)

    def value(self, x):
        res = self.a @ self._vec(x) - self.b
        return float(0.5 * res @ res)

    def gradient(self, x):
        return self.a.T @ (self.a @ self._vec(x) - self.b)

    def smoothness_constant(self):
        if self._gram_bounds is None:
            self._gram_bounds = spectral_bounds(self.a.T @ self.a)
        return self._gram_bounds.lambda_max

    def grad_lower_bound_constant(self):
        """4 * lambda_min(A A'), valid when A has full row rank (m < n).

        Squaring the gradient bound gives ||grad f||^2 >= (alpha/2) * (f - f_star),
        and the residual chain ||A'(Ax-b)||^2 >= lambda_min(AA') * ||Ax-b||^2
        matches it with alpha = 4 * lambda_min.
        """
        if self._row_gram_bounds is None:
            self._row_gram_bounds = spectral_bounds(self.a @ self.a.T)
        b = self._row_gram_bounds
        if b.lambda_min <= DEGENERATE_REL_TOL * b.lambda_max:
            raise ValueError(
                "A A' is numerically rank deficient: lambda_min "
                f"{b.lambda_min:.3e} vs lambda_max {b.lambda_max:.3e}"
            )
        return 4.0 * b.lambda_min

    def _vec(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != self.domain_shape:
            raise ValueError(f"expected shape {self.domain_shape}, got {x.shape}")
        return x


def finite_difference_gradient(objective, x, step=None):
    """Central-difference gradient, the oracle the analytic gradients are
    checked against. Default step 1e-5 * (1 + ||x||_2)."""
    x = np.asarray(x, dtype=float)
    if step is None:
        step = 1e-5 * (1.0 + float(np.sqrt(np.vdot(x, x))))
    out = np.zeros_like(x)
    flat = out.ravel()
    probe = x.copy()
    probe_flat = probe.ravel()
    for i in range(probe_flat.size):
        orig = probe_flat[i]
        probe_flat[i] = orig + step
        hi = objective.value(probe)
        probe_flat[i] = orig - step
        lo = objective.value(probe)
        probe_flat[i] = orig
        flat[i] = (hi - lo) / (2.0 * step)
    return out


def gradient_bound_violations(objective, ball, f_star=None, samples=1000, seed=0, slack=1e-8):
    """Sampling falsifier for the dual-norm gradient lower bound.

    Draws feasible points from ``ball`` and counts how often

        ||grad f(x)||_* < sqrt(alpha/2) * sqrt(f(x) - f_star) - slack

    with alpha = objective.grad_lower_bound_constant() and the dual taken in
    the ball's own norm. ``f_star`` defaults to objective.f_star and must be
    the constrained optimal value.
    """
    if f_star is None:
        f_star = objective.f_star
    if f_star is None:
        raise ValueError("f_star is required (pass it or set it on the objective)")
    alpha = objective.grad_lower_bound_constant()
    rng = np.random.default_rng(seed)
    pts = ball.sample(rng, samples)
    bad = 0
    for x in pts:
        lhs = ball.dual_norm(objective.gradient(x))
        gap = max(objective.value(x) - f_star, 0.0)
        if lhs < np.sqrt(0.5 * alpha * gap) - slack:
            bad += 1
    return bad
