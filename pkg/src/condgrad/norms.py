"""Vector and matrix norms used by the feasible-set families, plus dual exponents."""

from dataclasses import dataclass

import numpy as np

from .linalg import singular_values


@dataclass(frozen=True)
class StrongConvexityParam:
    """Curvature constant of a feasible set, tagged with its reference norm."""

    alpha: float
    reference_norm: str  # "own" or "euclidean"


def dual_exponent(p):
    """Holder conjugate q of p, satisfying 1/p + 1/q = 1, for p in (1, 2]."""
    if not 1.0 < p <= 2.0:
        raise ValueError(f"exponent must lie in (1, 2], got {p}")
    return p / (p - 1.0)


def _lp_norm_last(a, p):
    # lp norm along the last axis, scaled by the max entry so that large
    # exponents neither overflow nor lose the leading term.
    v = np.abs(a)
    top = v.max(axis=-1, keepdims=True)
    safe = np.where(top > 0.0, top, 1.0)
    out = top[..., 0] * np.sum((v / safe) ** p, axis=-1) ** (1.0 / p)
    return out


def lp_norm(x, p):
    """Entry-wise lp norm (sum |x_i|^p)^(1/p) of a vector, p >= 1."""
    if p < 1.0:
        raise ValueError(f"norm exponent must be >= 1, got {p}")
    x = np.asarray(x, dtype=float).ravel()
    if p == 2.0:
        return float(np.sqrt(x @ x))
    return float(_lp_norm_last(x, p))


def schatten_norm(x, p):
    """lp norm of the singular values of a matrix, p >= 1."""
    if p < 1.0:
        raise ValueError(f"norm exponent must be >= 1, got {p}")
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={x.ndim}")
    return lp_norm(singular_values(x), p)


def group_norm(x, s, p):
    """lp norm of the vector of row-wise ls norms of a matrix, s, p >= 1."""
    if s < 1.0 or p < 1.0:
        raise ValueError(f"norm exponents must be >= 1, got s={s}, p={p}")
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={x.ndim}")
    return lp_norm(_lp_norm_last(x, s), p)
