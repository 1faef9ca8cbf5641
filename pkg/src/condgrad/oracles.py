"""Closed-form linear minimization oracles: argmin of y . c over each set family.

Each oracle returns a boundary point achieving Holder equality,
lmo(c) . c = -r * dualnorm(c), and maps c = 0 to the zero point (every
feasible point minimizes a zero objective; the solver treats that as
converged). All formulas are evaluated on max-scaled ratios so that dual
exponents near the top of their range cannot overflow.
"""

import numpy as np

from .linalg import svd
from .norms import _lp_norm_last, dual_exponent, lp_norm


def _check_exponent(p, name="p"):
    if not 1.0 < p <= 2.0:
        raise ValueError(f"{name} must lie in (1, 2], got {p}")


def _check_radius(r):
    if not r > 0.0:
        raise ValueError(f"radius must be positive, got {r}")


def lmo_lp(c, p, r):
    """Minimizer of y . c over the lp ball of radius r, p in (1, 2]."""
    _check_exponent(p)
    _check_radius(r)
    c = np.asarray(c, dtype=float)
    if c.ndim != 1 or c.size == 0:
        raise ValueError(f"expected a nonempty vector, got shape {c.shape}")
    q = dual_exponent(p)
    nq = lp_norm(c, q)
    if nq == 0.0:
        return np.zeros_like(c)
    return -r * np.sign(c) * (np.abs(c) / nq) ** (q - 1.0)


def lmo_schatten(c, p, r):
    """Minimizer of Y . C over the Schatten lp ball of radius r, p in (1, 2]."""
    _check_exponent(p)
    _check_radius(r)
    c = np.asarray(c, dtype=float)
    if c.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={c.ndim}")
    if not c.any():
        return np.zeros_like(c)
    dec = svd(c)
    q = dual_exponent(p)
    nq = lp_norm(dec.sigma, q)
    coeff = -r * (dec.sigma / nq) ** (q - 1.0)
    k = dec.sigma.size
    return (dec.u[:, :k] * coeff) @ dec.v[:, :k].T


def lmo_group(c, s, p, r):
    """Minimizer of Y . C over the group l(s,p) ball of radius r, s, p in (1, 2].

    Zero rows of c map to zero rows of the result (the continuous limit of the
    row scaling; such rows contribute nothing to the objective and the norm
    budget is spent on the active rows).
    """
    _check_exponent(s, "s")
    _check_exponent(p, "p")
    _check_radius(r)
    c = np.asarray(c, dtype=float)
    if c.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={c.ndim}")
    z = dual_exponent(s)
    q = dual_exponent(p)
    row_z = _lp_norm_last(c, z)
    total = lp_norm(row_z, q)
    if total == 0.0:
        return np.zeros_like(c)
    row_coeff = np.where(row_z > 0.0, -r * (row_z / total) ** (q - 1.0), 0.0)
    safe_rows = np.where(row_z > 0.0, row_z, 1.0)
    entry = np.sign(c) * (np.abs(c) / safe_rows[:, None]) ** (z - 1.0)
    return row_coeff[:, None] * entry


def lmo_box(c, lo, hi):
    """Minimizer of y . c over the box [lo, hi]; ties (c_i = 0) resolve to lo."""
    c = np.asarray(c, dtype=float)
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    if c.shape != lo.shape or c.shape != hi.shape or c.ndim != 1:
        raise ValueError(f"shape mismatch: c {c.shape}, lo {lo.shape}, hi {hi.shape}")
    if not np.all(lo < hi):
        raise ValueError("box bounds must satisfy lo < hi elementwise")
    return np.where(c < 0.0, hi, lo)
