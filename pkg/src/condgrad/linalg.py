"""Dense linear-algebra kernels: one-sided Jacobi SVD and power-iteration eigenvalue bounds.

Everything here is deterministic and sized for desk-scale problems; the
optimizer only ever needs singular values of small linear objectives and the
extreme eigenvalues that enter smoothness constants.
"""

from dataclasses import dataclass

import numpy as np

JACOBI_MAX_SWEEPS = 60
JACOBI_GRAM_TOL = 1e-14
POWER_MAX_ITERS = 100_000
POWER_RTOL = 1e-10


class NumericalError(RuntimeError):
    """An iterative kernel failed to reach its target accuracy."""


@dataclass(frozen=True)
class SvdResult:
    """Full decomposition X = u @ diag(sigma) @ v.T with descending sigma."""

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray


@dataclass(frozen=True)
class SpectralBounds:
    """Largest and smallest eigenvalue of a symmetric PSD matrix."""

    lambda_max: float
    lambda_min: float


def _jacobi_orthogonalize(a, v=None):
    """Rotate columns of every matrix in the stack until mutually orthogonal.

    ``a`` has shape (b, m, n) with m >= n and is modified in place; ``v``,
    when given, accumulates the right-hand rotations per batch element.
    A pair is rotated while its Gram entry exceeds
    JACOBI_GRAM_TOL * ||A_i|| * ||A_j||; this per-pair criterion bounds the
    cosine between every pair of columns (and implies the coarser
    JACOBI_GRAM_TOL * ||A||_F^2 cutoff), which is what keeps the normalized
    columns of rank-deficient inputs orthonormal.
    """
    b, m, n = a.shape
    worst = np.full(b, np.inf)
    for _ in range(JACOBI_MAX_SWEEPS):
        worst = np.zeros(b)
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                ai = a[:, :, i]
                aj = a[:, :, j]
                aij = np.einsum("bk,bk->b", ai, aj)
                aii = np.einsum("bk,bk->b", ai, ai)
                ajj = np.einsum("bk,bk->b", aj, aj)
                thresh = JACOBI_GRAM_TOL * np.sqrt(aii * ajj)
                with np.errstate(divide="ignore", invalid="ignore"):
                    np.maximum(worst, np.where(thresh > 0.0, np.abs(aij) / thresh, 0.0), out=worst)
                act = np.abs(aij) > thresh
                if not act.any():
                    continue
                rotated = True
                denom = np.where(act, 2.0 * aij, 1.0)
                tau = np.where(act, (ajj - aii) / denom, 0.0)
                # stable root of t^2 + 2*tau*t - 1 = 0, with t -> +1 as tau -> 0
                sgn = np.where(tau >= 0.0, 1.0, -1.0)
                t = np.where(act, sgn / (np.abs(tau) + np.hypot(1.0, tau)), 0.0)
                c = (1.0 / np.hypot(1.0, t))[:, None]
                s = (t / np.hypot(1.0, t))[:, None]
                new_i = c * ai - s * aj
                new_j = s * ai + c * aj
                a[:, :, i] = new_i
                a[:, :, j] = new_j
                if v is not None:
                    vi = v[:, :, i].copy()
                    vj = v[:, :, j]
                    v[:, :, i] = c * vi - s * vj
                    v[:, :, j] = s * vi + c * vj
        if not rotated:
            return
    raise NumericalError(
        f"column orthogonalization did not converge after {JACOBI_MAX_SWEEPS} sweeps "
        f"(worst Gram entry at {float(np.max(worst)):.3e} times its threshold)"
    )


def singular_values(a):
    """Singular values in descending order, for one matrix or a stack.

    Accepts shape (m, n) or (b, m, n); returns shape (min(m, n),) or
    (b, min(m, n)).
    """
    arr = np.asarray(a, dtype=float)
    if arr.ndim not in (2, 3):
        raise ValueError(f"expected a matrix or a stack of matrices, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    single = arr.ndim == 2
    stack = arr[None, :, :] if single else arr
    if stack.shape[1] < stack.shape[2]:
        stack = np.swapaxes(stack, 1, 2)
    work = np.ascontiguousarray(stack).copy()
    _jacobi_orthogonalize(work)
    sig = np.sqrt(np.einsum("bmn,bmn->bn", work, work))
    sig = -np.sort(-sig, axis=1)
    return sig[0] if single else sig


def _complete_orthonormal(u, k):
    # Fill columns k.. of the square matrix u with an orthonormal complement
    # of its first k (orthonormal) columns, greedily from coordinate vectors.
    m = u.shape[0]
    for col in range(k, m):
        basis = u[:, :col]
        residual_sq = 1.0 - np.einsum("ij,ij->i", basis, basis)
        pick = int(np.argmax(residual_sq))
        r = -basis @ basis[pick, :]
        r[pick] += 1.0
        r -= basis @ (basis.T @ r)  # one re-orthogonalization pass
        u[:, col] = r / np.sqrt(r @ r)
    return u


def svd(x):
    """One-sided Jacobi singular value decomposition of a dense matrix.

    Returns an SvdResult with u (m x m) and v (n x n) orthogonal and sigma of
    length min(m, n), descending. Raises NumericalError if the rotation
    sweeps fail to converge.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={x.ndim}")
    if x.shape[0] < 1 or x.shape[1] < 1:
        raise ValueError("matrix must have at least one row and one column")
    if not np.all(np.isfinite(x)):
        raise ValueError("matrix entries must be finite")
    m, n = x.shape
    transposed = m < n
    tall = (x.T if transposed else x).copy()
    rows, cols = tall.shape

    work = tall[None, :, :]
    right = np.eye(cols)[None, :, :].copy()
    _jacobi_orthogonalize(work, right)
    tall = work[0]
    right = right[0]

    sig = np.sqrt(np.einsum("ij,ij->j", tall, tall))
    order = np.argsort(-sig, kind="stable")
    sig = sig[order]
    tall = tall[:, order]
    right = right[:, order]

    # Columns whose norm is at the rotation noise floor carry no reliable
    # direction; they are rebuilt by basis completion below.
    cutoff = np.sqrt(np.sum(sig * sig)) * cols * np.finfo(float).eps
    k = int(np.sum(sig > cutoff))
    left = np.zeros((rows, rows))
    if k:
        left[:, :k] = tall[:, :k] / sig[:k]
    _complete_orthonormal(left, k)

    if transposed:
        return SvdResult(u=right, sigma=sig, v=left)
    return SvdResult(u=left, sigma=sig, v=right)


def _top_eigenvalue(s, scale):
    """Largest eigenvalue of symmetric PSD s by power iteration.

    Runs from two deterministic starts (all-ones per the house convention,
    plus a fixed-seed Gaussian, since structured matrices such as path-graph
    Laplacians are exactly orthogonal to simple ramps) and keeps the larger
    Rayleigh limit.
    """
    n = s.shape[0]
    if scale == 0.0:
        return 0.0
    tol = POWER_RTOL * scale
    starts = [np.ones(n), np.random.default_rng(0x5EED).standard_normal(n)]
    best = 0.0
    for v in starts:
        v = v / np.sqrt(v @ v)
        lam = 0.0
        for _ in range(POWER_MAX_ITERS):
            w = s @ v
            lam = float(v @ w)
            if np.sqrt(np.sum((w - lam * v) ** 2)) <= tol:
                break
            nw = np.sqrt(w @ w)
            if nw == 0.0:
                lam = 0.0
                break
            v = w / nw
        best = max(best, lam)
    return best


def spectral_bounds(s):
    """Extreme eigenvalues of a symmetric positive semidefinite matrix.

    lambda_max comes from power iteration on s; lambda_min from power
    iteration on (lambda_max * I - s). Asymmetry beyond 1e-12 relative is
    rejected.
    """
    s = np.asarray(s, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {s.shape}")
    if not np.all(np.isfinite(s)):
        raise ValueError("matrix entries must be finite")
    scale = float(np.max(np.abs(s)))
    if scale == 0.0:
        return SpectralBounds(0.0, 0.0)
    if float(np.max(np.abs(s - s.T))) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric within 1e-12 relative tolerance")
    s = 0.5 * (s + s.T)
    lam_max = _top_eigenvalue(s, scale)
    shifted = lam_max * np.eye(s.shape[0]) - s
    shift_scale = float(np.max(np.abs(shifted)))
    lam_min = lam_max - _top_eigenvalue(shifted, shift_scale)
    lam_min = min(max(lam_min, 0.0), lam_max)
    return SpectralBounds(lambda_max=lam_max, lambda_min=lam_min)
