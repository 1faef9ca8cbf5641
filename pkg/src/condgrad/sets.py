"""Feasible sets: lp / Schatten / group norm balls and a box baseline.

Each set knows its defining norm, the dual norm (for gradient bookkeeping),
its diameter, its curvature constant in both its own norm and the Euclidean
one, and a closed-form linear minimization oracle. The ball families with
exponents in (1, 2] are strongly convex; the box is the flat baseline and
carries curvature constant 0.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import singular_values
from .norms import StrongConvexityParam, _lp_norm_last, dual_exponent, group_norm, lp_norm, schatten_norm
from .oracles import lmo_box, lmo_group, lmo_lp, lmo_schatten

MEMBERSHIP_TOL = 1e-9


def _check_vector(x, n):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != n:
        raise ValueError(f"expected a vector of length {n}, got shape {x.shape}")
    return x


def _check_matrix(x, m, n):
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape != (m, n):
        raise ValueError(f"expected a {m}x{n} matrix, got shape {x.shape}")
    return x


def _euclidean_rows(pts):
    flat = pts.reshape(pts.shape[0], -1)
    return np.sqrt(np.einsum("ij,ij->i", flat, flat))


@dataclass(frozen=True)
class LpBall:
    """{x in R^n : ||x||_p <= r} with p in (1, 2]."""

    p: float
    r: float
    n: int

    def __post_init__(self):
        if not 1.0 < self.p <= 2.0:
            raise ValueError(f"p must lie in (1, 2], got {self.p}")
        if not self.r > 0.0:
            raise ValueError(f"radius must be positive, got {self.r}")
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")

    @property
    def domain_shape(self):
        return (self.n,)

    @property
    def dimension(self):
        return self.n

    def norm(self, x):
        return lp_norm(_check_vector(x, self.n), self.p)

    def dual_norm(self, c):
        return lp_norm(_check_vector(c, self.n), dual_exponent(self.p))

    def norm_many(self, pts):
        return _lp_norm_last(pts, self.p)

    def contains(self, x, tol=MEMBERSHIP_TOL):
        return self.norm(x) <= self.r * (1.0 + tol)

    def contains_many(self, pts, tol=MEMBERSHIP_TOL):
        return self.norm_many(pts) <= self.r * (1.0 + tol)

    def diameter(self, norm="own"):
        # Euclidean diameter is also 2r since ||.||_2 <= ||.||_p for p <= 2,
        # attained at antipodal axis points.
        _check_norm_choice(norm)
        return 2.0 * self.r

    def strong_convexity(self, reference="own"):
        _check_norm_choice(reference)
        alpha = (self.p - 1.0) / self.r
        if reference == "euclidean":
            alpha *= self.n ** (0.5 - 1.0 / self.p)
        return StrongConvexityParam(alpha=alpha, reference_norm=reference)

    def lmo(self, c):
        return lmo_lp(_check_vector(c, self.n), self.p, self.r)

    def sample(self, rng, count):
        """Roughly uniform interior points: normalized Gaussians pushed to a
        random radial fraction u^(1/dim)."""
        g = rng.standard_normal((count, self.n))
        return _radial_rescale(g, self.norm_many(g), self.r, self.dimension, rng)


@dataclass(frozen=True)
class SchattenBall:
    """{X in R^(m x n) : ||sigma(X)||_p <= r} with p in (1, 2]."""

    p: float
    r: float
    m: int
    n: int

    def __post_init__(self):
        if not 1.0 < self.p <= 2.0:
            raise ValueError(f"p must lie in (1, 2], got {self.p}")
        if not self.r > 0.0:
            raise ValueError(f"radius must be positive, got {self.r}")
        if self.m < 1 or self.n < 1:
            raise ValueError(f"matrix dimensions must be >= 1, got {self.m}x{self.n}")

    @property
    def domain_shape(self):
        return (self.m, self.n)

    @property
    def dimension(self):
        return self.m * self.n

    def norm(self, x):
        return schatten_norm(_check_matrix(x, self.m, self.n), self.p)

    def dual_norm(self, c):
        return schatten_norm(_check_matrix(c, self.m, self.n), dual_exponent(self.p))

    def norm_many(self, pts):
        return _lp_norm_last(singular_values(pts), self.p)

    def contains(self, x, tol=MEMBERSHIP_TOL):
        return self.norm(x) <= self.r * (1.0 + tol)

    def contains_many(self, pts, tol=MEMBERSHIP_TOL):
        return self.norm_many(pts) <= self.r * (1.0 + tol)

    def diameter(self, norm="own"):
        _check_norm_choice(norm)
        return 2.0 * self.r

    def strong_convexity(self, reference="own"):
        _check_norm_choice(reference)
        alpha = (self.p - 1.0) / self.r
        if reference == "euclidean":
            alpha *= min(self.m, self.n) ** (0.5 - 1.0 / self.p)
        return StrongConvexityParam(alpha=alpha, reference_norm=reference)

    def lmo(self, c):
        return lmo_schatten(_check_matrix(c, self.m, self.n), self.p, self.r)

    def sample(self, rng, count):
        g = rng.standard_normal((count, self.m, self.n))
        return _radial_rescale(g, self.norm_many(g), self.r, self.dimension, rng)


@dataclass(frozen=True)
class GroupBall:
    """{X in R^(m x n) : ||X||_{s,p} <= r} with s, p in (1, 2].

    The norm takes the ls norm of each row, then the lp norm across rows.
    """

    s: float
    p: float
    r: float
    m: int
    n: int

    def __post_init__(self):
        if not 1.0 < self.s <= 2.0:
            raise ValueError(f"s must lie in (1, 2], got {self.s}")
        if not 1.0 < self.p <= 2.0:
            raise ValueError(f"p must lie in (1, 2], got {self.p}")
        if not self.r > 0.0:
            raise ValueError(f"radius must be positive, got {self.r}")
        if self.m < 1 or self.n < 1:
            raise ValueError(f"matrix dimensions must be >= 1, got {self.m}x{self.n}")

    @property
    def domain_shape(self):
        return (self.m, self.n)

    @property
    def dimension(self):
        return self.m * self.n

    def norm(self, x):
        return group_norm(_check_matrix(x, self.m, self.n), self.s, self.p)

    def dual_norm(self, c):
        return group_norm(
            _check_matrix(c, self.m, self.n), dual_exponent(self.s), dual_exponent(self.p)
        )

    def norm_many(self, pts):
        return _lp_norm_last(_lp_norm_last(pts, self.s), self.p)

    def contains(self, x, tol=MEMBERSHIP_TOL):
        return self.norm(x) <= self.r * (1.0 + tol)

    def contains_many(self, pts, tol=MEMBERSHIP_TOL):
        return self.norm_many(pts) <= self.r * (1.0 + tol)

    def diameter(self, norm="own"):
        _check_norm_choice(norm)
        return 2.0 * self.r

    def strong_convexity(self, reference="own"):
        _check_norm_choice(reference)
        alpha = (self.s - 1.0) * (self.p - 1.0) / ((self.s + self.p - 2.0) * self.r)
        if reference == "euclidean":
            alpha *= self.n ** (1.0 / self.s - 0.5) * self.m ** (1.0 / self.p - 0.5)
        return StrongConvexityParam(alpha=alpha, reference_norm=reference)

    def lmo(self, c):
        return lmo_group(_check_matrix(c, self.m, self.n), self.s, self.p, self.r)

    def sample(self, rng, count):
        g = rng.standard_normal((count, self.m, self.n))
        return _radial_rescale(g, self.norm_many(g), self.r, self.dimension, rng)


@dataclass(frozen=True, eq=False)
class Box:
    """Axis-aligned box {x : lo <= x <= hi}, the non-strongly-convex baseline.

    Its bookkeeping norm is Euclidean and its curvature constant is 0.
    """

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = np.atleast_1d(np.asarray(self.lo, dtype=float))
        hi = np.atleast_1d(np.asarray(self.hi, dtype=float))
        if lo.ndim != 1 or lo.shape != hi.shape:
            raise ValueError(f"bounds must be matching vectors, got {lo.shape} and {hi.shape}")
        if not np.all(lo < hi):
            raise ValueError("box bounds must satisfy lo < hi elementwise")
        lo.flags.writeable = False
        hi.flags.writeable = False
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def domain_shape(self):
        return self.lo.shape

    @property
    def dimension(self):
        return self.lo.shape[0]

    def norm(self, x):
        return lp_norm(_check_vector(x, self.dimension), 2.0)

    def dual_norm(self, c):
        return lp_norm(_check_vector(c, self.dimension), 2.0)

    def norm_many(self, pts):
        return _euclidean_rows(np.asarray(pts, dtype=float))

    def contains(self, x, tol=MEMBERSHIP_TOL):
        x = _check_vector(x, self.dimension)
        slack = tol * 0.5 * (self.hi - self.lo)
        return bool(np.all(x >= self.lo - slack) and np.all(x <= self.hi + slack))

    def contains_many(self, pts, tol=MEMBERSHIP_TOL):
        pts = np.asarray(pts, dtype=float)
        slack = tol * 0.5 * (self.hi - self.lo)
        return np.all((pts >= self.lo - slack) & (pts <= self.hi + slack), axis=-1)

    def diameter(self, norm="own"):
        _check_norm_choice(norm)
        span = self.hi - self.lo
        return float(np.sqrt(span @ span))

    def strong_convexity(self, reference="own"):
        _check_norm_choice(reference)
        return StrongConvexityParam(alpha=0.0, reference_norm=reference)

    def lmo(self, c):
        return lmo_box(_check_vector(c, self.dimension), self.lo, self.hi)

    def sample(self, rng, count):
        return rng.uniform(self.lo, self.hi, size=(count, self.dimension))


def _check_norm_choice(norm):
    if norm not in ("own", "euclidean"):
        raise ValueError(f"norm choice must be 'own' or 'euclidean', got {norm!r}")


def _radial_rescale(g, norms, r, dim, rng):
    safe = np.where(norms > 0.0, norms, 1.0)
    u = rng.random(g.shape[0]) ** (1.0 / dim)
    scale = (r * u / safe).reshape((-1,) + (1,) * (g.ndim - 1))
    return g * scale


def _box_face_probes(box):
    # Deterministic chord/offset tuples that certify a box in n >= 2 is not
    # strongly convex: the midpoint of a face diagonal pushed along the
    # outward normal leaves the box for any positive curvature constant.
    # (A 1-d box is an interval, i.e. a genuine 1-d ball, so no probes.)
    lo, hi = box.lo, box.hi
    n = box.dimension
    probes = []
    if n == 1:
        return probes
    for i in range(n):
        j = (i + 1) % n
        x = hi.copy()
        y = hi.copy()
        y[j] = lo[j]
        z = np.zeros(n)
        z[i] = 1.0
        probes.append((x, y, 0.5, z))
    return probes


def verify_set_strong_convexity(ball, alpha, samples, tol=MEMBERSHIP_TOL, seed=0, reference="own"):
    """Sampling falsifier for the curvature constant of a set.

    Draws ``samples`` tuples (x, y, gamma, z) with x, y roughly uniform in the
    set, gamma uniform on [0, 1] and z a random direction of unit norm in the
    chosen reference norm, then counts how often

        gamma*x + (1-gamma)*y + gamma*(1-gamma)*(alpha/2)*dist(x, y)^2 * z

    fails membership at tolerance ``tol`` (dist in the reference norm). For a
    Box the sample set starts with deterministic face probes, which expose any
    alpha > 0; random chords alone rarely land on a face. A return of 0 means
    the constant survived sampling, not that it is proved.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    _check_norm_choice(reference)
    rng = np.random.default_rng(seed)
    shape = ball.domain_shape

    if reference == "own" or isinstance(ball, Box):
        ref_norm_many = ball.norm_many
    else:
        ref_norm_many = _euclidean_rows

    x = ball.sample(rng, samples)
    y = ball.sample(rng, samples)
    gamma = rng.random(samples)
    z = rng.standard_normal((samples,) + shape)

    if isinstance(ball, Box):
        for k, (px, py, pg, pz) in enumerate(_box_face_probes(ball)[:samples]):
            x[k] = px
            y[k] = py
            gamma[k] = pg
            z[k] = pz

    z_norms = ref_norm_many(z)
    z = z / np.where(z_norms > 0.0, z_norms, 1.0).reshape((-1,) + (1,) * len(shape))
    dist = ref_norm_many(x - y)
    gamma_b = gamma.reshape((-1,) + (1,) * len(shape))
    offset = (gamma * (1.0 - gamma) * 0.5 * alpha * dist * dist).reshape(gamma_b.shape)
    w = gamma_b * x + (1.0 - gamma_b) * y + offset * z
    ok = ball.contains_many(w, tol)
    return int(np.sum(~ok))
