import numpy as np
import pytest

from condgrad import (
    Box,
    GroupBall,
    LpBall,
    SchattenBall,
    dual_exponent,
    group_norm,
    lmo_box,
    lmo_group,
    lmo_lp,
    lmo_schatten,
    lp_norm,
)

CBRT2 = 2.0 ** (1.0 / 3.0)


def test_lp_examples():
    assert np.allclose(lmo_lp(np.array([3.0, 4.0]), 2.0, 1.0), [-0.6, -0.8], atol=1e-12)
    got = lmo_lp(np.array([1.0, 1.0]), 1.5, 1.0)
    assert np.allclose(got, [-(2.0 ** (-2.0 / 3.0))] * 2, atol=1e-12)
    assert np.array_equal(lmo_lp(np.zeros(3), 1.5, 2.0), np.zeros(3))


def test_lp_brute_force_optimum():
    # independent oracle: dense sampling of the l1.5 unit sphere in 2-d
    theta = np.linspace(0.0, 2.0 * np.pi, 100_000, endpoint=False)
    pts = np.column_stack([np.cos(theta), np.sin(theta)])
    pts /= np.sum(np.abs(pts) ** 1.5, axis=1)[:, None] ** (2.0 / 3.0)
    c = np.array([1.0, 1.0])
    best = np.min(pts @ c)
    got = lmo_lp(c, 1.5, 1.0) @ c
    assert got <= best + 1e-8


def test_schatten_examples():
    got = lmo_schatten(np.diag([3.0, 4.0]), 2.0, 1.0)
    assert np.allclose(got, np.diag([-0.6, -0.8]), atol=1e-10)
    c = np.array([[0.0, 1.0], [0.0, 0.0]])
    got = lmo_schatten(c, 1.5, 1.0)
    assert np.allclose(got, [[0.0, -1.0], [0.0, 0.0]], atol=1e-10)
    assert np.vdot(got, c) == pytest.approx(-1.0, abs=1e-10)
    assert np.array_equal(lmo_schatten(np.zeros((2, 3)), 1.5, 1.0), np.zeros((2, 3)))


def test_group_examples():
    c = np.array([[3.0, 0.0], [0.0, 4.0]])
    assert np.allclose(lmo_group(c, 2.0, 2.0, 1.0), -c / 5.0, atol=1e-12)
    c = np.array([[1.0, 1.0], [0.0, 0.0]])
    got = lmo_group(c, 1.5, 1.5, 1.0)
    assert np.allclose(got[0], [-(2.0 ** (-2.0 / 3.0))] * 2, atol=1e-12)
    assert np.array_equal(got[1], [0.0, 0.0])
    assert np.vdot(got, c) == pytest.approx(-CBRT2, rel=1e-12)
    assert group_norm(got, 1.5, 1.5) == pytest.approx(1.0, rel=1e-12)


def test_group_zero_rows_stay_zero():
    rng = np.random.default_rng(0)
    c = rng.standard_normal((4, 3))
    c[2] = 0.0
    got = lmo_group(c, 1.3, 1.7, 2.0)
    assert np.array_equal(got[2], np.zeros(3))
    assert group_norm(got, 1.3, 1.7) == pytest.approx(2.0, rel=1e-9)


def test_box_rules():
    lo = np.array([-1.0, -1.0])
    hi = np.array([1.0, 1.0])
    assert np.array_equal(lmo_box(np.array([1.0, -2.0]), lo, hi), [-1.0, 1.0])
    assert np.array_equal(lmo_box(np.zeros(2), lo, hi), lo)
    assert np.array_equal(lmo_box(np.array([5.0]), np.array([2.0]), np.array([3.0])), [2.0])
    with pytest.raises(ValueError):
        lmo_box(np.array([1.0]), np.array([2.0]), np.array([2.0]))
    with pytest.raises(ValueError):
        lmo_box(np.ones(2), lo, np.ones(3))


BALLS = [
    LpBall(p=1.5, r=2.0, n=6),
    LpBall(p=2.0, r=0.5, n=6),
    LpBall(p=1.1, r=1.0, n=4),
    SchattenBall(p=1.5, r=1.5, m=3, n=4),
    GroupBall(s=1.5, p=1.8, r=2.0, m=3, n=4),
]


@pytest.mark.parametrize("ball", BALLS, ids=lambda b: type(b).__name__ + str(b.domain_shape))
def test_holder_equality_and_boundary(ball):
    rng = np.random.default_rng(42)
    for _ in range(40):
        c = rng.standard_normal(ball.domain_shape)
        x = ball.lmo(c)
        target = -ball.r * ball.dual_norm(c)
        assert np.vdot(x, c) == pytest.approx(target, rel=1e-9)
        assert ball.norm(x) == pytest.approx(ball.r, rel=1e-9)


@pytest.mark.parametrize("ball", BALLS, ids=lambda b: type(b).__name__ + str(b.domain_shape))
def test_oracle_dominates_sampled_points(ball):
    rng = np.random.default_rng(7)
    pts = ball.sample(rng, 2000)
    flat = pts.reshape(2000, -1)
    for _ in range(20):
        c = rng.standard_normal(ball.domain_shape)
        val = float(np.vdot(ball.lmo(c), c))
        others = flat @ c.ravel()
        assert np.all(val <= others + 1e-8 * (1.0 + np.abs(others)))


def test_box_dominates_sampled_points():
    box = Box(np.array([-2.0, -1.0, 0.5]), np.array([-1.0, 3.0, 2.0]))
    rng = np.random.default_rng(8)
    pts = box.sample(rng, 2000)
    for _ in range(20):
        c = rng.standard_normal(3)
        val = float(box.lmo(c) @ c)
        others = pts @ c
        assert np.all(val <= others + 1e-12)


@pytest.mark.parametrize("ball", BALLS, ids=lambda b: type(b).__name__ + str(b.domain_shape))
def test_positive_homogeneity(ball):
    rng = np.random.default_rng(3)
    for lam in (0.5, 3.0, 1e6, 1e-6):
        c = rng.standard_normal(ball.domain_shape)
        assert np.allclose(ball.lmo(lam * c), ball.lmo(c), atol=1e-10)


def test_family_consistency():
    rng = np.random.default_rng(12)
    c = rng.standard_normal((3, 4))
    # group norm with s = p = 2 is the Frobenius ball: match the flattened l2 oracle
    flat = lmo_lp(c.ravel(), 2.0, 1.5)
    assert np.allclose(lmo_group(c, 2.0, 2.0, 1.5), flat.reshape(3, 4), atol=1e-12)
    # Schatten with p = 2 is also the Frobenius ball
    want = -1.5 * c / np.linalg.norm(c)
    assert np.allclose(lmo_schatten(c, 2.0, 1.5), want, atol=1e-10)


def test_oracle_rejects_bad_exponents():
    with pytest.raises(ValueError):
        lmo_lp(np.ones(2), 1.0, 1.0)
    with pytest.raises(ValueError):
        lmo_lp(np.ones(2), 2.5, 1.0)
    with pytest.raises(ValueError):
        lmo_lp(np.ones(2), 1.5, 0.0)
    with pytest.raises(ValueError):
        lmo_lp(np.array([]), 1.5, 1.0)
    with pytest.raises(ValueError):
        lmo_group(np.ones((2, 2)), 1.0, 1.5, 1.0)


def test_dual_exponent_roundtrip_through_oracle():
    # the oracle's Holder equality only holds with the true conjugate pair
    c = np.array([2.0, -1.0, 0.5])
    for p in (1.2, 1.5, 1.9, 2.0):
        q = dual_exponent(p)
        x = lmo_lp(c, p, 1.0)
        assert lp_norm(x, p) == pytest.approx(1.0, rel=1e-10)
        assert x @ c == pytest.approx(-lp_norm(c, q), rel=1e-10)
