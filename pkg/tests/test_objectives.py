import numpy as np
import pytest

from condgrad import (
    LeastSquares,
    LpBall,
    Quadratic,
    finite_difference_gradient,
    gradient_bound_violations,
)


def test_quadratic_values():
    obj = Quadratic(np.eye(1), np.array([2.0]))
    assert obj.value(np.array([2.0])) == 0.0
    assert obj.gradient(np.array([0.0])) == pytest.approx(-2.0)
    obj = Quadratic(np.diag([1.0, 4.0]), np.zeros(2))
    assert obj.value(np.array([1.0, 1.0])) == pytest.approx(2.5)


def test_least_squares_values():
    obj = LeastSquares(np.eye(2), np.array([1.0, 0.0]))
    assert obj.value(np.zeros(2)) == pytest.approx(0.5)
    assert np.allclose(obj.gradient(np.zeros(2)), [-1.0, 0.0])


def test_gradients_match_finite_differences():
    rng = np.random.default_rng(0)
    g = rng.standard_normal((5, 5))
    objectives = [
        Quadratic(g.T @ g, rng.standard_normal(5), c0=0.7),
        LeastSquares(rng.standard_normal((3, 8)), rng.standard_normal(3)),
    ]
    for obj in objectives:
        for _ in range(20):
            x = rng.standard_normal(obj.domain_shape)
            exact = obj.gradient(x)
            approx = finite_difference_gradient(obj, x)
            scale = max(1.0, float(np.linalg.norm(exact)))
            assert np.linalg.norm(exact - approx) <= 1e-6 * scale


def test_matrix_domain_quadratic():
    rng = np.random.default_rng(1)
    x0 = rng.standard_normal((2, 3))
    obj = Quadratic(np.eye(6), x0)
    x = rng.standard_normal((2, 3))
    assert obj.value(x) == pytest.approx(0.5 * np.sum((x - x0) ** 2), rel=1e-12)
    assert obj.gradient(x).shape == (2, 3)
    approx = finite_difference_gradient(obj, x)
    assert np.linalg.norm(obj.gradient(x) - approx) <= 1e-6


def test_smoothness_constants():
    assert Quadratic(np.diag([1.0, 4.0]), np.zeros(2)).smoothness_constant() == pytest.approx(4.0)
    assert LeastSquares(np.eye(3), np.zeros(3)).smoothness_constant() == pytest.approx(1.0)
    rng = np.random.default_rng(2)
    a = rng.standard_normal((2, 3))
    obj = LeastSquares(a, np.zeros(2))
    # oracle: closed-form 2x2 eigenvalues of A A' share the nonzero spectrum of A'A
    s = a @ a.T
    mid = 0.5 * (s[0, 0] + s[1, 1])
    rad = np.sqrt(0.25 * (s[0, 0] - s[1, 1]) ** 2 + s[0, 1] ** 2)
    assert obj.smoothness_constant() == pytest.approx(mid + rad, rel=1e-6)


def test_smoothness_inequality_sampled():
    rng = np.random.default_rng(3)
    g = rng.standard_normal((4, 4))
    obj = Quadratic(g.T @ g, rng.standard_normal(4))
    beta = obj.smoothness_constant()
    for _ in range(100):
        x = rng.standard_normal(4)
        y = rng.standard_normal(4)
        model = obj.value(x) + obj.gradient(x) @ (y - x) + 0.5 * beta * np.sum((y - x) ** 2)
        assert obj.value(y) <= model + 1e-9 * (1.0 + abs(model))


def test_strong_convexity_inequality_sampled():
    rng = np.random.default_rng(4)
    g = rng.standard_normal((4, 4))
    obj = Quadratic(g.T @ g + 0.5 * np.eye(4), rng.standard_normal(4))
    alpha = obj.grad_lower_bound_constant()
    for _ in range(100):
        x = rng.standard_normal(4)
        y = rng.standard_normal(4)
        lower = obj.value(x) + obj.gradient(x) @ (y - x) + 0.5 * alpha * np.sum((y - x) ** 2)
        assert obj.value(y) >= lower - 1e-9 * (1.0 + abs(lower))


def test_grad_lower_bound_constants():
    assert Quadratic(np.eye(3), np.zeros(3)).grad_lower_bound_constant() == pytest.approx(1.0)
    a = np.zeros((2, 3))
    a[0, 0] = 1.0
    a[1, 1] = 1.0
    assert LeastSquares(a, np.zeros(2)).grad_lower_bound_constant() == pytest.approx(4.0)


def test_grad_lower_bound_degenerate():
    with pytest.raises(ValueError):
        Quadratic(np.diag([1.0, 0.0]), np.zeros(2)).grad_lower_bound_constant()
    a = np.ones((2, 3))  # duplicated rows: A A' singular
    with pytest.raises(ValueError):
        LeastSquares(a, np.zeros(2)).grad_lower_bound_constant()


def test_validation():
    with pytest.raises(ValueError):
        Quadratic(np.ones((2, 3)), np.zeros(2))
    with pytest.raises(ValueError):
        Quadratic(np.array([[1.0, 2.0], [0.0, 1.0]]), np.zeros(2))
    with pytest.raises(ValueError):
        Quadratic(np.eye(2), np.zeros(3))
    with pytest.raises(ValueError):
        LeastSquares(np.eye(2), np.zeros(3))
    obj = Quadratic(np.eye(2), np.zeros(2))
    with pytest.raises(ValueError):
        obj.value(np.zeros(3))


def test_gradient_bound_sampled_quadratic():
    # isotropic quadratic over the Euclidean ball: the constrained optimum is
    # the radial projection of the center, so f_star is analytic
    rng = np.random.default_rng(5)
    x0 = rng.standard_normal(6)
    x0 *= 2.0 / np.linalg.norm(x0)
    ball = LpBall(p=2.0, r=1.0, n=6)
    f_star = 0.5 * (np.linalg.norm(x0) - 1.0) ** 2
    obj = Quadratic(np.eye(6), x0, f_star=f_star)
    assert gradient_bound_violations(obj, ball, samples=500, seed=6) == 0


def test_gradient_bound_requires_f_star():
    obj = Quadratic(np.eye(2), np.zeros(2))
    with pytest.raises(ValueError):
        gradient_bound_violations(obj, LpBall(p=2.0, r=1.0, n=2))
