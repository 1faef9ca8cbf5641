import pytest

from condgrad import (
    IterationRecord,
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


def synthetic_trace(h_of_t, t_max, grad_dual_norm=1.0):
    return [
        IterationRecord(t=t, f_value=h_of_t(t), duality_gap=0.0, eta=0.0,
                        step_norm=0.0, grad_dual_norm=grad_dual_norm, h=h_of_t(t))
        for t in range(1, t_max + 1)
    ]


def test_convex_rate_bound():
    assert convex_rate_bound(8, 1.0, 2.0) == pytest.approx(4.0)
    assert convex_rate_bound(10, 1.0, 1.0) == pytest.approx(2.0 * convex_rate_bound(20, 1.0, 1.0))
    assert convex_rate_bound(3, 0.0, 5.0) == 0.0
    with pytest.raises(ValueError):
        convex_rate_bound(0, 1.0, 1.0)


def test_strongly_convex_rate_bound():
    # beta = 1, D = 2, alpha_obj = alpha_set = 1: scale 1/(8 sqrt 2) gives
    # 18 / M^2 = 2304, dominating 4.5 * beta * D^2 = 18; at t = 1: 2304/9 = 256
    assert strongly_convex_rate_bound(1, 1.0, 2.0, 1.0, 1.0) == pytest.approx(256.0, rel=1e-12)
    vals = [strongly_convex_rate_bound(t, 1.0, 2.0, 1.0, 1.0) for t in range(1, 50)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    # quadrupling t + 2 divides the bound by 16
    assert strongly_convex_rate_bound(2, 1.0, 2.0, 1.0, 1.0) == pytest.approx(
        16.0 * strongly_convex_rate_bound(14, 1.0, 2.0, 1.0, 1.0), rel=1e-12
    )
    with pytest.raises(ValueError):
        strongly_convex_rate_bound(1, 1.0, 2.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        strongly_convex_rate_bound(0, 1.0, 2.0, 1.0, 1.0)


def test_linear_rate_factor():
    got = linear_rate_factor("gradient_bounded", beta=1.0, alpha_set=1.0, g=1.0)
    assert got == pytest.approx(0.875)
    got = linear_rate_factor("interior", beta=1.0, diameter=2.0, alpha_obj=1.0, r_int=1.0)
    assert got == pytest.approx(1.0 - 1.0 / 16.0)
    # a huge gradient floor saturates the factor at 1/2
    got = linear_rate_factor("gradient_bounded", beta=1.0, alpha_set=1.0, g=100.0)
    assert got == 0.5
    with pytest.raises(ValueError):
        linear_rate_factor("gradient_bounded", beta=1.0, alpha_set=0.0, g=0.0)  # factor 1
    with pytest.raises(ValueError):
        linear_rate_factor("interior", beta=1.0, diameter=1.0, alpha_obj=10.0, r_int=1.0)
    with pytest.raises(ValueError):
        linear_rate_factor("sideways", beta=1.0)


def test_check_bound_counts():
    trace = synthetic_trace(lambda t: 50.0 / t, 100)
    v, ratio = check_bound(trace, lambda t: 100.0 / t)
    assert v == 0
    assert ratio == pytest.approx(0.5, rel=1e-12)
    trace = synthetic_trace(lambda t: 100.0 / t if t != 7 else 400.0 / 7.0, 20)
    v, ratio = check_bound(trace, lambda t: 200.0 / t)
    assert v == 1
    assert ratio == pytest.approx(2.0, rel=1e-12)


def test_check_bound_floor_and_missing_h():
    trace = synthetic_trace(lambda t: 1e-16, 5)
    v, _ = check_bound(trace, lambda t: 1e-20)  # below floor: excluded, no violations
    assert v == 0
    bad = [IterationRecord(t=1, f_value=0.0, duality_gap=0.0, eta=0.0, step_norm=0.0,
                           grad_dual_norm=0.0, h=None)]
    with pytest.raises(ValueError):
        check_bound(bad, lambda t: 1.0)


@pytest.mark.parametrize("expo", [-0.5, -1.0, -2.0, -3.0])
def test_rate_exponent_exact_power_laws(expo):
    trace = synthetic_trace(lambda t: 100.0 * t**expo, 500)
    assert rate_exponent(trace, 1, 500) == pytest.approx(expo, abs=1e-9)


def test_rate_exponent_geometric_drifts_down():
    trace = synthetic_trace(lambda t: 10.0 * 0.9**t, 200)
    narrow = rate_exponent(trace, 1, 20)
    wide = rate_exponent(trace, 1, 200)
    assert wide < narrow
    assert wide < -2.0


def test_rate_exponent_errors():
    trace = synthetic_trace(lambda t: 1.0 / t, 10)
    with pytest.raises(ValueError):
        rate_exponent(trace, 5, 5)
    with pytest.raises(ValueError):
        rate_exponent(trace, 0, 10)
    floored = synthetic_trace(lambda t: 1e-17, 10)
    with pytest.raises(ValueError):
        rate_exponent(floored, 1, 10)


def test_contraction_violations_synthetic():
    h = [1.0 * 0.9**t for t in range(50)]
    assert contraction_violations(h, 0.9) == 0
    assert contraction_violations(h, 0.85) == 49  # every step misses the tighter factor
    stalls = [1.0, 1.0, 1.0]
    assert contraction_violations(stalls, 0.875) == 2
    with pytest.raises(ValueError):
        contraction_violations([1.0, 0.5, 0.25], [0.9])


def test_contraction_factor():
    assert contraction_factor(1.0, 1.0, 1.0) == pytest.approx(0.875)
    assert contraction_factor(100.0, 1.0, 1.0) == 0.5
    assert contraction_factor(0.0, 1.0, 1.0) == 1.0


def test_trace_contraction_check():
    trace = synthetic_trace(lambda t: 0.875 ** (t - 1), 60, grad_dual_norm=1.0)
    assert trace_contraction_violations(trace, alpha_set=1.0, beta=1.0) == 0
    # a stalled error with a large recorded gradient must be flagged
    stalled = [
        IterationRecord(t=t, f_value=1.0, duality_gap=0.0, eta=0.0, step_norm=0.0,
                        grad_dual_norm=4.0, h=1.0)
        for t in range(5)
    ]
    assert trace_contraction_violations(stalled, alpha_set=1.0, beta=1.0) >= 1
    with pytest.raises(ValueError):
        trace_contraction_violations(stalled, 1.0, 1.0, grad_dual_norms=[1.0])


def test_bound_crossover_exists():
    t = bound_crossover(beta=1.0, diameter=2.0, alpha_obj=1.0, alpha_set=1.0)
    for probe in (t, 2 * t, 10 * t, 100 * t):
        assert strongly_convex_rate_bound(probe, 1.0, 2.0, 1.0, 1.0) < convex_rate_bound(
            probe, 1.0, 2.0
        )
    # tiny curvature pushes the crossover far out but it still exists
    t = bound_crossover(beta=5.0, diameter=1.0, alpha_obj=1e-4, alpha_set=1e-3)
    assert strongly_convex_rate_bound(t, 5.0, 1.0, 1e-4, 1e-3) < convex_rate_bound(t, 5.0, 1.0)


def test_rate_report_bundle():
    trace = synthetic_trace(lambda t: 100.0 / t**2, 300)
    rep = rate_report(trace, lambda t: 200.0 / t**2, "strongly_convex_set", 10, 300)
    assert rep.violations == 0
    assert rep.exponent == pytest.approx(-2.0, abs=1e-9)
    assert rep.bound_name == "strongly_convex_set"
    assert rep.fit_window == (10, 300)
    assert rep.max_violation_ratio == pytest.approx(0.5, rel=1e-12)
