import math

import numpy as np
import pytest

from rkhs_continuation import (
    DimensionError,
    Regime,
    build_maximizer,
    compute_bound,
    optimal_coefficients,
    solve_eta,
    worst_case_error,
)
from rkhs_continuation.continuation import span_samples
from rkhs_continuation.spectral import GramData, build_spectral_data


def brute_force_worst_case(gram, c, eps, rng, trials=4000):
    """Sample the sup in E(eps, c) over functions in span{p_z, p_{z_k}} and noise."""
    n = gram.n
    best = 0.0
    # the sup over ||f|| <= 1 is attained inside the span, so sampling it suffices
    for _ in range(trials):
        alpha = rng.standard_normal() + 1j * rng.standard_normal()
        gamma = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        f_at_z = alpha * gram.pzz + gamma @ gram.beta
        norm2 = (abs(alpha) ** 2 * gram.pzz + 2 * (np.conj(alpha) * (gamma @ gram.beta)).real
                 + (gamma @ gram.G @ np.conj(gamma)).real)
        samples = span_samples(alpha, gamma, gram)
        s = 1.0 / math.sqrt(norm2)
        err = f_at_z * s - c @ (samples * s)
        best = max(best, abs(err))
    # adversarial noise aligned with c adds eps |c| in modulus
    return best + eps * np.linalg.norm(c)


def test_zero_coefficients_give_kernel_norm(one_point, generic_instances):
    _, gram, _ = one_point
    for eps in (0.0, 0.3, 2.0):
        assert worst_case_error(gram, np.zeros(1), eps) == pytest.approx(math.sqrt(4 / 3))
    for _, gram, sd, eps in generic_instances:
        assert worst_case_error(gram, np.zeros(gram.n), eps) == pytest.approx(math.sqrt(sd.pzz))


def test_unit_coefficient_one_point(one_point):
    _, gram, _ = one_point
    # ||p_z - p_0||^2 = 4/3 - 2 + 1
    assert worst_case_error(gram, [1.0], 0.0) == pytest.approx(math.sqrt(1 / 3), rel=1e-14)


def test_dimension_error(one_point):
    _, gram, _ = one_point
    with pytest.raises(DimensionError):
        worst_case_error(gram, [1.0, 2.0], 0.1)


def test_closed_form_against_sampling(generic_instances):
    rng = np.random.default_rng(8)
    for _, gram, sd, eps in generic_instances[:2]:
        c = rng.standard_normal(gram.n) + 1j * rng.standard_normal(gram.n)
        exact = worst_case_error(gram, c, eps)
        sampled = brute_force_worst_case(gram, c, eps, rng)
        assert sampled <= exact * (1 + 1e-12)
        assert sampled >= 0.9 * exact


def test_optimal_one_point(one_point):
    _, gram, sd = one_point
    res = optimal_coefficients(sd, gram, 0.1)
    eta = 0.1 / (math.sqrt(3 * 0.99) - 0.1)
    assert res.c[0] == pytest.approx(1 / (1 + eta), rel=1e-10)
    assert res.c[0] == pytest.approx(0.9419741, rel=1e-7)
    assert res.E == pytest.approx(0.674457, abs=1e-6)
    assert res.E == pytest.approx(compute_bound(sd, 0.1).A, rel=1e-9)


def test_small_eps_limit_one_point(one_point):
    _, gram, sd = one_point
    res = optimal_coefficients(sd, gram, 1e-7)
    assert res.c[0] == pytest.approx(1.0, abs=1e-6)
    assert res.E == pytest.approx(1 / math.sqrt(3), rel=1e-6)
    res0 = optimal_coefficients(sd, gram, 0.0)
    assert res0.c[0] == pytest.approx(1.0)
    assert res0.E == pytest.approx(1 / math.sqrt(3), rel=1e-12)


def test_identity_E_equals_A(generic_instances):
    for _, gram, sd, eps in generic_instances:
        for e in (eps, eps / 7, eps / 300):
            res = optimal_coefficients(sd, gram, e)
            assert res.E == pytest.approx(compute_bound(sd, e).A, rel=1e-9)


def test_two_routes_to_coefficients(generic_instances):
    for _, gram, sd, eps in generic_instances:
        res = optimal_coefficients(sd, gram, eps)
        eta = solve_eta(sd, eps)
        ridge = np.linalg.solve(gram.G + eta * np.eye(gram.n), gram.beta)
        np.testing.assert_allclose(res.c, ridge, rtol=1e-10, atol=1e-10 * np.linalg.norm(ridge))
        rep = build_maximizer(sd, gram, eps)
        # c_j = conj(u(z_j)) with u unnormalized
        from_maximizer = np.conj(span_samples(rep.alpha, rep.gamma, gram))
        np.testing.assert_allclose(res.c, from_maximizer, rtol=1e-9, atol=1e-10 * np.linalg.norm(ridge))


def test_local_optimality(generic_instances):
    rng = np.random.default_rng(17)
    for _, gram, sd, eps in generic_instances:
        res = optimal_coefficients(sd, gram, eps)
        for _ in range(20):
            d = rng.standard_normal(gram.n) + 1j * rng.standard_normal(gram.n)
            d *= 1e-3 / np.linalg.norm(d)
            assert worst_case_error(gram, res.c + d, eps) >= res.E - 1e-12


def test_any_coefficients_are_no_better_than_A(generic_instances):
    rng = np.random.default_rng(23)
    for _, gram, sd, eps in generic_instances:
        A = compute_bound(sd, eps).A
        for _ in range(50):
            c = rng.standard_normal(gram.n) + 1j * rng.standard_normal(gram.n)
            assert worst_case_error(gram, c, eps) >= A - 1e-10


def test_convexity(generic_instances):
    rng = np.random.default_rng(29)
    for _, gram, _, eps in generic_instances:
        for _ in range(30):
            c1 = rng.standard_normal(gram.n) + 1j * rng.standard_normal(gram.n)
            c2 = rng.standard_normal(gram.n) + 1j * rng.standard_normal(gram.n)
            mid = worst_case_error(gram, (c1 + c2) / 2, eps)
            assert mid <= 0.5 * (worst_case_error(gram, c1, eps) + worst_case_error(gram, c2, eps)) + 1e-12


def test_kernel_regime_returns_zero(pw_kernel_regime):
    _, gram, sd = pw_kernel_regime
    res = optimal_coefficients(sd, gram, 0.1)
    assert np.all(res.c == 0)
    assert res.E == 1.0
    assert res.regime is Regime.KERNEL


def test_saturated_returns_zero(one_point):
    _, gram, sd = one_point
    res = optimal_coefficients(sd, gram, 0.95)
    assert res.c[0] == 0
    assert res.E == pytest.approx(compute_bound(sd, 0.95).A)


def test_complete_stability_bound():
    gram = GramData(G=np.array([[2.0 + 0j, 0], [0, 1.0]]), beta=np.array([1.0 + 0j, 0.5j]), pzz=0.75)
    sd = build_spectral_data(gram)
    assert sd.regime is Regime.COMPLETE_STABILITY
    res = optimal_coefficients(sd, gram, 0.2)
    np.testing.assert_allclose(res.c, [0.5, 0.5j])
    assert res.bound_only
    assert res.E == pytest.approx(0.2 * math.sqrt(0.5))
    assert worst_case_error(gram, res.c, 0.2) == pytest.approx(res.E, rel=1e-7)
    assert res.E == pytest.approx(compute_bound(sd, 0.2).A)
