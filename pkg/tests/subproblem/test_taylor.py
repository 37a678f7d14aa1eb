import numpy as np
import pytest

from lpprox.subproblem import (
    build_taylor_model,
    criticality_residual,
    find_critical_point,
    taylor_polynomial,
    taylor_value_grad,
    warm_start,
)
from tests.mocks.problems import benchmark, half_squared_norm


class TestTaylorModel:
    def test_second_order_model_of_a_quadratic_is_exact(self, rng):
        problem = benchmark("quadratic", q=2)
        x = rng.standard_normal(4)
        model = build_taylor_model(problem, x, lam_hat=1.0)
        for _ in range(10):
            y = rng.standard_normal(4)
            value, grad = taylor_polynomial(model, y)
            assert value == pytest.approx(problem.value(y), rel=1e-10, abs=1e-10)
            assert np.allclose(grad, problem.gradient(y), atol=1e-10)

    def test_first_order_model_is_linear(self, rng):
        problem = half_squared_norm()
        x = rng.standard_normal(4)
        model = build_taylor_model(problem, x, lam_hat=1.0, q=1)
        y = rng.standard_normal(4)
        value, grad = taylor_polynomial(model, y)
        assert value == pytest.approx(problem.value(x) + float(x @ (y - x)))
        assert np.allclose(grad, x)

    def test_regularized_value_adds_the_power_term(self, rng):
        problem = half_squared_norm()
        x = rng.standard_normal(4)
        model = build_taylor_model(problem, x, lam_hat=0.5, q=1)
        y = x + np.array([1.0, 0.0, 0.0, 0.0])
        value, _ = taylor_value_grad(model, y)
        assert value == pytest.approx(taylor_polynomial(model, y)[0] + 1.0 / (0.5 * 2.0))


class TestFindCriticalPoint:
    def test_first_order_euclidean_closed_form(self, rng):
        problem = half_squared_norm()
        x = rng.standard_normal(4)
        lam_hat = 0.3
        model = build_taylor_model(problem, x, lam_hat=lam_hat, q=1)
        assert np.allclose(warm_start(model), x - lam_hat * x)
        critical = find_critical_point(model)
        assert not critical.at_center
        assert np.allclose(critical.point, x - lam_hat * x)
        assert critical.residual <= 1e-12

    def test_second_order_on_a_quadratic(self, rng):
        problem = benchmark("quadratic", q=2)
        x = rng.standard_normal(4)
        model = build_taylor_model(problem, x, lam_hat=0.5)
        critical = find_critical_point(model)
        assert not critical.at_center
        assert critical.residual <= max(critical.bound, 1e-10)
        assert criticality_residual(model, critical.point) == pytest.approx(critical.residual)
        assert np.linalg.norm(problem.gradient(critical.point)) < np.linalg.norm(problem.gradient(x))

    @pytest.mark.parametrize("p", [1.5, 3.0])
    def test_lp_geometry(self, rng, p):
        problem = benchmark("logistic", p=p, q=1)
        x = rng.standard_normal(4)
        model = build_taylor_model(problem, x, lam_hat=0.5)
        critical = find_critical_point(model)
        assert critical.residual <= max(critical.bound, 1e-10)

    def test_stationary_center(self):
        problem = half_squared_norm()
        model = build_taylor_model(problem, np.zeros(4), lam_hat=1.0)
        critical = find_critical_point(model)
        assert critical.at_center
        assert np.array_equal(critical.point, np.zeros(4))
