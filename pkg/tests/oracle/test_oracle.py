import math

import numpy as np
import pytest

from lpprox.errors import OracleError
from lpprox.oracle import (
    BallOracle,
    ExactOracle,
    FixedProxOracle,
    ProxAnswer,
    TaylorOracle,
    ball_oracle,
    exact_oracle,
    taylor_lam_hat,
    taylor_oracle,
)
from tests.mocks.problems import benchmark, half_squared_norm, linear_problem


class BrokenOracle(FixedProxOracle):
    """ Claims an exact prox answer but never moves the witness """

    name = "broken"

    def solve(self, x, lam_hat):
        y = x - 1.0
        return ProxAnswer(x, y, np.ones_like(x), np.zeros_like(x), self.lam, 0.0, self.r, 0.0, 0.0)


class TestProxOracle:
    def test_tolerance_checks(self):
        problem = half_squared_norm()
        with pytest.raises(ValueError):
            ExactOracle(problem, 1.0, r=1.0)
        with pytest.raises(ValueError):
            ExactOracle(problem, 0.0)
        with pytest.raises(ValueError):
            TaylorOracle(problem, sigma=0.5)

    def test_failed_audit_raises(self):
        oracle = BrokenOracle(half_squared_norm(), lam=1.0, r=2.0, sigma=0.0)
        with pytest.raises(OracleError) as error:
            oracle.query(np.ones(4))
        assert error.value.audit is not None
        assert not error.value.audit.passed

    def test_uncertified_oracle_skips_the_audit(self):
        oracle = BrokenOracle(half_squared_norm(), lam=1.0, r=2.0, sigma=0.0, certify=False)
        answer = oracle(np.ones(4))
        assert oracle.calls == 1
        assert np.array_equal(answer.y, np.zeros(4))


class TestExactOracle:
    def test_euclidean_prox(self, rng):
        x = rng.standard_normal(4)
        answer = exact_oracle(half_squared_norm(), x, lam=0.5)
        assert answer.lam == 0.5
        assert np.allclose(answer.y, x / 1.5, atol=1e-7)
        assert answer.eps == 0.0

    def test_guess_overrides_lam(self, rng):
        oracle = ExactOracle(half_squared_norm(), 0.5)
        answer = oracle.query(rng.standard_normal(4), lam_hat=2.0)
        assert answer.lam == 2.0

    def test_stationary_query(self):
        answer = exact_oracle(half_squared_norm(), np.zeros(4), lam=1.0)
        assert answer.at_optimum

    @pytest.mark.parametrize("p", [1.5, 3.0])
    def test_lp_prox_passes_its_audit(self, rng, p):
        oracle = ExactOracle(benchmark("quadratic", p=p), 1.0)
        oracle.query(rng.standard_normal(4))
        assert oracle.last_audit.passed


class TestTaylorOracle:
    def test_lam_hat(self):
        assert taylor_lam_hat(2.0, 1, 0.25) == 0.0625
        assert taylor_lam_hat(1.0, 3, 0.25) == 0.25
        assert math.isfinite(taylor_lam_hat(0.0, 2, 0.25))

    def test_first_order_euclidean_step(self, rng):
        problem = half_squared_norm()
        oracle = TaylorOracle(problem, sigma=0.25)
        assert oracle.fixed_lam == oracle.lam_hat == 0.125
        x = rng.standard_normal(4)
        answer = oracle.query(x)
        assert np.allclose(answer.y, x - 0.125 * x)
        assert answer.lam == pytest.approx(0.125)
        assert oracle.last_audit.passed

    def test_movement_dependent_lam(self, rng):
        problem = benchmark("logistic", q=2)
        oracle = TaylorOracle(problem, r=2.0, sigma=0.25)
        assert oracle.fixed_lam is None
        x = rng.standard_normal(4)
        answer = oracle.query(x)
        dist = problem.geometry.norm(answer.y - x)
        assert answer.lam == pytest.approx(oracle.lam_hat * dist ** (2.0 - 3.0))

    def test_stationary_query(self):
        answer = taylor_oracle(half_squared_norm(), np.zeros(4))
        assert answer.at_optimum
        assert math.isinf(answer.lam)


class TestBallOracle:
    def test_moves_the_full_radius_on_a_linear_function(self):
        c = np.array([3.0, 4.0])
        answer = ball_oracle(linear_problem(c), np.zeros(2), rho=0.5)
        assert not answer.at_optimum
        assert np.allclose(answer.y, -0.5 * c / 5.0, atol=1e-5)
        assert answer.lam == pytest.approx(0.5 / 5.0, rel=1e-5)

    def test_interior_minimizer_is_optimal(self):
        oracle = BallOracle(half_squared_norm(x0=np.full(4, 0.1)), rho=1.0)
        answer = oracle.query(np.full(4, 0.1))
        assert answer.at_optimum

    def test_rejects_bad_radius(self):
        with pytest.raises(ValueError):
            BallOracle(half_squared_norm(), rho=0.0)

    def test_custom_hook(self):
        def hook(problem, constraint):
            return constraint.center - constraint.radius * np.array([1.0, 0.0])

        oracle = BallOracle(linear_problem(np.array([1.0, 0.0])), rho=2.0, hook=hook)
        answer = oracle.query(np.zeros(2))
        assert np.array_equal(answer.y, np.array([-2.0, 0.0]))
        assert answer.lam == pytest.approx(2.0)
