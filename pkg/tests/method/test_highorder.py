import math

import pytest

from lpprox.errors import GeometryError
from lpprox.geometry import Geometry, power_regularizer, squared_regularizer
from lpprox.method import (
    RunStatus,
    audit_gap,
    ball_iteration_bound,
    highorder_solve,
    regularizer_divergence,
    theoretical_exponent,
)
from tests.mocks.problems import benchmark, half_squared_norm


class TestTheoreticalExponent:
    @pytest.mark.parametrize(
        "p, q, nu, expected",
        [
            (2.0, 1, 1.0, 2.0),
            (2.0, 2, 1.0, 3.5),
            (4.0, 1, 1.0, 1.5),
            (1.5, 1, 0.5, 1.25),
            (math.inf, 2, 1.0, 2.0),
        ],
    )
    def test_values(self, p, q, nu, expected):
        assert theoretical_exponent(p, q, nu) == pytest.approx(expected)


class TestHelpers:
    def test_ball_iteration_bound(self):
        assert ball_iteration_bound(4.0, 1.0, 2.0, math.exp(-1.0)) == pytest.approx(4.0 ** (2.0 / 3.0))
        with pytest.raises(ValueError):
            ball_iteration_bound(1.0, 1.0, 2.0, 1.0)

    def test_regularizer_divergence(self):
        assert regularizer_divergence(power_regularizer(Geometry.from_p(3.0), [0.0]), 2.0) == pytest.approx(8.0 / 3.0)
        assert regularizer_divergence(squared_regularizer(Geometry.from_p(1.5), [0.0]), 2.0) == pytest.approx(4.0)


class TestHighorderSolve:
    def test_rejects_nonsmooth_geometry(self):
        with pytest.raises(GeometryError):
            highorder_solve(half_squared_norm(p=1.0), 4)
        with pytest.raises(GeometryError):
            highorder_solve(half_squared_norm(p=math.inf), 4)

    def test_small_order_takes_the_accelerated_branch(self):
        problem = benchmark("quadratic", p=2.0)
        trace = highorder_solve(problem, 10)
        assert trace.method == "accel"
        assert trace.params["branch"] == "accel"
        assert trace.params["exponent"] == pytest.approx(2.0)
        assert trace.params["flags"] == ""
        assert audit_gap(trace, problem).passed

    def test_large_order_takes_the_adaptive_branch(self):
        problem = benchmark("logistic", p=2.0, q=2)
        trace = highorder_solve(problem, 8)
        assert trace.method == "adaptive"
        assert trace.params["branch"] == "adaptive"
        assert trace.params["exponent"] == pytest.approx(3.5)

    def test_unknown_radius_is_estimated(self):
        problem = half_squared_norm()._replace(x_star=None, f_star=None)
        trace = highorder_solve(problem, 10)
        assert trace.params["flags"] == "estimated-radius"
        assert trace.status is RunStatus.COMPLETE
        assert trace.params["R"] >= 1.0
