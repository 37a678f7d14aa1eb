import math

import numpy as np
import pytest

from lpprox.errors import OracleError
from lpprox.geometry import Geometry, default_regularizer, power_regularizer
from lpprox.method import (
    RunStatus,
    accel_bound,
    accel_constant,
    accel_run,
    accel_solve,
    audit_gap,
    step_certificate_margins,
)
from lpprox.oracle import ExactOracle, TaylorOracle
from tests.mocks.problems import benchmark, half_squared_norm


class FlakyOracle(ExactOracle):
    """ Fails its audit from the given call on """

    def __init__(self, problem, lam, fail_at):
        super().__init__(problem, lam)
        self.fail_at = fail_at

    def query(self, x, lam_hat=None):
        if self.calls + 1 >= self.fail_at:
            self.calls += 1
            raise OracleError("injected failure", call=self.calls)
        return super().query(x, lam_hat)


def exact_run(problem, T, lam=1.0):
    psi = default_regularizer(problem.geometry, problem.x0)
    return accel_run(problem, psi, ExactOracle(problem, lam), T)


class TestAccelConstant:
    def test_euclidean_exact(self):
        assert accel_constant(1.0, 2.0, 0.0, 0.0) == pytest.approx(1.0)

    def test_tolerances_shrink_the_constant(self):
        exact = accel_constant(1.0, 3.0, 0.0, 0.0)
        inexact = accel_constant(1.0, 3.0, 0.25, 0.25)
        assert 0.0 < inexact < exact


class TestAccelRun:
    def test_rejects_bad_setup(self):
        problem = half_squared_norm()
        psi = default_regularizer(problem.geometry, problem.x0)
        with pytest.raises(ValueError):
            accel_run(problem, psi, ExactOracle(problem, 1.0), -1)
        with pytest.raises(ValueError):
            accel_run(problem, psi, ExactOracle(problem, 1.0, r=3.0), 4)
        with pytest.raises(ValueError):
            accel_run(problem, psi, TaylorOracle(problem, sigma=0.25), 4, sigma=0.1)

    def test_oracle_without_fixed_lam_is_rejected(self):
        problem = half_squared_norm()
        psi = default_regularizer(problem.geometry, problem.x0)
        with pytest.raises(ValueError):
            accel_run(problem, psi, TaylorOracle(problem, r=3.0), 4)

    def test_step_equation_holds(self):
        trace = exact_run(half_squared_norm(), 12)
        assert trace.T == 12
        for rec in trace.records:
            assert rec.a ** 2 == pytest.approx(trace.C * rec.A * rec.lam, rel=1e-7)
        assert np.all(step_certificate_margins(trace) >= -1e-8)

    def test_exact_oracle_certificates(self):
        problem = half_squared_norm()
        trace = exact_run(problem, 15)
        report = audit_gap(trace, problem)
        assert report.passed
        assert report.comparator == "known-minimizer"
        bound = accel_bound(trace, report.divergence)
        gap = problem.gap(trace.final_y)
        assert gap <= bound.a_form * (1.0 + 1e-6)
        assert bound.a_form <= bound.lam_form * (1.0 + 1e-9)
        assert bound.delta_total == 0.0

    def test_starting_at_the_minimizer(self):
        problem = half_squared_norm(x0=np.zeros(4))
        trace = exact_run(problem, 10)
        assert trace.status is RunStatus.OPTIMAL
        assert trace.T == 1
        assert trace.records[0].a == 0.0
        assert math.isinf(accel_bound(trace, 0.0).a_form)

    def test_oracle_failure_truncates(self):
        problem = half_squared_norm()
        psi = default_regularizer(problem.geometry, problem.x0)
        trace = accel_run(problem, psi, FlakyOracle(problem, 1.0, fail_at=4), 10)
        assert trace.status is RunStatus.TRUNCATED
        assert trace.T == 3
        assert "injected failure" in trace.diagnostic


class TestAccelSolve:
    def test_taylor_oracle_on_a_quadratic(self):
        problem = benchmark("quadratic", p=2.0)
        trace = accel_solve(problem, 30, problem.distance_to_optimum())
        assert trace.status is RunStatus.COMPLETE
        assert trace.params["inexact_a"] is None
        report = audit_gap(trace, problem)
        assert report.passed
        gaps = trace.values(problem) - problem.f_star
        assert gaps[-1] <= accel_bound(trace, report.divergence).a_form * (1.0 + 1e-6) + report.audits[-1].tol

    def test_weakened_regularizer_in_lp(self):
        problem = benchmark("quadratic", p=3.0)
        trace = accel_solve(problem, 20, problem.distance_to_optimum())
        assert trace.params["inexact_a"] > 0.0
        assert trace.r == 2.0
        assert trace.delta > 0.0
        report = audit_gap(trace, problem)
        assert report.passed
        assert report.total_drop <= trace.delta * trace.T + sum(audit.tol for audit in report.audits)

    def test_power_regularizer_with_higher_order_oracle(self):
        problem = benchmark("logistic", p=3.0, q=2)
        psi = power_regularizer(Geometry.from_p(3.0), problem.x0)
        trace = accel_run(problem, psi, TaylorOracle(problem), 10)
        assert trace.r == 3.0
        assert audit_gap(trace, problem).passed
