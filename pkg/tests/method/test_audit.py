import math

import numpy as np
import pytest

from lpprox.errors import CertificateError
from lpprox.geometry import Geometry, default_regularizer
from lpprox.method import GapAudit, GapReport, RunTrace, accel_run, audit_gap, choose_comparator
from lpprox.oracle import ExactOracle
from tests.mocks.problems import half_squared_norm


def exact_trace(problem, T=8):
    psi = default_regularizer(problem.geometry, problem.x0)
    return accel_run(problem, psi, ExactOracle(problem, 1.0), T)


class TestGapAudit:
    def test_properties(self):
        audit = GapAudit(k=1, U=3.0, L=1.0, AG=2.0, drop=0.5, bound=0.25, tol=1e-3)
        assert audit.G == 2.0
        assert audit.excess == 0.25
        assert not audit.passed
        assert audit._replace(bound=0.5).passed

    def test_empty_report(self):
        report = GapReport([], "start", 0.0, 0.0)
        assert report.passed
        assert report.max_excess == -math.inf
        assert report.total_drop == 0.0


class TestChooseComparator:
    def test_order_of_preference(self):
        problem = half_squared_norm()
        trace = exact_trace(problem, T=3)
        u, label = choose_comparator(trace, problem, u=[1.0, 0.0, 0.0, 0.0])
        assert label == "supplied"
        assert np.array_equal(u, [1.0, 0.0, 0.0, 0.0])
        u, label = choose_comparator(trace, problem)
        assert label == "known-minimizer"
        unknown = problem._replace(x_star=None, f_star=None)
        u, label = choose_comparator(trace, unknown)
        assert label == "best-iterate"
        assert np.array_equal(u, trace.records[int(np.argmin(trace.values(unknown)))].y)

    def test_empty_trace_uses_the_start(self):
        problem = half_squared_norm()._replace(x_star=None, f_star=None)
        trace = RunTrace("accel", Geometry.from_p(2), 2.0, problem.x0)
        u, label = choose_comparator(trace, problem)
        assert label == "start"
        assert np.array_equal(u, problem.x0)


class TestAuditGap:
    def test_needs_the_regularizer(self):
        problem = half_squared_norm()
        with pytest.raises(ValueError):
            audit_gap(RunTrace("accel", Geometry.from_p(2), 2.0, problem.x0), problem)

    def test_any_comparator_passes(self, rng):
        problem = half_squared_norm()
        trace = exact_trace(problem)
        report = audit_gap(trace, problem, u=rng.standard_normal(4))
        assert report.comparator == "supplied"
        assert report.passed
        assert len(report.audits) == trace.T
        assert [audit.k for audit in report.audits] == list(range(1, trace.T + 1))

    def test_lower_bounds_stay_below_the_comparator(self):
        problem = half_squared_norm()
        report = audit_gap(exact_trace(problem), problem)
        for audit in report.audits:
            assert audit.L <= report.f_u + 1e-6
            assert audit.U >= audit.L - 1e-6

    def test_corrupted_error_term_is_caught(self):
        problem = half_squared_norm()
        trace = exact_trace(problem)
        trace.records[2] = trace.records[2]._replace(eps=10.0)
        report = audit_gap(trace, problem)
        assert not report.passed
        assert report.max_excess > 1.0
        assert not report.audits[2].passed

    def test_strict_audit_raises(self):
        problem = half_squared_norm()
        trace = exact_trace(problem)
        assert audit_gap(trace, problem, strict=True).passed
        trace.records[2] = trace.records[2]._replace(eps=10.0)
        with pytest.raises(CertificateError):
            audit_gap(trace, problem, strict=True)

    def test_absolute_tolerance(self):
        problem = half_squared_norm()
        trace = exact_trace(problem)
        scaled = audit_gap(trace, problem, tol=1e-8)
        absolute = audit_gap(trace, problem, tol=1e-8, relative=False)
        assert all(audit.tol == 1e-8 for audit in absolute.audits)
        assert all(s.tol >= a.tol for s, a in zip(scaled.audits, absolute.audits))
        assert absolute.drops == scaled.drops
        assert absolute.passed
