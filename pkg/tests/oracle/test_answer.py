import math

import numpy as np

from lpprox.geometry import Geometry
from lpprox.oracle import ProxAnswer, audit_answer


def make_answer(error, sigma=0.25):
    x = np.zeros(2)
    y = np.array([1.0, 0.0])
    v_hat = np.array([-1.0, 0.0])
    return ProxAnswer(x, y, v_hat + error, v_hat, 1.0, 0.0, 2.0, sigma, 0.0)


class TestAuditAnswer:
    def test_accepts_errors_within_sigma(self):
        audit = audit_answer(make_answer(np.array([0.0, 0.2])), Geometry.from_p(2))
        assert audit.passed
        assert audit.subgradient_bound == 0.25
        assert audit.slack > 0.0

    def test_rejects_errors_beyond_sigma(self):
        audit = audit_answer(make_answer(np.array([0.0, 0.3])), Geometry.from_p(2))
        assert not audit.passed
        assert audit.slack < 0.0

    def test_rejects_a_wrong_witness(self):
        answer = make_answer(np.zeros(2))._replace(v_hat=np.array([-2.0, 0.0]), v=np.array([-2.0, 0.0]))
        audit = audit_answer(answer, Geometry.from_p(2))
        assert audit.witness_norm_residual > audit.tol
        assert not audit.passed

    def test_rejects_large_eps(self):
        answer = make_answer(np.zeros(2), sigma=0.25)._replace(eps=0.1, sigma_prime=0.05)
        assert not audit_answer(answer, Geometry.from_p(2)).passed

    def test_optimal_answers_pass(self):
        answer = make_answer(np.zeros(2))._replace(lam=math.inf, at_optimum=True)
        assert audit_answer(answer, Geometry.from_p(2)).passed

    def test_movement(self):
        assert np.array_equal(make_answer(np.zeros(2)).movement, np.array([1.0, 0.0]))
