""" The proximal oracle contracts shared by the exact, Taylor and ball oracles """
import abc
from typing import Optional

import numpy as np

from lpprox.errors import OracleError
from lpprox.logger import logger

from .answer import DEFAULT_AUDIT_TOL, AnswerAudit, ProxAnswer, audit_answer, residual_summary

log = logger.with_namespace("oracle")


class ProxOracle(abc.ABC):
    """
    A generalized inexact proximal oracle: given a query x (and optionally the method's current
    guess lam_hat) it returns a ProxAnswer together with the lam it realized. Every answer is
    audited before it is handed out unless the oracle was built with certify=False
    """

    name = "oracle"

    def __init__(self, problem, r: float, sigma: float, sigma_prime: float = 0.0, certify: bool = True, tol=None):
        if r <= 1.0:
            raise ValueError("oracle power r must exceed 1")
        if not (0.0 <= sigma < 0.5 and 0.0 <= sigma_prime < 0.5):
            raise ValueError("oracle tolerances must lie in [0, 1/2)")
        self.problem = problem
        self.geometry = problem.geometry
        self.r = float(r)
        self.sigma = float(sigma)
        self.sigma_prime = float(sigma_prime)
        self.certify = certify
        self.tol = DEFAULT_AUDIT_TOL if tol is None else tol
        self.calls = 0
        self.last_audit: Optional[AnswerAudit] = None

    @property
    def fixed_lam(self) -> Optional[float]:
        """ The lam every answer will carry, when it is known before the query; None otherwise """
        return None

    @abc.abstractmethod
    def solve(self, x: np.ndarray, lam_hat: Optional[float]) -> ProxAnswer:
        """ Produces an unaudited answer at x """

    def query(self, x, lam_hat: Optional[float] = None) -> ProxAnswer:
        """
        Returns the audited answer at x

        :raises OracleError: when certification is on and the answer violates its inequalities
        """
        self.calls += 1
        answer = self.solve(np.asarray(x, dtype=float), lam_hat)
        if not self.certify:
            return answer
        audit = audit_answer(answer, self.geometry, self.tol)
        self.last_audit = audit
        if not audit.passed:
            log.warn("oracle answer failed its audit", oracle=self.name, call=self.calls, **residual_summary(audit))
            raise OracleError("oracle answer violates the inexact prox inequalities", audit=audit, oracle=self.name)
        log.verbose("oracle answer", oracle=self.name, call=self.calls, lam=answer.lam, slack=audit.slack)
        return answer

    def __call__(self, x, lam_hat: Optional[float] = None) -> ProxAnswer:
        return self.query(x, lam_hat)


class FixedProxOracle(ProxOracle):
    """ An oracle whose lam is fixed in advance, the contract the accelerated method needs """

    def __init__(self, problem, lam: float, r: float, sigma: float, sigma_prime: float = 0.0, **kwargs):
        super().__init__(problem, r, sigma, sigma_prime, **kwargs)
        if not lam > 0.0:
            raise ValueError("proximal parameter must be positive")
        self.lam = float(lam)

    @property
    def fixed_lam(self) -> Optional[float]:
        return self.lam
