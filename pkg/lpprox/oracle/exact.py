""" Reference oracle: the proximal problem solved to high accuracy by direct minimization """
from typing import Optional

import numpy as np

from lpprox.geometry import powered_norm_subgradient, prox_minimize

from .answer import ProxAnswer
from .oracle import FixedProxOracle

# gradients below this dual norm mean the query point is already optimal
STATIONARY_TOL = 1e-12


class ExactOracle(FixedProxOracle):
    """
    Minimizes f(y) + (1/(r lam))||y - x||^r numerically and returns v = grad f(y), eps = 0. The answer
    claims sigma = sigma' = 0, so only solver error is tolerated by the audit. When the caller passes
    a guess lam_hat it is used as the proximal parameter, which makes the answer's lam equal the guess
    """

    name = "exact"

    def __init__(self, problem, lam: float, r: float = 2.0, **kwargs):
        super().__init__(problem, lam, r, sigma=0.0, sigma_prime=0.0, **kwargs)

    def solve(self, x: np.ndarray, lam_hat: Optional[float]) -> ProxAnswer:
        lam = self.lam if lam_hat is None else float(lam_hat)
        grad_x = self.problem.gradient(x)
        if self.geometry.dual_norm(grad_x) <= STATIONARY_TOL:
            return ProxAnswer(x, x.copy(), grad_x, np.zeros_like(x), lam, 0.0, self.r, 0.0, 0.0, at_optimum=True)

        solution = prox_minimize(self.problem.value_grad, x, lam, self.r, self.geometry)
        y = solution.point
        v = self.problem.gradient(y)
        v_hat = -powered_norm_subgradient(x, y, self.r, lam, self.geometry, align=-v)
        return ProxAnswer(x, y, v, v_hat, lam, 0.0, self.r, 0.0, 0.0, inner_iterations=solution.iterations)


def exact_oracle(problem, x, lam: float, r: float = 2.0, tol: Optional[float] = None) -> ProxAnswer:
    """ One audited exact prox answer at x """
    return ExactOracle(problem, lam, r, tol=tol).query(x)
