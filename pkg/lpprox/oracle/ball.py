""" The ball optimization oracle: minimize f over a p-norm ball of fixed radius around the query """
import math
from typing import Callable, Optional

import numpy as np

from lpprox.geometry import BallConstraint, powered_norm_subgradient, prox_minimize

from .answer import ProxAnswer
from .oracle import ProxOracle

# relative distance to the sphere under which a ball minimizer counts as interior
BOUNDARY_TOL = 1e-6

BallHook = Callable[[object, BallConstraint], np.ndarray]


def minimize_in_ball(problem, constraint: BallConstraint) -> np.ndarray:
    """ The default hook: direct constrained minimization of f """
    return prox_minimize(problem.value_grad, constraint.center, math.inf, 2.0, problem.geometry, constraint=constraint).point


class BallOracle(ProxOracle):
    """
    Minimizes f over B_p(x, rho). A minimizer on the sphere is the exact prox point for
    lam = rho^{r-1}/||grad f(y)||_*, so the answer moves exactly rho; an interior minimizer is a global
    one and is returned with the at_optimum flag
    """

    name = "ball"

    def __init__(self, problem, rho: float, r: float = 2.0, sigma: float = 0.25, hook: Optional[BallHook] = None, **kwargs):
        super().__init__(problem, r, sigma, 0.0, **kwargs)
        if not rho > 0.0:
            raise ValueError("ball radius must be positive")
        self.rho = float(rho)
        self.hook = minimize_in_ball if hook is None else hook

    def solve(self, x: np.ndarray, lam_hat: Optional[float]) -> ProxAnswer:
        constraint = BallConstraint(x, self.rho, self.geometry)
        y = np.asarray(self.hook(self.problem, constraint), dtype=float)
        v = self.problem.gradient(y)
        dist = self.geometry.norm(y - x)
        v_norm = self.geometry.dual_norm(v)
        if dist < self.rho * (1.0 - BOUNDARY_TOL) or v_norm == 0.0:
            return ProxAnswer(x, y, v, np.zeros_like(x), math.inf, 0.0, self.r, self.sigma, 0.0, at_optimum=True)

        lam = dist ** (self.r - 1.0) / v_norm
        v_hat = -powered_norm_subgradient(x, y, self.r, lam, self.geometry, align=-v)
        return ProxAnswer(x, y, v, v_hat, lam, 0.0, self.r, self.sigma, 0.0)


def ball_oracle(problem, x, rho: float, hook: Optional[BallHook] = None) -> ProxAnswer:
    """ One audited ball-oracle answer at x """
    return BallOracle(problem, rho, hook=hook).query(x)
