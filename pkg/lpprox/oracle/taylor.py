""" The oracle built from one q-th order Taylor model per call """
import math
from typing import Optional

import numpy as np

from lpprox.geometry import powered_norm_subgradient
from lpprox.subproblem import build_taylor_model, find_critical_point

from .answer import ProxAnswer
from .oracle import ProxOracle

# Holder constants below this are replaced by it so that lam_hat stays finite (e.g. quadratics at q = 2)
L_FLOOR = 1e-12


def taylor_lam_hat(L: float, q: int, sigma: float) -> float:
    """ lam_hat = sigma (q-1)! / (2L) """
    return sigma * math.factorial(q - 1) / (2.0 * max(L, L_FLOOR))


class TaylorOracle(ProxOracle):
    """
    Answers each query with an approximate critical point y of f_q(.; x) + ||. - x||^{q+nu}/(lam_hat (q+nu))
    and reports lam = lam_hat ||y - x||^{r-q-nu}, v = grad f(y), eps = 0. With r = q + nu the delivered lam
    is the constant lam_hat
    """

    name = "taylor"

    def __init__(self, problem, r: Optional[float] = None, sigma: float = 0.25, q: Optional[int] = None, **kwargs):
        holder = problem.holder
        self.q = holder.q if q is None else int(q)
        self.nu = holder.nu
        self.exponent = self.q + self.nu
        lam_hat = kwargs.pop("lam_hat", None)
        super().__init__(problem, self.exponent if r is None else r, sigma, 0.0, **kwargs)
        if sigma <= 0.0:
            raise ValueError("the Taylor oracle needs sigma > 0")
        self.lam_hat = taylor_lam_hat(holder.L, self.q, sigma) if lam_hat is None else float(lam_hat)

    @property
    def fixed_lam(self) -> Optional[float]:
        if abs(self.r - self.exponent) <= 1e-12:
            return self.lam_hat
        return None

    def solve(self, x: np.ndarray, lam_hat: Optional[float]) -> ProxAnswer:
        # the method's guess only drives its own step sizes; the model's weight comes from L
        model = build_taylor_model(self.problem, x, self.lam_hat, q=self.q)
        critical = find_critical_point(model)
        if critical.at_center:
            return ProxAnswer(
                x, x.copy(), model.gradient, np.zeros_like(x), math.inf, 0.0, self.r, self.sigma, 0.0, at_optimum=True
            )

        y = critical.point
        v = self.problem.gradient(y)
        dist = self.geometry.norm(y - x)
        lam = self.lam_hat * dist ** (self.r - self.exponent)
        v_hat = -powered_norm_subgradient(x, y, self.r, lam, self.geometry, align=-v)
        return ProxAnswer(x, y, v, v_hat, lam, 0.0, self.r, self.sigma, 0.0, inner_iterations=critical.iterations)


def taylor_oracle(problem, x, r: Optional[float] = None, sigma: float = 0.25) -> ProxAnswer:
    """ One audited Taylor-model answer at x """
    return TaylorOracle(problem, r=r, sigma=sigma).query(x)
