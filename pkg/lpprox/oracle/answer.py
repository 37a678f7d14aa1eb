""" Proximal oracle answers and the audit of the inequalities every answer must satisfy """
import math
from typing import NamedTuple, Optional

import numpy as np

from lpprox.geometry import Geometry

DEFAULT_AUDIT_TOL = 1e-8


class ProxAnswer(NamedTuple):
    """
    An approximate solution y of min_y f(y) + (1/(r lam))||y - x||^r: `v` is an eps-subgradient of f at y
    and `v_hat` is the negated subgradient of the power term at y, the vector an exact prox would
    match. `lam` is the proximal parameter the oracle actually delivered
    """

    x: np.ndarray
    y: np.ndarray
    v: np.ndarray
    v_hat: np.ndarray
    lam: float
    eps: float
    r: float
    sigma: float
    sigma_prime: float
    at_optimum: bool = False
    inner_iterations: int = 0

    @property
    def movement(self) -> np.ndarray:
        return self.y - self.x


class AnswerAudit(NamedTuple):
    """ The residuals of one answer against the oracle inequalities; `passed` applies the tolerance """

    subgradient_gap: float
    subgradient_bound: float
    eps: float
    eps_bound: float
    witness_norm_residual: float
    witness_inner_residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return (
            self.subgradient_gap <= self.subgradient_bound + self.tol
            and self.eps <= self.eps_bound + self.tol
            and self.witness_norm_residual <= self.tol
            and self.witness_inner_residual <= self.tol
        )

    @property
    def slack(self) -> float:
        """ How far the subgradient inequality is from binding, positive when it holds """
        return self.subgradient_bound - self.subgradient_gap


def audit_answer(answer: ProxAnswer, geometry: Geometry, tol: float = DEFAULT_AUDIT_TOL) -> AnswerAudit:
    """
    Checks ||v - v_hat||_* <= (sigma/lam)||x - y||^{r-1}, eps <= (sigma'/lam)||x - y||^r and that v_hat
    satisfies the two identities characterizing the subdifferential of -(1/(r lam))||. - x||^r at y:
    ||v_hat||_* = ||x - y||^{r-1}/lam and <v_hat, x - y> = ||x - y||^r/lam. Tolerances are scaled by
    max(1, ||v||_*)
    """
    scale = max(1.0, geometry.dual_norm(answer.v))
    scaled_tol = tol * scale
    if answer.at_optimum or math.isinf(answer.lam):
        return AnswerAudit(0.0, 0.0, answer.eps, 0.0, 0.0, 0.0, scaled_tol)

    dist = geometry.norm(answer.x - answer.y)
    lam = answer.lam
    return AnswerAudit(
        subgradient_gap=geometry.dual_norm(answer.v - answer.v_hat),
        subgradient_bound=answer.sigma / lam * dist ** (answer.r - 1.0),
        eps=answer.eps,
        eps_bound=answer.sigma_prime / lam * dist ** answer.r,
        witness_norm_residual=abs(geometry.dual_norm(answer.v_hat) - dist ** (answer.r - 1.0) / lam),
        witness_inner_residual=abs(float(np.dot(answer.v_hat, answer.x - answer.y)) - dist ** answer.r / lam),
        tol=scaled_tol,
    )


def residual_summary(audit: Optional[AnswerAudit]) -> dict:
    if audit is None:
        return {}
    return {"gap": audit.subgradient_gap, "bound": audit.subgradient_bound, "eps": audit.eps}
