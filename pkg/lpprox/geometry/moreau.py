""" Moreau envelope evaluation with a certificate of the envelope's basic identities """
from typing import NamedTuple

import numpy as np

from lpprox.errors import SolverError

from .geometry import Geometry, powered_norm_subgradient
from .prox import ValueGrad, prox_minimize


class MoreauCertificate(NamedTuple):
    """
    Residuals of the identities every Moreau envelope satisfies at its prox point y:
    f(y) <= M(x) <= f(x), ||grad f(y)||_* = ||x - y||^{r-1}/lam and the prox stationarity itself
    """

    tol: float
    lower_residual: float
    upper_residual: float
    norm_identity_residual: float
    stationarity_residual: float

    @property
    def passed(self) -> bool:
        return max(self.lower_residual, self.upper_residual, self.norm_identity_residual) <= self.tol


class MoreauProbe(NamedTuple):
    value: float
    prox: np.ndarray
    certificate: MoreauCertificate


def moreau_probe(
    value_grad: ValueGrad, x, lam: float, geometry: Geometry = Geometry.from_p(2), r: float = 2.0, tol: float = 1e-8
) -> MoreauProbe:
    """
    Evaluates M(x) = min_y f(y) + (1/(r lam))||y - x||^r and its minimizer

    :param value_grad: returns (f(y), grad f(y)) for a convex differentiable f
    :param x: the evaluation point
    :param lam: proximal parameter; lam = 0 returns f(x) and x itself
    :param geometry: the norm used in the envelope
    :param r: the power of the envelope's distance term
    :param tol: tolerance applied to the certificate residuals, scaled by the gradient magnitude
    """
    x = np.asarray(x, dtype=float)
    f_x, grad_x = value_grad(x)
    if lam < 0:
        raise ValueError("the proximal parameter must be non-negative")
    if lam == 0:
        return MoreauProbe(float(f_x), x.copy(), MoreauCertificate(tol, 0.0, 0.0, 0.0, 0.0))

    solution = prox_minimize(value_grad, x, lam, r, geometry)
    prox = solution.point
    f_prox, grad_prox = value_grad(prox)
    dist = geometry.norm(x - prox)
    envelope = f_prox + dist ** r / (r * lam)

    scale = max(1.0, geometry.dual_norm(grad_x))
    stationarity = geometry.dual_norm(grad_prox + powered_norm_subgradient(x, prox, r, lam, geometry, align=-grad_prox))
    certificate = MoreauCertificate(
        tol=tol * max(1.0, abs(f_x)),
        lower_residual=max(0.0, f_prox - envelope),
        upper_residual=max(0.0, envelope - f_x),
        norm_identity_residual=abs(geometry.dual_norm(grad_prox) - dist ** (r - 1.0) / lam) / scale,
        stationarity_residual=stationarity / scale,
    )
    if certificate.stationarity_residual > tol * 1e2:
        raise SolverError(
            "moreau envelope inner solve did not converge",
            stationarity=certificate.stationarity_residual,
            message=solution.message,
        )
    return MoreauProbe(float(envelope), prox, certificate)
