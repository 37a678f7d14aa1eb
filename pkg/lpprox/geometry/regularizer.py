""" Uniformly convex regularizers centered at the starting point, and their Bregman divergences """
import enum
import math
from typing import NamedTuple, Optional

import numpy as np

from lpprox.errors import GeometryError

from .geometry import Geometry, signed_power


class RegularizerKind(enum.Enum):
    """ The three regularizer families """

    POWER_P = "power-p"
    SQUARED_P = "squared-p"
    INEXACT_FROM_UNIFORM = "inexact-from-uniform"

    def __str__(self):
        return self.value


class Regularizer(NamedTuple):
    """
    A (possibly delta-inexact) (mu, r)-uniformly convex function psi centered at x0, meaning
    D_psi(x, y) >= (mu/r) ||x - y||^r - delta for all x, y. `base_kind` names the formula used for the
    value and gradient, which an inexact regularizer shares with the exact one it was derived from
    """

    geometry: Geometry
    center: np.ndarray
    r: float
    mu: float
    delta: float
    kind: RegularizerKind
    base_kind: RegularizerKind
    a: Optional[float] = None

    def value(self, x) -> float:
        p = self.geometry.p
        dist = self.geometry.norm(np.asarray(x, dtype=float) - self.center)
        if self.base_kind is RegularizerKind.POWER_P:
            return dist ** p / p
        return dist ** 2 / (2.0 * (p - 1.0))

    def gradient(self, x) -> np.ndarray:
        self.geometry.require_smooth("regularizer gradient")
        p = self.geometry.p
        diff = np.asarray(x, dtype=float) - self.center
        if self.base_kind is RegularizerKind.POWER_P:
            return signed_power(diff, p - 1.0)
        dist = self.geometry.norm(diff)
        if dist == 0.0:
            return np.zeros_like(diff)
        return dist * signed_power(diff / dist, p - 1.0) / (p - 1.0)

    def divergence_from_center(self, u) -> float:
        """ D_psi(u, x0); the gradient vanishes at the center so this is psi(u) """
        return self.value(u)

    def uniform_convexity_slack(self, x, y) -> float:
        """ D_psi(x, y) - (mu/r)||x - y||^r + delta, which is non-negative by definition """
        dist = self.geometry.norm(np.asarray(x, dtype=float) - np.asarray(y, dtype=float))
        return bregman(self, x, y) - self.mu / self.r * dist ** self.r + self.delta


def bregman(psi: Regularizer, x, y) -> float:
    """ D_psi(x, y) = psi(x) - psi(y) - <grad psi(y), x - y>, clipped at 0 against rounding """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    value = psi.value(x) - psi.value(y) - float(np.dot(psi.gradient(y), x - y))
    return max(value, 0.0)


def power_regularizer(geometry: Geometry, center) -> Regularizer:
    """ psi(x) = (1/p)||x - x0||_p^p, which is (2^{-p(p-2)/(p-1)}, p)-uniformly convex for p >= 2 """
    p = geometry.p
    if not (2.0 <= p < math.inf):
        raise GeometryError("the power-p regularizer needs 2 <= p < inf", p=p)
    return Regularizer(
        geometry=geometry,
        center=np.asarray(center, dtype=float),
        r=p,
        mu=2.0 ** (-p * (p - 2.0) / (p - 1.0)),
        delta=0.0,
        kind=RegularizerKind.POWER_P,
        base_kind=RegularizerKind.POWER_P,
    )


def squared_regularizer(geometry: Geometry, center) -> Regularizer:
    """ psi(x) = ||x - x0||_p^2 / (2(p-1)), which is (1, 2)-uniformly convex for 1 < p <= 2 """
    p = geometry.p
    if not 1.0 < p <= 2.0:
        raise GeometryError("the squared-p regularizer needs 1 < p <= 2", p=p)
    return Regularizer(
        geometry=geometry,
        center=np.asarray(center, dtype=float),
        r=2.0,
        mu=1.0,
        delta=0.0,
        kind=RegularizerKind.SQUARED_P,
        base_kind=RegularizerKind.SQUARED_P,
    )


def default_regularizer(geometry: Geometry, center) -> Regularizer:
    """ Picks power-p for p >= 2 and squared-p for p < 2, so that r = m """
    geometry.require_smooth("a uniformly convex regularizer")
    if geometry.p >= 2.0:
        return power_regularizer(geometry, center)
    return squared_regularizer(geometry, center)


def inexact_parameters(mu: float, sigma: float, s: float, a: float):
    """
    Returns (mu', delta) such that a (mu, sigma)-uniformly convex function is delta-inexact
    (mu', s)-uniformly convex: mu' = mu a^{sigma/s} and delta = mu a^{sigma^2/(s(sigma-s))} (sigma-s)/(s sigma).
    Both come from Young's inequality applied to ||x - y||^s with weight a
    """
    if not 0.0 < s < sigma:
        raise GeometryError("need 0 < s < sigma", s=s, sigma=sigma)
    if a <= 0.0:
        raise GeometryError("the inexactness parameter must be positive", a=a)
    new_mu = mu * a ** (sigma / s)
    delta = mu * a ** (sigma ** 2 / (s * (sigma - s))) * (sigma - s) / (s * sigma)
    return new_mu, delta


def inexact_from_uniform(psi: Regularizer, s: float, a: float) -> Regularizer:
    """
    Turns an exact (mu, sigma)-uniformly convex regularizer into a delta-inexact (mu', s)-uniformly
    convex one with the same value and gradient, for any 0 < s < sigma and a > 0
    """
    if psi.delta != 0.0:
        raise GeometryError("the base regularizer must be exactly uniformly convex", delta=psi.delta)
    new_mu, delta = inexact_parameters(psi.mu, psi.r, s, a)
    return psi._replace(r=float(s), mu=new_mu, delta=delta, kind=RegularizerKind.INEXACT_FROM_UNIFORM, a=float(a))


def optimal_inexact_parameter(divergence: float, mu: float, sigma: float, s: float, budget: int) -> float:
    """
    Returns the a minimizing (D + delta(a) T) / mu(a), the part of the accelerated bound that
    depends on the inexactness parameter, for D = D_psi(u, x0) and T = budget. The minimizer is
    a = (sigma D / (mu T))^{s(sigma-s)/sigma^2}
    """
    if divergence <= 0.0:
        divergence = 1.0
    return (sigma * divergence / (mu * max(budget, 1))) ** (s * (sigma - s) / sigma ** 2)
