""" p-norm geometry: exponents, norms and the subgradients of powered norms """
import math
from typing import NamedTuple, Optional, Union

import numpy as np

from lpprox.errors import GeometryError

INF = math.inf

# magnitudes below this are treated as exactly zero in signed powers
ZERO_GUARD = 1e-300

# coordinates of a unit vector within this much of the extreme value count as active
# when selecting a subgradient of the l1 or l-infinity norm
ACTIVE_TOL = 1e-6

Exponent = Union[float, int, str]


def parse_exponent(p: Exponent) -> float:
    """
    Converts a user supplied exponent (a number or one of "inf", "infinity") into a float

    :param p: the exponent
    :return: the exponent as a float, possibly math.inf
    """
    if isinstance(p, str):
        text = p.strip().lower()
        if text in ("inf", "infinity", "+inf"):
            return INF
        try:
            return float(text)
        except ValueError:
            raise GeometryError("cannot parse exponent", p=p)
    return float(p)


def dual_exponent(p: Exponent) -> float:
    """ Returns the dual exponent p* with 1/p + 1/p* = 1, mapping 1 to inf and inf to 1 """
    p = parse_exponent(p)
    if math.isnan(p) or p < 1:
        raise GeometryError("exponent must lie in [1, inf]", p=p)
    if p == 1:
        return INF
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def signed_power(u, exponent: float) -> np.ndarray:
    """ Coordinate map sign(u)|u|^exponent, with |u| < ZERO_GUARD mapped to exactly 0 """
    u = np.asarray(u, dtype=float)
    magnitude = np.abs(u)
    out = np.zeros_like(u)
    mask = magnitude >= ZERO_GUARD
    out[mask] = np.sign(u[mask]) * magnitude[mask] ** exponent
    return out


def pnorm(x, p: Exponent) -> float:
    """ Returns the l_p norm of x; p = inf is the max-abs norm """
    p = parse_exponent(p)
    x = np.abs(np.asarray(x, dtype=float).ravel())
    if x.size == 0:
        return 0.0
    scale = float(np.max(x))
    if scale == 0.0:
        return 0.0
    if math.isinf(p):
        return scale
    if p == 1:
        return float(np.sum(x))
    if p == 2:
        return float(np.linalg.norm(x))
    # rescaling by the largest coordinate avoids overflow for large p
    return scale * float(np.sum((x / scale) ** p)) ** (1.0 / p)


def dual_pnorm(g, p: Exponent) -> float:
    """ Returns the norm dual to l_p, i.e. the l_{p*} norm, of g """
    return pnorm(g, dual_exponent(p))


class Geometry(NamedTuple):
    """ The exponent p of the space, its dual exponent and m = max{2, p} """

    p: float
    p_star: float
    m: float

    @staticmethod
    def from_p(p: Exponent) -> "Geometry":
        """ Validates p and derives the remaining fields """
        p = parse_exponent(p)
        return Geometry(p=p, p_star=dual_exponent(p), m=max(2.0, p))

    @property
    def is_smooth(self) -> bool:
        """ True when the norm is differentiable away from the origin, i.e. 1 < p < inf """
        return 1.0 < self.p < INF

    def norm(self, x) -> float:
        return pnorm(x, self.p)

    def dual_norm(self, g) -> float:
        return pnorm(g, self.p_star)

    def require_smooth(self, operation: str):
        """ Raises a GeometryError if `operation` needs a differentiable norm """
        if not self.is_smooth:
            raise GeometryError("{} requires 1 < p < inf".format(operation), p=self.p)

    def __str__(self):
        return "l{}".format("inf" if math.isinf(self.p) else "{:g}".format(self.p))


def _unit_direction(u: np.ndarray, p: float, coef: float, align: Optional[np.ndarray]) -> np.ndarray:
    """
    Returns an element of the subdifferential of the l_p norm at the unit vector u. The element is
    unique for 1 < p < inf; for p in {1, inf} it is chosen so that coef * element is as close as
    cheaply possible to `align`
    """
    if 1.0 < p < INF:
        return signed_power(u, p - 1.0)

    signs = np.where(u >= 0, 1.0, -1.0)
    if math.isinf(p):
        active = np.abs(u) >= 1.0 - ACTIVE_TOL
        weights = np.zeros_like(u)
        if align is not None:
            weights[active] = np.maximum(0.0, align[active] * signs[active])
        if weights.sum() <= 0.0:
            weights[active] = 1.0
        return weights / weights.sum() * signs

    # p == 1: zero coordinates may take any value in [-1, 1]
    zero = np.abs(u) < ACTIVE_TOL * max(1.0, float(np.max(np.abs(u))))
    direction = np.where(zero, 0.0, signs)
    if align is not None and coef > 0.0:
        direction[zero] = np.clip(align[zero] / coef, -1.0, 1.0)
    return direction


def powered_norm_subgradient(x, y, r: float, lam: float, geometry: Geometry, align=None) -> np.ndarray:
    """
    Returns an element of the subdifferential in y of (1/(r lam)) ||y - x||_p^r. For x != y the
    element satisfies ||v||_* = ||x - y||^{r-1} / lam and <v, y - x> = ||x - y||^r / lam; at y = x it
    is the zero vector. `align` picks among several elements when the norm is not smooth (p in {1, inf})

    :param x: the base point
    :param y: the query point
    :param r: the power, r > 1
    :param lam: the proximal parameter; lam = inf gives the zero vector
    :param geometry: the norm
    :param align: optional dual vector the returned element should be close to
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    diff = y - x
    dist = geometry.norm(diff)
    if dist < ZERO_GUARD or math.isinf(lam):
        return np.zeros_like(diff)
    coef = dist ** (r - 1.0) / lam
    align = None if align is None else np.asarray(align, dtype=float)
    return coef * _unit_direction(diff / dist, geometry.p, coef, align)


class PoweredNormSubgradient(NamedTuple):
    """ A subgradient of y -> (1/(r lam)) ||y - x||^r, kept with the data needed to check it """

    base: np.ndarray
    query: np.ndarray
    r: float
    lam: float
    geometry: Geometry

    def vector(self, align=None) -> np.ndarray:
        return powered_norm_subgradient(self.base, self.query, self.r, self.lam, self.geometry, align=align)

    def expected_dual_norm(self) -> float:
        """ (1/lam) ||x - y||^{r-1} """
        if math.isinf(self.lam):
            return 0.0
        return self.geometry.norm(self.query - self.base) ** (self.r - 1.0) / self.lam

    def expected_inner(self) -> float:
        """ (1/lam) ||x - y||^r """
        if math.isinf(self.lam):
            return 0.0
        return self.geometry.norm(self.query - self.base) ** self.r / self.lam

    def identity_residuals(self, align=None):
        """ Returns the absolute residuals of the dual-norm and inner-product identities """
        v = self.vector(align=align)
        return (
            abs(self.geometry.dual_norm(v) - self.expected_dual_norm()),
            abs(float(np.dot(v, self.query - self.base)) - self.expected_inner()),
        )


def dual_map_direction(g, geometry: Geometry) -> np.ndarray:
    """
    Returns a vector u with ||u||_p = 1 and <g, u> = ||g||_*, or zeros when g = 0. For 1 < p < inf
    it is the unique such vector
    """
    g = np.asarray(g, dtype=float)
    g_norm = geometry.dual_norm(g)
    if g_norm < ZERO_GUARD:
        return np.zeros_like(g)
    if math.isinf(geometry.p):
        return np.where(g >= 0, 1.0, -1.0)
    if geometry.p == 1:
        u = np.zeros_like(g)
        i = int(np.argmax(np.abs(g)))
        u[i] = 1.0 if g[i] >= 0 else -1.0
        return u
    return signed_power(g / g_norm, geometry.p_star - 1.0)
