"""
Regularized Taylor models F(y) = f_q(y; x) + ||y - x||^{q+nu} / (lam_hat (q+nu)) and the inner solver
that finds their approximate critical points
"""
import math
from typing import Callable, NamedTuple, Optional

import numpy as np

from lpprox.errors import SolverError
from lpprox.geometry import Geometry, dual_map_direction, powered_norm_subgradient, prox_minimize

# models whose relative bound is numerically zero (L = 0, or y very close to x) are accepted at this residual
ABS_FLOOR = 1e-10


class TaylorModel(NamedTuple):
    """
    The q-th order Taylor expansion of f around `center` plus a power regularizer. The gradient and,
    for q >= 2, the Hessian are stored dense; orders 3 and up are evaluated through `higher`, which
    returns the directional derivative grad^i f(x)[h]^{i-1} as a dual vector
    """

    center: np.ndarray
    q: int
    value_at_center: float
    gradient: np.ndarray
    hessian: Optional[np.ndarray]
    higher: Optional[Callable[[int, np.ndarray], np.ndarray]]
    L: float
    nu: float
    lam_hat: float
    geometry: Geometry

    @property
    def exponent(self) -> float:
        return self.q + self.nu

    def tensor_apply(self, order: int, h: np.ndarray) -> np.ndarray:
        """ grad^order f(x)[h]^{order-1} """
        if order == 1:
            return self.gradient
        if order == 2 and self.hessian is not None:
            return self.hessian @ h
        return self.higher(order, h)

    def rule_bound(self, y) -> float:
        """ (L/(q-1)!) ||y - x||^{q+nu-1}, the allowed criticality residual at y """
        dist = self.geometry.norm(np.asarray(y) - self.center)
        return self.L / math.factorial(self.q - 1) * dist ** (self.exponent - 1.0)


def build_taylor_model(problem, x, lam_hat: float, q: Optional[int] = None) -> TaylorModel:
    """
    Collects the derivatives of `problem` at x into a TaylorModel of degree q (defaulting to the
    problem's Holder order)
    """
    x = np.asarray(x, dtype=float)
    holder = problem.holder
    q = holder.q if q is None else q
    hessian = problem.hessian(x) if q >= 2 else None

    def higher(order: int, h: np.ndarray) -> np.ndarray:
        return problem.derivative(order, x, h)

    return TaylorModel(
        center=x,
        q=q,
        value_at_center=float(problem.value(x)),
        gradient=np.asarray(problem.gradient(x), dtype=float),
        hessian=hessian,
        higher=higher if q >= 3 else None,
        L=holder.L,
        nu=holder.nu,
        lam_hat=lam_hat,
        geometry=problem.geometry,
    )


def taylor_polynomial(model: TaylorModel, y):
    """ Returns f_q(y; x) = f(x) + sum_i <grad^i f(x)[h]^{i-1}, h>/i! and its gradient, h = y - x """
    h = np.asarray(y, dtype=float) - model.center
    value = model.value_at_center
    grad = np.zeros_like(h)
    for order in range(1, model.q + 1):
        t = model.tensor_apply(order, h)
        value += float(np.dot(t, h)) / math.factorial(order)
        grad = grad + t / math.factorial(order - 1)
    return value, grad


def taylor_value_grad(model: TaylorModel, y, align=None):
    """ Returns F(y) and an element of its (sub)gradient """
    y = np.asarray(y, dtype=float)
    value, grad = taylor_polynomial(model, y)
    power = powered_norm_subgradient(model.center, y, model.exponent, model.lam_hat, model.geometry, align=align)
    if math.isinf(model.lam_hat):
        return value, grad
    dist = model.geometry.norm(y - model.center)
    return value + dist ** model.exponent / (model.lam_hat * model.exponent), grad + power


class CriticalPoint(NamedTuple):
    point: np.ndarray
    at_center: bool
    residual: float
    bound: float
    iterations: int

    @property
    def ratio(self) -> float:
        return self.residual / max(self.bound, ABS_FLOOR)


def criticality_residual(model: TaylorModel, y) -> float:
    """ ||grad f_q(y; x) - v_hat||_* with v_hat the negated power-term subgradient aligned to grad f_q """
    _, grad = taylor_polynomial(model, y)
    power = powered_norm_subgradient(model.center, y, model.exponent, model.lam_hat, model.geometry, align=-grad)
    return model.geometry.dual_norm(grad + power)


def warm_start(model: TaylorModel) -> np.ndarray:
    """
    The exact minimizer of the q = 1 model: y0 = x - t u with u the dual map of grad f(x) and
    t = (lam_hat ||grad f(x)||_*)^{1/(q+nu-1)}
    """
    g_norm = model.geometry.dual_norm(model.gradient)
    t = (model.lam_hat * g_norm) ** (1.0 / (model.exponent - 1.0))
    return model.center - t * dual_map_direction(model.gradient, model.geometry)


def _passes(model: TaylorModel, y) -> CriticalPoint:
    residual = criticality_residual(model, y)
    return CriticalPoint(np.asarray(y, dtype=float), False, residual, model.rule_bound(y), 0)


def find_critical_point(model: TaylorModel, gtol: float = 1e-12, max_iter: int = 5000) -> CriticalPoint:
    """
    Returns y != x with ||grad f_q(y; x) - v_hat||_* <= max((L/(q-1)!) ||y - x||^{q+nu-1}, ABS_FLOOR), or
    the center flagged `at_center` when grad f(x) = 0

    :raises SolverError: when the inner minimization stops without meeting the rule
    """
    if model.geometry.dual_norm(model.gradient) <= ABS_FLOOR * 1e-2:
        return CriticalPoint(model.center.copy(), True, 0.0, 0.0, 0)

    start = warm_start(model)
    candidate = _passes(model, start)
    if candidate.residual <= max(candidate.bound, ABS_FLOOR):
        return candidate
    if taylor_value_grad(model, start)[0] > model.value_at_center:
        start = model.center.copy()

    iterations = 0
    for tol in (gtol, gtol * 1e-3):
        solution = prox_minimize(
            lambda y: taylor_polynomial(model, y),
            model.center,
            model.lam_hat,
            model.exponent,
            model.geometry,
            start=start,
            gtol=tol,
            max_iter=max_iter,
        )
        iterations += solution.iterations
        candidate = _passes(model, solution.point)._replace(iterations=iterations)
        if candidate.residual <= max(candidate.bound, ABS_FLOOR):
            return candidate
        start = solution.point

    raise SolverError(
        "critical point search stopped above the stopping rule",
        ratio=candidate.ratio,
        residual=candidate.residual,
        iterations=iterations,
    )
