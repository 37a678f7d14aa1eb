"""
Numerical minimization of h(y) + (1/(r lam)) ||y - x||_p^r, optionally restricted to an intersection of
p-norm balls. This is the workhorse behind exact proximal oracles, Moreau envelopes, Taylor-model
subproblems and ball optimization oracles
"""
import math
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import optimize

from .geometry import Geometry, powered_norm_subgradient, signed_power

ValueGrad = Callable[[np.ndarray], Tuple[float, np.ndarray]]

DEFAULT_GTOL = 1e-12
DEFAULT_MAX_ITER = 5000
RESTARTS = 3


class BallConstraint(NamedTuple):
    """ The feasible set {y : ||y - center||_p <= radius} """

    center: np.ndarray
    radius: float
    geometry: Geometry

    def contains(self, y, slack: float = 1e-9) -> bool:
        return self.geometry.norm(np.asarray(y) - self.center) <= self.radius * (1.0 + slack) + slack

    @property
    def is_box(self) -> bool:
        return math.isinf(self.geometry.p)


Constraints = Optional[Union[BallConstraint, Sequence[BallConstraint]]]


class ProxSolution(NamedTuple):
    point: np.ndarray
    objective: float
    success: bool
    message: str
    iterations: int


def _as_list(constraint: Constraints) -> List[BallConstraint]:
    if constraint is None:
        return []
    if isinstance(constraint, BallConstraint):
        return [constraint]
    return list(constraint)


def _box_bounds(boxes: List[BallConstraint], dim: int):
    """ Coordinate bounds of the intersection of l-inf balls, or None without any """
    if not boxes:
        return None
    lower = np.full(dim, -np.inf)
    upper = np.full(dim, np.inf)
    for box in boxes:
        lower = np.maximum(lower, box.center - box.radius)
        upper = np.minimum(upper, box.center + box.radius)
    return lower, upper


def _power_term(y: np.ndarray, x: np.ndarray, r: float, lam: float, geometry: Geometry):
    if math.isinf(lam):
        return 0.0, np.zeros_like(y)
    value = geometry.norm(y - x) ** r / (r * lam)
    return value, powered_norm_subgradient(x, y, r, lam, geometry)


def _solve_lbfgs(value_grad, x, lam, r, geometry, start, bounds, gtol, max_iter) -> ProxSolution:
    def objective(y):
        h_value, h_grad = value_grad(y)
        p_value, p_grad = _power_term(y, x, r, lam, geometry)
        return h_value + p_value, h_grad + p_grad

    point = np.array(start, dtype=float)
    _, grad0 = objective(point)
    scaled_gtol = gtol * max(1.0, float(np.max(np.abs(grad0))))
    result = None
    iterations = 0
    for _ in range(RESTARTS):
        result = optimize.minimize(
            objective,
            point,
            jac=True,
            method="L-BFGS-B",
            bounds=bounds,
            options={"maxiter": max_iter, "ftol": 1e-20, "gtol": scaled_gtol, "maxcor": 30},
        )
        iterations += int(result.nit)
        moved = np.max(np.abs(result.x - point)) if point.size else 0.0
        point = result.x
        if result.success and moved == 0.0:
            break
        if result.success and float(np.max(np.abs(result.jac))) <= scaled_gtol:
            break
    return ProxSolution(point, float(result.fun), bool(result.success), str(result.message), iterations)


def _ball_inequality(ball: BallConstraint, dim: int) -> dict:
    """ SLSQP inequality 1 - ||(y - c)/rho||_q^q >= 0 on the leading `dim` coordinates """
    q = ball.geometry.p

    def inside(z):
        scaled = (z[:dim] - ball.center) / ball.radius
        return np.array([1.0 - np.sum(np.abs(scaled) ** q)])

    def inside_jac(z):
        grad = np.zeros_like(z)
        scaled = (z[:dim] - ball.center) / ball.radius
        grad[:dim] = -q * signed_power(scaled, q - 1.0) / ball.radius
        return grad.reshape(1, -1)

    return {"type": "ineq", "fun": inside, "jac": inside_jac}


def _solve_slsqp(value_grad, x, lam, r, geometry, start, balls, box, max_iter) -> ProxSolution:
    """
    Handles the nonsmooth l1 / l-inf prox terms through an epigraph reformulation, and non-box ball
    constraints through explicit inequalities
    """
    dim = x.size
    p = geometry.p
    if math.isinf(lam) or geometry.is_smooth:
        extra = 0
    elif math.isinf(p):
        extra = 1
    else:
        extra = dim

    def split(z):
        return z[:dim], z[dim:]

    def objective(z):
        y, t = split(z)
        h_value, h_grad = value_grad(y)
        grad = np.zeros_like(z)
        if extra == 0:
            p_value, p_grad = _power_term(y, x, r, lam, geometry)
            grad[:dim] = h_grad + p_grad
            return h_value + p_value, grad
        total = float(np.sum(t))
        grad[:dim] = h_grad
        grad[dim:] = total ** (r - 1.0) / lam if total > 0 else 0.0
        return h_value + total ** r / (r * lam), grad

    constraints: List[dict] = []
    if extra:
        identity = np.eye(dim)
        t_block = np.ones((dim, 1)) if extra == 1 else np.eye(dim)

        def upper(z):
            y, t = split(z)
            return (t if extra == dim else t[0]) - (y - x)

        def lower(z):
            y, t = split(z)
            return (t if extra == dim else t[0]) + (y - x)

        constraints.append({"type": "ineq", "fun": upper, "jac": lambda z: np.hstack([-identity, t_block])})
        constraints.append({"type": "ineq", "fun": lower, "jac": lambda z: np.hstack([identity, t_block])})
    constraints.extend(_ball_inequality(ball, dim) for ball in balls)

    bounds = [(None, None)] * dim + [(0.0, None)] * extra
    y0 = np.array(start, dtype=float)
    if box is not None:
        bounds[:dim] = list(zip(box[0], box[1]))
        y0 = np.clip(y0, box[0], box[1])
    if any(not ball.contains(y0, slack=0.0) for ball in balls):
        y0 = balls[0].center.copy()
        if box is not None:
            y0 = np.clip(y0, box[0], box[1])
    if extra == 1:
        t0 = np.array([np.max(np.abs(y0 - x))]) if dim else np.zeros(1)
    elif extra:
        t0 = np.abs(y0 - x)
    else:
        t0 = np.zeros(0)
    z0 = np.concatenate([y0, t0])
    result = optimize.minimize(
        objective,
        z0,
        jac=True,
        method="SLSQP",
        bounds=bounds,
        constraints=constraints,
        options={"maxiter": max_iter, "ftol": 1e-15},
    )
    point = result.x[:dim]
    value = value_grad(point)[0] + _power_term(point, x, r, lam, geometry)[0]
    return ProxSolution(point, float(value), bool(result.success), str(result.message), int(result.nit))


def prox_minimize(
    value_grad: ValueGrad,
    x,
    lam: float,
    r: float,
    geometry: Geometry,
    start=None,
    constraint: Constraints = None,
    gtol: float = DEFAULT_GTOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> ProxSolution:
    """
    Minimizes h(y) + (1/(r lam)) ||y - x||_p^r over R^d, or over the intersection of the given balls

    :param value_grad: returns (h(y), grad h(y))
    :param x: the proximal center
    :param lam: proximal parameter; math.inf drops the proximal term entirely
    :param r: the power of the proximal term, r > 1
    :param geometry: the norm of the proximal term
    :param start: initial point, defaults to x
    :param constraint: optional p-norm ball, or a sequence of balls to intersect
    :return: the best point found and the solver status; callers check optimality residuals
    """
    x = np.asarray(x, dtype=float)
    start = x.copy() if start is None else np.asarray(start, dtype=float)
    constraints = _as_list(constraint)
    box = _box_bounds([c for c in constraints if c.is_box], x.size)
    balls = [c for c in constraints if not c.is_box]
    if (math.isinf(lam) or geometry.is_smooth) and not balls:
        bounds = None
        if box is not None:
            bounds = list(zip(box[0], box[1]))
            start = np.clip(start, box[0], box[1])
        return _solve_lbfgs(value_grad, x, lam, r, geometry, start, bounds, gtol, max_iter)
    return _solve_slsqp(value_grad, x, lam, r, geometry, start, balls, box, max_iter)
