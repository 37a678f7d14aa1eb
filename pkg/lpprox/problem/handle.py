""" The read-only view of a benchmark objective that oracles and methods work with """
from typing import Callable, NamedTuple, Optional, Tuple

import numpy as np

from lpprox.errors import ProblemError
from lpprox.geometry import Geometry

# relative slack applied to sampled Holder and convexity spot checks
SPOT_CHECK_SLACK = 1e-6


class HolderData(NamedTuple):
    """
    The q-th derivative of f is (L, nu)-Holder continuous in the operator norm induced by the
    problem's p-norm. `empirical` marks constants that were estimated rather than derived
    """

    L: float
    nu: float
    q: int
    empirical: bool = False


class ProblemHandle(NamedTuple):
    name: str
    geometry: Geometry
    holder: HolderData
    x0: np.ndarray
    value_fn: Callable[[np.ndarray], float]
    gradient_fn: Callable[[np.ndarray], np.ndarray]
    hessian_fn: Optional[Callable[[np.ndarray], np.ndarray]] = None
    # (order, x, h) -> grad^order f(x)[h]^{order-1}, for orders the dense callbacks do not cover
    derivative_fn: Optional[Callable[[int, np.ndarray, np.ndarray], np.ndarray]] = None
    max_order: int = 1
    x_star: Optional[np.ndarray] = None
    f_star: Optional[float] = None
    flags: Tuple[str, ...] = ()

    @property
    def dim(self) -> int:
        return int(self.x0.size)

    def value(self, x) -> float:
        return float(self.value_fn(np.asarray(x, dtype=float)))

    def gradient(self, x) -> np.ndarray:
        return np.asarray(self.gradient_fn(np.asarray(x, dtype=float)), dtype=float)

    def value_grad(self, x):
        return self.value(x), self.gradient(x)

    def hessian(self, x) -> np.ndarray:
        if self.max_order < 2:
            raise ProblemError("problem has no second derivative", problem=self.name, order=2)
        x = np.asarray(x, dtype=float)
        if self.hessian_fn is not None:
            return np.asarray(self.hessian_fn(x), dtype=float)
        return np.column_stack([self.derivative(2, x, e) for e in np.eye(x.size)])

    def derivative(self, order: int, x, h) -> np.ndarray:
        """ Returns the dual vector grad^order f(x)[h]^{order-1} """
        if order < 1 or order > self.max_order:
            raise ProblemError("derivative order beyond the problem's smoothness", problem=self.name, order=order)
        x = np.asarray(x, dtype=float)
        h = np.asarray(h, dtype=float)
        if order == 1:
            return self.gradient(x)
        if order == 2 and self.hessian_fn is not None:
            return self.hessian(x) @ h
        return np.asarray(self.derivative_fn(order, x, h), dtype=float)

    def known_optimum(self) -> bool:
        return self.f_star is not None and self.x_star is not None

    def gap(self, x) -> Optional[float]:
        """ f(x) - f*, or None when f* is unknown """
        if self.f_star is None:
            return None
        return self.value(x) - self.f_star

    def distance_to_optimum(self, x=None) -> Optional[float]:
        """ ||x - x*||_p (x defaults to x0), or None when x* is unknown """
        if self.x_star is None:
            return None
        x = self.x0 if x is None else np.asarray(x, dtype=float)
        return self.geometry.norm(x - self.x_star)


def _random_direction(rng: np.random.Generator, dim: int, geometry: Geometry) -> np.ndarray:
    h = rng.standard_normal(dim)
    return h / geometry.norm(h)


def holder_ratio(problem: ProblemHandle, rng: np.random.Generator, pairs: int = 20, scale: float = 1.0) -> float:
    """
    Largest sampled value of |<grad^q f(x)[h]^{q-1} - grad^q f(y)[h]^{q-1}, h>| / (L ||x - y||^nu) over
    random pairs near x0 and random unit directions h. Values above 1 + SPOT_CHECK_SLACK
    contradict the advertised Holder data
    """
    holder = problem.holder
    worst = 0.0
    for _ in range(pairs):
        x = problem.x0 + scale * rng.standard_normal(problem.dim)
        y = problem.x0 + scale * rng.standard_normal(problem.dim)
        h = _random_direction(rng, problem.dim, problem.geometry)
        if holder.q == 1:
            diff = problem.geometry.dual_norm(problem.gradient(x) - problem.gradient(y))
        else:
            delta = problem.derivative(holder.q, x, h) - problem.derivative(holder.q, y, h)
            diff = abs(float(np.dot(delta, h)))
        allowed = holder.L * problem.geometry.norm(x - y) ** holder.nu
        if allowed > 0.0:
            worst = max(worst, diff / allowed)
        elif diff > 1e-12:
            return np.inf
    return worst


def midpoint_violation(problem: ProblemHandle, rng: np.random.Generator, pairs: int = 1000, scale: float = 1.0) -> float:
    """ Largest f((x+y)/2) - (f(x)+f(y))/2 over random pairs; convexity makes it <= 0 """
    worst = -np.inf
    for _ in range(pairs):
        x = problem.x0 + scale * rng.standard_normal(problem.dim)
        y = problem.x0 + scale * rng.standard_normal(problem.dim)
        gap = problem.value((x + y) / 2.0) - (problem.value(x) + problem.value(y)) / 2.0
        worst = max(worst, gap / max(1.0, abs(problem.value(x)) + abs(problem.value(y))))
    return float(worst)
