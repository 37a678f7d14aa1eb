""" Benchmark objectives with certified Holder data, spanning the (p, q, nu) grid of the methods """
import enum
import math
from typing import NamedTuple, Optional

import numpy as np
from scipy import optimize, special

from lpprox.errors import ProblemError
from lpprox.geometry import Geometry, dual_pnorm, signed_power
from lpprox.logger import logger
from lpprox.util import derive_rng

from .handle import HolderData, ProblemHandle

log = logger.with_namespace("problem")

MAX_DIM = 64
MAX_ROWS = 512
NEWTON_POLISH_STEPS = 30


class ProblemKind(enum.Enum):
    QUADRATIC = "quadratic"
    PTH_POWER = "pth-power"
    LOGISTIC = "logistic"
    SOFTMAX_REGRESSION = "softmax-regression"
    HUBERIZED_NORM = "huberized-norm"

    def __str__(self):
        return self.value

    @staticmethod
    def parse(name: str) -> "ProblemKind":
        try:
            return ProblemKind(name)
        except ValueError:
            raise ProblemError("unknown problem", problem=name, known=",".join(k.value for k in ProblemKind))


class ProblemSpec(NamedTuple):
    """ Parameters of a benchmark problem; array fields override the seeded generator """

    kind: ProblemKind
    dim: int = 8
    p: float = 2.0
    q: int = 1
    nu: float = 1.0
    seed: int = 0
    radius: float = 1.0
    rows: int = 64
    reg: float = 1e-3
    weight: float = 1.0
    smoothing_mu: float = 0.1
    huber_delta: float = 0.1
    matrix: Optional[np.ndarray] = None
    vector: Optional[np.ndarray] = None
    x0: Optional[np.ndarray] = None


def dimension_factor(dim: int, p: float, exponent: float) -> float:
    """ d^{max(0, 1 - exponent/p)}, the price of measuring a Euclidean constant in the l_p operator norm """
    if math.isinf(p):
        return float(dim)
    return float(dim) ** max(0.0, 1.0 - exponent / p)


def _point_on_sphere(rng: np.random.Generator, dim: int, geometry: Geometry, radius: float) -> np.ndarray:
    u = rng.standard_normal(dim)
    return radius * u / geometry.norm(u)


def _default_start(spec: ProblemSpec, geometry: Geometry, x_star: Optional[np.ndarray]) -> np.ndarray:
    """ The origin, unless the origin is the minimizer, in which case a point at distance `radius` """
    if spec.x0 is not None:
        return np.asarray(spec.x0, dtype=float)
    if x_star is not None and geometry.norm(x_star) == 0.0:
        ones = np.ones(spec.dim)
        return spec.radius * ones / geometry.norm(ones)
    return np.zeros(spec.dim)


def _newton_polish(value_grad, hessian, x: np.ndarray) -> np.ndarray:
    """ Refines a quasi-Newton minimizer with damped Newton steps until the gradient stops shrinking """
    _, grad = value_grad(x)
    for _ in range(NEWTON_POLISH_STEPS):
        step = np.linalg.lstsq(hessian(x), grad, rcond=None)[0]
        candidate = x - step
        _, new_grad = value_grad(candidate)
        if not np.linalg.norm(new_grad) < np.linalg.norm(grad):
            break
        x, grad = candidate, new_grad
    return x


def _numeric_minimizer(value_grad, hessian, x0: np.ndarray) -> np.ndarray:
    result = optimize.minimize(
        value_grad, x0, jac=True, method="L-BFGS-B", options={"maxiter": 10000, "ftol": 1e-20, "gtol": 1e-12}
    )
    return _newton_polish(value_grad, hessian, result.x)


def _require_nu_one(spec: ProblemSpec):
    if spec.nu != 1.0:
        raise ProblemError("problem only supports nu = 1", problem=str(spec.kind), nu=spec.nu)


def _quadratic(spec: ProblemSpec, geometry: Geometry, rng: np.random.Generator) -> ProblemHandle:
    """ f(x) = x'Qx/2 - b'x; the seeded Q has eigenvalues ((i+1)/d)^2 in a random orthonormal basis """
    _require_nu_one(spec)
    if spec.q not in (1, 2):
        raise ProblemError("quadratic supports q in {1, 2}", q=spec.q)
    d = spec.dim
    if spec.matrix is not None:
        matrix = np.asarray(spec.matrix, dtype=float)
        vector = np.zeros(d) if spec.vector is None else np.asarray(spec.vector, dtype=float)
        x_star = np.linalg.lstsq(matrix, vector, rcond=None)[0]
    else:
        basis, _ = np.linalg.qr(rng.standard_normal((d, d)))
        matrix = basis @ np.diag(((np.arange(d) + 1.0) / d) ** 2) @ basis.T
        matrix = (matrix + matrix.T) / 2.0
        x_star = _point_on_sphere(rng, d, geometry, spec.radius)
        vector = matrix @ x_star
    if np.linalg.norm(matrix @ x_star - vector) > 1e-9 * max(1.0, np.linalg.norm(vector)):
        raise ProblemError("quadratic has no minimizer (b outside the range of Q)")
    f_star = -0.5 * float(vector @ x_star)
    lam_max = float(np.max(np.linalg.eigvalsh(matrix)))

    def value(x):
        r = x - x_star
        return 0.5 * float(r @ matrix @ r) + f_star

    def third(order, x, h):
        return np.zeros_like(x)

    L = lam_max * dimension_factor(d, geometry.p, 2.0) if spec.q == 1 else 0.0
    return ProblemHandle(
        name=str(spec.kind),
        geometry=geometry,
        holder=HolderData(L=L, nu=1.0, q=spec.q),
        x0=_default_start(spec, geometry, x_star),
        value_fn=value,
        gradient_fn=lambda x: matrix @ x - vector,
        hessian_fn=lambda x: matrix,
        derivative_fn=third,
        max_order=3,
        x_star=x_star,
        f_star=f_star,
    )


def _pth_power(spec: ProblemSpec, geometry: Geometry, rng: np.random.Generator) -> ProblemHandle:
    """
    f(x) = (w/s) ||x - c||_s^s with s = q + nu. Its j-th coordinate derivative is
    w Gamma(s)/Gamma(s-j+1) sign(t)^j |t|^{s-j}, so the q-th one is (w Gamma(s) 2^{1-nu}, nu)-Holder
    coordinate-wise
    """
    if spec.q < 1 or not 0.0 < spec.nu <= 1.0:
        raise ProblemError("pth-power needs q >= 1 and 0 < nu <= 1", q=spec.q, nu=spec.nu)
    s = spec.q + spec.nu
    w = spec.weight
    d = spec.dim
    center = _point_on_sphere(rng, d, geometry, spec.radius) if spec.vector is None else np.asarray(spec.vector)

    def coefficient(order: int) -> float:
        return math.exp(special.gammaln(s) - special.gammaln(s - order + 1.0))

    def coordinate_derivative(order: int, t: np.ndarray) -> np.ndarray:
        magnitude = np.abs(t) ** (s - order)
        signs = np.sign(t) if order % 2 else 1.0
        return w * coefficient(order) * signs * magnitude

    def derivative(order, x, h):
        return coordinate_derivative(order, x - center) * h ** (order - 1)

    def hessian(x):
        return np.diag(coordinate_derivative(2, x - center))

    L = w * coefficient(spec.q) * 2.0 ** (1.0 - spec.nu) * dimension_factor(d, geometry.p, s)
    return ProblemHandle(
        name=str(spec.kind),
        geometry=geometry,
        holder=HolderData(L=L, nu=spec.nu, q=spec.q),
        x0=_default_start(spec, geometry, center),
        value_fn=lambda x: w / s * float(np.sum(np.abs(x - center) ** s)),
        gradient_fn=lambda x: w * signed_power(x - center, s - 1.0),
        hessian_fn=hessian if spec.q >= 2 else None,
        derivative_fn=derivative,
        max_order=spec.q,
        x_star=center,
        f_star=0.0,
    )


def _logistic(spec: ProblemSpec, geometry: Geometry, rng: np.random.Generator) -> ProblemHandle:
    """
    f(x) = mean_i log(1 + exp(-y_i <a_i, x>)) + (reg/2)||x||_2^2 on seeded data. With l(z) = log(1 + e^{-z})
    and s = expit(z): l'' = s(1-s) <= 1/4, l''' = s(1-s)(1-2s) <= 1/(6 sqrt 3) and |l''''| <= 1/8
    """
    _require_nu_one(spec)
    if spec.q not in (1, 2, 3):
        raise ProblemError("logistic supports q in {1, 2, 3}", q=spec.q)
    d, n = spec.dim, min(spec.rows, MAX_ROWS)
    if spec.matrix is not None:
        if spec.vector is None:
            raise ProblemError("logistic data needs labels")
        data = np.asarray(spec.matrix, dtype=float)
        labels = np.asarray(spec.vector, dtype=float)
    else:
        data = rng.standard_normal((n, d)) / math.sqrt(d)
        truth = rng.standard_normal(d)
        labels = np.where(data @ truth + 0.5 * rng.standard_normal(n) >= 0.0, 1.0, -1.0)
    signed = data * labels[:, None]
    reg = spec.reg

    def value(x):
        return float(np.mean(np.logaddexp(0.0, -(signed @ x)))) + 0.5 * reg * float(x @ x)

    def gradient(x):
        return -(signed.T @ special.expit(-(signed @ x))) / signed.shape[0] + reg * x

    def hessian(x):
        s = special.expit(signed @ x)
        return (signed.T * (s * (1.0 - s))) @ signed / signed.shape[0] + reg * np.eye(x.size)

    def derivative(order, x, h):
        s = special.expit(signed @ x)
        proj = signed @ h
        if order == 3:
            # y_i^3 = y_i, so the signed rows carry the label
            return signed.T @ (s * (1.0 - s) * (1.0 - 2.0 * s) * proj ** 2) / signed.shape[0]
        raise ProblemError("logistic derivatives stop at order 3", order=order)

    dual_norms = np.array([dual_pnorm(row, geometry.p) for row in data])
    # the ridge term has a constant Hessian, so only the q = 1 constant sees it
    constants = {
        1: float(np.sum(dual_norms ** 2)) / (4.0 * data.shape[0]) + reg * dimension_factor(d, geometry.p, 2.0),
        2: float(np.mean(dual_norms ** 3)) / (6.0 * math.sqrt(3.0)),
        3: float(np.mean(dual_norms ** 4)) / 8.0,
    }

    def value_grad(x):
        return value(x), gradient(x)

    x_star = _numeric_minimizer(value_grad, hessian, np.zeros(d))
    log.debug("logistic minimizer", rows=data.shape[0], grad_norm=float(np.linalg.norm(gradient(x_star))))
    return ProblemHandle(
        name=str(spec.kind),
        geometry=geometry,
        holder=HolderData(L=constants[spec.q], nu=1.0, q=spec.q),
        x0=_default_start(spec, geometry, x_star),
        value_fn=value,
        gradient_fn=gradient,
        hessian_fn=hessian,
        derivative_fn=derivative,
        max_order=3,
        x_star=x_star,
        f_star=value(x_star),
        flags=("empirical-optimum",),
    )


def _softmax_regression(spec: ProblemSpec, geometry: Geometry, rng: np.random.Generator) -> ProblemHandle:
    """
    f(x) = mu log sum_i (exp((<a_i,x> - b_i)/mu) + exp(-(<a_i,x> - b_i)/mu)), a smoothing of ||Ax - b||_inf.
    Writing B = [A; -A], grad f = B' pi and Hess f = B'(diag pi - pi pi')B / mu with pi the softmax
    of (Bx - c)/mu
    """
    _require_nu_one(spec)
    if spec.q not in (1, 2):
        raise ProblemError("softmax-regression supports q in {1, 2}", q=spec.q)
    d, n, mu = spec.dim, min(spec.rows, MAX_ROWS), spec.smoothing_mu
    if mu <= 0.0:
        raise ProblemError("smoothing parameter must be positive", smoothing_mu=mu)
    if spec.matrix is not None:
        data = np.asarray(spec.matrix, dtype=float)
        target = np.asarray(spec.vector, dtype=float)
    else:
        data = rng.standard_normal((n, d)) / math.sqrt(d)
        target = rng.standard_normal(data.shape[0])
    stacked = np.vstack([data, -data])
    offsets = np.concatenate([target, -target])

    def probabilities(x):
        return special.softmax((stacked @ x - offsets) / mu)

    def value(x):
        return mu * float(special.logsumexp((stacked @ x - offsets) / mu))

    def gradient(x):
        return stacked.T @ probabilities(x)

    def hessian(x):
        pi = probabilities(x)
        weighted = stacked.T * pi
        mean = stacked.T @ pi
        return (weighted @ stacked - np.outer(mean, mean)) / mu

    max_dual = max(dual_pnorm(row, geometry.p) for row in data)
    if spec.q == 1:
        L = max_dual ** 2 / mu
    else:
        L = ((spec.q + 1.0) / math.log(spec.q + 2.0)) ** (spec.q + 1) * math.factorial(spec.q) / mu ** spec.q
        L *= max_dual ** (spec.q + 1)

    def value_grad(x):
        return value(x), gradient(x)

    x_star = _numeric_minimizer(value_grad, hessian, np.zeros(d))
    return ProblemHandle(
        name=str(spec.kind),
        geometry=geometry,
        holder=HolderData(L=L, nu=1.0, q=spec.q),
        x0=_default_start(spec, geometry, x_star),
        value_fn=value,
        gradient_fn=gradient,
        hessian_fn=hessian,
        max_order=2,
        x_star=x_star,
        f_star=value(x_star),
        flags=("empirical-optimum",),
    )


def _huberized_norm(spec: ProblemSpec, geometry: Geometry, rng: np.random.Generator) -> ProblemHandle:
    """ f(x) = sum_i huber_delta(x_i - c_i), a smoothing of ||x - c||_1 with (1/delta)-Lipschitz gradient """
    if spec.q != 1 or spec.nu != 1.0:
        raise ProblemError("huberized-norm supports q = 1, nu = 1 only", q=spec.q, nu=spec.nu)
    delta = spec.huber_delta
    center = _point_on_sphere(rng, spec.dim, geometry, spec.radius) if spec.vector is None else np.asarray(spec.vector)

    def value(x):
        t = np.abs(x - center)
        return float(np.sum(np.where(t <= delta, t ** 2 / (2.0 * delta), t - delta / 2.0)))

    return ProblemHandle(
        name=str(spec.kind),
        geometry=geometry,
        holder=HolderData(L=dimension_factor(spec.dim, geometry.p, 2.0) / delta, nu=1.0, q=1),
        x0=_default_start(spec, geometry, center),
        value_fn=value,
        gradient_fn=lambda x: np.clip((x - center) / delta, -1.0, 1.0),
        max_order=1,
        x_star=center,
        f_star=0.0,
    )


BUILDERS = {
    ProblemKind.QUADRATIC: _quadratic,
    ProblemKind.PTH_POWER: _pth_power,
    ProblemKind.LOGISTIC: _logistic,
    ProblemKind.SOFTMAX_REGRESSION: _softmax_regression,
    ProblemKind.HUBERIZED_NORM: _huberized_norm,
}


def make_problem(spec: ProblemSpec) -> ProblemHandle:
    """
    Builds the ProblemHandle described by `spec`. Randomized data is drawn from the stream derived
    from `spec.seed`, so equal specs give identical problems

    :raises ProblemError: on unsupported (q, nu) pairs or out-of-range sizes
    """
    if not 1 <= spec.dim <= MAX_DIM:
        raise ProblemError("dimension out of range", dim=spec.dim, max_dim=MAX_DIM)
    if spec.radius <= 0.0:
        raise ProblemError("radius must be positive", radius=spec.radius)
    geometry = Geometry.from_p(spec.p)
    kind = spec.kind if isinstance(spec.kind, ProblemKind) else ProblemKind.parse(spec.kind)
    rng = derive_rng(spec.seed, 0, list(ProblemKind).index(kind))
    handle = BUILDERS[kind](spec._replace(kind=kind), geometry, rng)
    log.debug("built problem", problem=handle.name, dim=handle.dim, p=str(geometry), q=spec.q, L=handle.holder.L)
    return handle
