"""
Rate-optimal minimization of q-th order (L, nu)-Holder smooth convex functions in l_p. With
q_hat = q + nu and m = max(2, p), small orders (q_hat <= m) run the accelerated method against a
constant-lam Taylor oracle, weakening the regularizer to power q_hat when needed; large orders run the
adaptive method with r = m against the Taylor oracle's movement-dependent lam. Both reach
f(y_T) - f* = O(T^{-((m+1) q_hat - m)/m})
"""
import math
from typing import Optional

from lpprox.errors import GeometryError
from lpprox.geometry import (
    Regularizer,
    RegularizerKind,
    default_regularizer,
    inexact_from_uniform,
    optimal_inexact_parameter,
)
from lpprox.logger import logger
from lpprox.oracle import TaylorOracle

from .accel import DEFAULT_SIGMA, accel_run
from .adaptive import DEFAULT_ALPHA, YMode, adaptive_run
from .trace import RunTrace

# doublings of the estimated distance to the minimizer before the last estimate is accepted
MAX_RADIUS_DOUBLINGS = 20

log = logger.with_namespace("highorder")


def theoretical_exponent(p: float, q: int, nu: float = 1.0) -> float:
    """
    The exponent e of the T^{-e} rate: ((m+1)(q+nu) - m)/m for finite p, and q + nu - 1 for p = inf where
    only the unaccelerated method applies
    """
    if math.isinf(p):
        return q + nu - 1.0
    m = max(2.0, p)
    return ((m + 1.0) * (q + nu) - m) / m


def ball_iteration_bound(R: float, rho: float, r: float, eps: float) -> float:
    """ (R/rho)^{r/(r+1)} log(1/eps), the ball oracle iteration count up to its constant """
    if not (R > 0.0 and rho > 0.0 and 0.0 < eps < 1.0):
        raise ValueError("need R, rho > 0 and 0 < eps < 1")
    return (R / rho) ** (r / (r + 1.0)) * math.log(1.0 / eps)


def regularizer_divergence(psi: Regularizer, R: float) -> float:
    """ The largest D_psi(u, x0) over ||u - x0||_p <= R """
    p = psi.geometry.p
    if psi.base_kind is RegularizerKind.POWER_P:
        return R ** p / p
    return R ** 2 / (2.0 * (p - 1.0))


def accel_solve(
    problem,
    T: int,
    R: float,
    sigma: float = DEFAULT_SIGMA,
    sigma_prime: float = DEFAULT_SIGMA,
    certify: bool = True,
) -> RunTrace:
    """
    The accelerated method with the constant-lam Taylor oracle (r = q_hat). When q_hat < m the default
    regularizer is weakened to a delta-inexact power-q_hat one, tuned for D_psi(u, x0) up to radius R
    """
    oracle = TaylorOracle(problem, sigma=sigma, certify=certify)
    psi = default_regularizer(problem.geometry, problem.x0)
    a = None
    if oracle.exponent < psi.r:
        a = optimal_inexact_parameter(regularizer_divergence(psi, R), psi.mu, psi.r, oracle.exponent, T)
        psi = inexact_from_uniform(psi, oracle.exponent, a)
    trace = accel_run(problem, psi, oracle, T, sigma=sigma, sigma_prime=sigma_prime)
    trace.params.update({"branch": "accel", "R": R, "inexact_a": a})
    return trace


def adaptive_solve(
    problem,
    T: int,
    sigma: float = DEFAULT_SIGMA,
    sigma_prime: float = DEFAULT_SIGMA,
    alpha: float = DEFAULT_ALPHA,
    lam_hat0: Optional[float] = None,
    y_mode: YMode = YMode.ARGMIN,
    certify: bool = True,
) -> RunTrace:
    """ The adaptive method with r = m and the Taylor oracle's movement-dependent lam """
    psi = default_regularizer(problem.geometry, problem.x0)
    oracle = TaylorOracle(problem, r=psi.r, sigma=sigma, certify=certify)
    trace = adaptive_run(
        problem, psi, oracle, T, lam_hat0=lam_hat0, alpha=alpha, y_mode=y_mode, sigma=sigma, sigma_prime=sigma_prime
    )
    trace.params["branch"] = "adaptive"
    return trace


def _farthest(trace: RunTrace) -> float:
    return max((trace.geometry.norm(rec.y - trace.x0) for rec in trace.records), default=0.0)


def highorder_solve(
    problem,
    T: int,
    R: Optional[float] = None,
    sigma: float = DEFAULT_SIGMA,
    sigma_prime: float = DEFAULT_SIGMA,
    alpha: float = DEFAULT_ALPHA,
    lam_hat0: Optional[float] = None,
    y_mode: YMode = YMode.ARGMIN,
    certify: bool = True,
) -> RunTrace:
    """
    Runs the method matching the problem's smoothness for T iterations. The trace's params record the
    branch taken and the theoretical rate exponent

    :param problem: a ProblemHandle with Holder data (L, nu, q) and 1 < p < inf
    :param R: a bound on ||x* - x0||_p; only the accelerated branch uses it. Without it the known minimizer
              is used, and failing that the bound is found by doubling until the iterates stay inside it
    :param certify: audit every oracle answer; off for functions that are not globally smooth
    """
    geometry = problem.geometry
    if not geometry.is_smooth:
        raise GeometryError("the high-order solver needs 1 < p < inf; remap p = 1 or use the unaccelerated method", p=geometry.p)
    holder = problem.holder
    q_hat = holder.q + holder.nu
    exponent = theoretical_exponent(geometry.p, holder.q, holder.nu)
    run_log = log.with_context(problem=problem.name, q_hat=q_hat, m=geometry.m)

    if q_hat > geometry.m:
        run_log.info("dispatching to the adaptive method", exponent=exponent)
        trace = adaptive_solve(problem, T, sigma, sigma_prime, alpha, lam_hat0, y_mode, certify)
        trace.params["exponent"] = exponent
        return trace

    run_log.info("dispatching to the accelerated method", exponent=exponent)
    flags = []
    if R is None and problem.x_star is not None:
        R = max(geometry.norm(problem.x_star - problem.x0), 1e-12)
    if R is not None:
        trace = accel_solve(problem, T, R, sigma, sigma_prime, certify)
    else:
        # the bound only tunes the inexact regularizer, so a loose estimate costs a constant factor
        R = 1.0
        for _ in range(MAX_RADIUS_DOUBLINGS):
            trace = accel_solve(problem, T, R, sigma, sigma_prime, certify)
            if _farthest(trace) <= R:
                break
            R = max(2.0 * R, _farthest(trace))
            run_log.debug("radius estimate grown", R=R)
        flags.append("estimated-radius")
    trace.params.update({"exponent": exponent, "flags": ",".join(flags)})
    return trace
