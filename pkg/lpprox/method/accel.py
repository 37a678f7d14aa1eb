"""
The accelerated non-Euclidean inexact proximal point method: dual averaging over a (possibly
delta-inexact) uniformly convex regularizer, driven by a fixed-lam proximal oracle
"""
import math
from typing import NamedTuple, Optional

import numpy as np

from lpprox.errors import OracleError, SolverError
from lpprox.geometry import Regularizer, dual_exponent
from lpprox.logger import logger
from lpprox.subproblem import StepEquation, solve_step, solve_zstep

from .trace import IterationRecord, RunTrace

DEFAULT_SIGMA = 0.25
STEP_CERTIFICATE_TOL = 1e-8

log = logger.with_namespace("accel")


def accel_constant(mu: float, r: float, sigma: float, sigma_prime: float) -> float:
    """ C = (mu/2) (r* (1 - sigma - sigma') / (1 + sigma^{r*}))^{r-1} """
    r_star = dual_exponent(r)
    return mu / 2.0 * (r_star * (1.0 - sigma - sigma_prime) / (1.0 + sigma ** r_star)) ** (r - 1.0)


class AccelState(NamedTuple):
    """ The method's state between iterations """

    k: int
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    a: float
    A: float
    g_sum: np.ndarray
    C: float


def check_oracle_tolerances(oracle, sigma: float, sigma_prime: float):
    """ The constant C is only valid for oracles at least as accurate as (sigma, sigma') """
    if oracle.sigma > sigma or oracle.sigma_prime > sigma_prime:
        raise ValueError(
            "oracle tolerances ({}, {}) exceed the method's ({}, {})".format(
                oracle.sigma, oracle.sigma_prime, sigma, sigma_prime
            )
        )
    if not (0.0 <= sigma < 0.5 and 0.0 <= sigma_prime < 0.5):
        raise ValueError("sigma and sigma' must lie in [0, 1/2)")


def accel_run(
    problem,
    psi: Regularizer,
    oracle,
    T: int,
    sigma: float = DEFAULT_SIGMA,
    sigma_prime: float = DEFAULT_SIGMA,
) -> RunTrace:
    """
    Runs T iterations from x0 = psi.center. Each iteration solves a_k^r = C A_k^{r-1} lam for the
    oracle's fixed lam, queries the oracle at x_k = (A_{k-1}/A_k) y_{k-1} + (a_k/A_k) z_{k-1} and takes
    the dual averaging step z_k = argmin_z sum_i a_i <v_i, z> + D_psi(z, x0). Oracle or solver failures
    truncate the trace instead of raising

    :param problem: the ProblemHandle (only used for logging; the oracle owns f)
    :param psi: the regularizer, whose power r must match the oracle's
    :param oracle: a ProxOracle with fixed_lam set
    :param T: the iteration budget
    """
    if T < 0:
        raise ValueError("iteration budget must be non-negative")
    lam = oracle.fixed_lam
    if lam is None:
        raise ValueError("the accelerated method needs an oracle with a fixed proximal parameter")
    if abs(psi.r - oracle.r) > 1e-12:
        raise ValueError("regularizer power {} does not match the oracle's {}".format(psi.r, oracle.r))
    check_oracle_tolerances(oracle, sigma, sigma_prime)

    r = psi.r
    C = accel_constant(psi.mu, r, sigma, sigma_prime)
    x0 = np.asarray(psi.center, dtype=float)
    trace = RunTrace(
        "accel",
        psi.geometry,
        r,
        x0,
        C=C,
        sigma=sigma,
        sigma_prime=sigma_prime,
        delta=psi.delta,
        psi=psi,
        params={"oracle": oracle.name, "lam": lam, "regularizer": str(psi.kind)},
    )
    state = AccelState(0, x0, x0, x0, 0.0, 0.0, np.zeros_like(x0), C)
    run_log = log.with_context(problem=problem.name, r=r)
    run_log.info("starting run", T=T, C=C, lam=lam, delta=psi.delta)

    for k in range(1, T + 1):
        a = solve_step(StepEquation(r, C, state.A, lam))
        A = state.A + a
        x = (state.A / A) * state.y + (a / A) * state.z
        try:
            answer = oracle.query(x)
            if answer.at_optimum:
                trace.append(
                    IterationRecord(k, 0.0, state.A, answer.lam, x, answer.y, state.z, answer.y, answer.v, 0.0, 0.0)
                )
                trace.mark_optimal()
                run_log.info("oracle reached a stationary point", k=k)
                break
            g_sum = state.g_sum + a * answer.v
            z = solve_zstep(psi, g_sum)
        except (OracleError, SolverError) as e:
            run_log.warn("run truncated", k=k, error=str(e))
            trace.truncate(e)
            break

        move_norm = psi.geometry.norm(answer.y - x)
        trace.append(IterationRecord(k, a, A, answer.lam, x, answer.y, z, answer.y, answer.v, answer.eps, move_norm))
        state = AccelState(k, x, answer.y, z, a, A, g_sum, C)
        run_log.debug("step", k=k, a=a, A=A, move=move_norm)

    run_log.info("run finished", status=str(trace.status), T=trace.T, A=trace.A)
    return trace


class AccelBound(NamedTuple):
    """ The two certified upper bounds on f(y_T) - f(u) """

    divergence: float
    delta_total: float
    a_form: float
    lam_form: float


def accel_bound(trace: RunTrace, divergence: float) -> AccelBound:
    """
    Returns (D + delta T)/A_T and r^r (D + delta T)/(C (sum_k lam_k^{1/r})^r) for D = D_psi(u, x0). The
    second is the looser of the two since A_T^{1/r} >= C^{1/r} sum_k lam_k^{1/r} / r
    """
    steps = sum(1 for rec in trace.records if rec.a > 0.0)
    numerator = divergence + trace.delta * steps
    if trace.A <= 0.0:
        return AccelBound(divergence, trace.delta * steps, math.inf, math.inf)
    root_sum = trace.lam_root_sum()
    lam_form = trace.r ** trace.r * numerator / (trace.C * root_sum ** trace.r) if root_sum > 0 else math.inf
    return AccelBound(divergence, trace.delta * steps, numerator / trace.A, lam_form)


def step_certificate_margins(trace: RunTrace, lam_field: str = "lam") -> np.ndarray:
    """
    A_k^{1/r} - A_{k-1}^{1/r} - (1/r)(C lam_k)^{1/r} for every iteration with a_k > 0 and a_k = a_hat_k,
    which the step equation keeps non-negative up to solver tolerance
    """
    margins = []
    A_prev = 0.0
    for rec in trace.records:
        lam = getattr(rec, lam_field)
        if rec.a > 0.0 and math.isfinite(lam) and rec.gamma >= 1.0:
            margins.append(rec.A ** (1.0 / trace.r) - A_prev ** (1.0 / trace.r) - (trace.C * lam) ** (1.0 / trace.r) / trace.r)
        A_prev = rec.A
    return np.array(margins)
