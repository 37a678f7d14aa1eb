"""
The adaptive accelerated proximal point method. The method guesses lam_hat_k, the oracle reports the
lam_k it actually delivered, and the step is damped by gamma_k = min(lam_k/lam_hat_k, 1). The guess is
multiplied by alpha after an up iterate (lam_hat_k <= lam_k) and divided by it otherwise
"""
import enum
import math
from typing import NamedTuple, Optional

import numpy as np

from lpprox.errors import GeometryError, OracleError, SolverError
from lpprox.geometry import Regularizer, dual_exponent
from lpprox.logger import logger
from lpprox.subproblem import StepEquation, solve_step, solve_zstep

from .accel import DEFAULT_SIGMA, check_oracle_tolerances
from .trace import IterationRecord, RunTrace

DEFAULT_ALPHA = 2.0

log = logger.with_namespace("adaptive")


class YMode(enum.Enum):
    """ How y_k is formed from y_{k-1} and the oracle's answer """

    ARGMIN = "argmin"
    COMBINATION = "combination"

    def __str__(self):
        return self.value


def adaptive_constant(mu: float, r: float, sigma: float, sigma_prime: float) -> float:
    """ C = (mu/2) (r* (1 - sigma - sigma') / (2 (1 + sigma^{r*})))^{r-1} """
    r_star = dual_exponent(r)
    return mu / 2.0 * (r_star * (1.0 - sigma - sigma_prime) / (2.0 * (1.0 + sigma ** r_star))) ** (r - 1.0)


class AdaptiveState(NamedTuple):
    k: int
    y: np.ndarray
    z: np.ndarray
    A: float
    g_sum: np.ndarray
    lam_hat: float
    f_y: Optional[float]


def adaptive_run(
    problem,
    psi: Regularizer,
    oracle,
    T: int,
    lam_hat0: Optional[float] = None,
    alpha: float = DEFAULT_ALPHA,
    y_mode: YMode = YMode.ARGMIN,
    sigma: float = DEFAULT_SIGMA,
    sigma_prime: float = DEFAULT_SIGMA,
) -> RunTrace:
    """
    Runs T iterations from x0 = psi.center. One bootstrap query at x0 with the guess lam_hat0 fixes
    lam_hat_1 = lam_1; since x_1 = x0 that answer is reused as the first iteration's. In COMBINATION
    mode y_k = ((1-gamma)A_{k-1}/A_k) y_{k-1} + (gamma A_hat_k/A_k) y_tilde_k and no function value is
    ever requested; in ARGMIN mode y_k is the better of y_{k-1} and y_tilde_k

    :param psi: an exactly uniformly convex regularizer (delta = 0) with the oracle's power r
    :param oracle: a ProxOracle; it may ignore the guess it is given
    :param lam_hat0: the bootstrap guess, defaulting to the oracle's fixed lam or 1
    :param alpha: the guess adjustment factor, alpha > 1
    """
    if T < 0:
        raise ValueError("iteration budget must be non-negative")
    if alpha <= 1.0:
        raise ValueError("adjustment factor alpha must exceed 1")
    if psi.delta != 0.0:
        raise GeometryError("the adaptive method needs an exactly uniformly convex regularizer", delta=psi.delta)
    if abs(psi.r - oracle.r) > 1e-12:
        raise ValueError("regularizer power {} does not match the oracle's {}".format(psi.r, oracle.r))
    check_oracle_tolerances(oracle, sigma, sigma_prime)

    r = psi.r
    C = adaptive_constant(psi.mu, r, sigma, sigma_prime)
    x0 = np.asarray(psi.center, dtype=float)
    if lam_hat0 is None:
        lam_hat0 = oracle.fixed_lam if oracle.fixed_lam is not None else 1.0
    trace = RunTrace(
        "adaptive",
        psi.geometry,
        r,
        x0,
        C=C,
        sigma=sigma,
        sigma_prime=sigma_prime,
        psi=psi,
        alpha=alpha,
        params={"oracle": oracle.name, "y_mode": str(y_mode), "lam_hat0": lam_hat0},
    )
    run_log = log.with_context(problem=problem.name, r=r)
    run_log.info("starting run", T=T, C=C, alpha=alpha, y_mode=str(y_mode))
    if T == 0:
        return trace

    try:
        bootstrap = oracle.query(x0, lam_hat0)
    except (OracleError, SolverError) as e:
        run_log.warn("bootstrap query failed", error=str(e))
        trace.truncate(e)
        return trace
    if bootstrap.at_optimum:
        trace.append(IterationRecord(1, 0.0, 0.0, bootstrap.lam, x0, bootstrap.y, x0, bootstrap.y, bootstrap.v, 0.0, 0.0))
        trace.mark_optimal()
        return trace

    needs_values = y_mode is YMode.ARGMIN
    state = AdaptiveState(0, x0, x0, 0.0, np.zeros_like(x0), bootstrap.lam, problem.value(x0) if needs_values else None)
    for k in range(1, T + 1):
        lam_hat = state.lam_hat
        a_hat = solve_step(StepEquation(r, C, state.A, lam_hat))
        A_hat = state.A + a_hat
        x = (state.A / A_hat) * state.y + (a_hat / A_hat) * state.z
        try:
            answer = bootstrap if k == 1 else oracle.query(x, lam_hat)
            if answer.at_optimum:
                f_y = problem.value(answer.y) if needs_values else None
                trace.append(
                    IterationRecord(
                        k, 0.0, state.A, answer.lam, x, answer.y, state.z, answer.y, answer.v, 0.0, 0.0,
                        lam_hat=lam_hat, gamma=0.0, a_hat=a_hat, A_hat=A_hat, f_y=f_y,
                    )
                )
                trace.mark_optimal()
                run_log.info("oracle reached a stationary point", k=k)
                break
            gamma = min(answer.lam / lam_hat, 1.0)
            a = gamma * a_hat
            A = state.A + a
            g_sum = state.g_sum + a * answer.v
            z = solve_zstep(psi, g_sum)
        except (OracleError, SolverError) as e:
            run_log.warn("run truncated", k=k, error=str(e))
            trace.truncate(e)
            break

        if needs_values:
            f_tilde = problem.value(answer.y)
            y, f_y = (answer.y, f_tilde) if f_tilde <= state.f_y else (state.y, state.f_y)
        else:
            y = ((1.0 - gamma) * state.A / A) * state.y + (gamma * A_hat / A) * answer.y
            f_y = None
        up = lam_hat <= answer.lam
        move_norm = psi.geometry.norm(answer.y - x)
        trace.append(
            IterationRecord(
                k, a, A, answer.lam, x, y, z, answer.y, answer.v, answer.eps, move_norm,
                lam_hat=lam_hat, gamma=gamma, a_hat=a_hat, A_hat=A_hat, up=up, f_y=f_y,
            )
        )
        next_lam_hat = lam_hat * alpha if up else lam_hat / alpha
        run_log.debug("step", k=k, gamma=gamma, lam=answer.lam, lam_hat=lam_hat, up=up)
        state = AdaptiveState(k, y, z, A, g_sum, next_lam_hat, f_y)

    run_log.info("run finished", status=str(trace.status), T=trace.T, A=trace.A)
    return trace


class MovementCertificate(NamedTuple):
    """ sum_k A_hat_k ||y_tilde_k - x_k||^r (1 - sigma - sigma') / (2 max(lam_hat_k, lam_k)) <= D_psi(u, x0) """

    total: float
    divergence: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.total <= self.divergence + self.tol


def movement_certificate(trace: RunTrace, divergence: float, tol: float = 1e-8) -> MovementCertificate:
    total = 0.0
    for rec in trace.records:
        if rec.a > 0.0 and math.isfinite(rec.lam):
            weight = (1.0 - trace.sigma - trace.sigma_prime) / (2.0 * max(rec.lam_hat, rec.lam))
            total += rec.A_hat * rec.move_norm ** trace.r * weight
    return MovementCertificate(total, divergence, tol * max(1.0, divergence))
