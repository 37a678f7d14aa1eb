"""
The unaccelerated proximal point method x_{k+1} = prox(x_k) in three regimes: ball oracle steps
(linear convergence), exact quadratic prox steps (rate 1/T) and high-order power prox steps
(rate 1/T^{q+nu-1}). Iterates may be clamped to the ball B_p(x0, 2R)
"""
import enum
import math
from typing import List, NamedTuple, Optional

import numpy as np

from lpprox.errors import OracleError, SolverError
from lpprox.geometry import BallConstraint, powered_norm_subgradient, prox_minimize
from lpprox.logger import logger
from lpprox.oracle import BOUNDARY_TOL, BallOracle, ExactOracle, TaylorOracle

from .audit import DEFAULT_GAP_TOL, GapAudit, GapReport, choose_comparator
from .trace import IterationRecord, RunTrace

log = logger.with_namespace("unaccel")

# exact prox steps in l1 / l-inf geometry come from SLSQP, which is less accurate than L-BFGS
NONSMOOTH_ORACLE_TOL = 1e-6


class UnaccelMode(enum.Enum):
    BALL = "ball"
    SMOOTH = "smooth"
    POWER = "power"

    def __str__(self):
        return self.value


def power_constant(q_hat: float) -> float:
    """ K = (4(q_hat - 1))^{q_hat - 1} / q_hat^{q_hat} """
    return (4.0 * (q_hat - 1.0)) ** (q_hat - 1.0) / q_hat ** q_hat


class _Step(NamedTuple):
    y: np.ndarray
    lam: float
    witness: np.ndarray
    at_optimum: bool


class _Stepper:
    """ Produces x_{k+1} from x_k for one mode, re-solving inside the clamp ball when needed """

    def __init__(self, problem, mode: UnaccelMode, R: float, c: Optional[float], rho: Optional[float], sigma, clamp, hook):
        self.problem = problem
        self.geometry = problem.geometry
        self.mode = mode
        self.domain = BallConstraint(problem.x0, 2.0 * R, problem.geometry) if clamp else None
        tol = None if problem.geometry.is_smooth else NONSMOOTH_ORACLE_TOL
        if mode is UnaccelMode.SMOOTH:
            self.c = float(c) if c is not None else max(problem.holder.L, 1e-12)
            self.power = 2.0
            self.oracle = ExactOracle(problem, 1.0 / self.c, r=2.0, tol=tol)
        elif mode is UnaccelMode.POWER:
            lam_hat = None if c is None else 1.0 / float(c)
            self.oracle = TaylorOracle(problem, r=2.0, sigma=sigma, lam_hat=lam_hat, tol=tol)
            self.c = 1.0 / self.oracle.lam_hat
            self.power = self.oracle.exponent
        else:
            if rho is None or not 0.0 < rho < 4.0 * R:
                raise ValueError("ball mode needs a radius 0 < rho < 4R")
            self.c = float(rho)
            self.power = 2.0
            if hook is None and self.domain is not None:
                domain = self.domain

                def hook(problem, constraint):
                    return prox_minimize(
                        problem.value_grad, constraint.center, math.inf, 2.0, problem.geometry, constraint=[constraint, domain]
                    ).point

            # a minimizer on the clamp boundary carries a normal-cone component the audit cannot see
            self.oracle = BallOracle(problem, rho, r=2.0, sigma=sigma, hook=hook, certify=self.domain is None, tol=tol)

    def step(self, x: np.ndarray) -> _Step:
        answer = self.oracle.query(x)
        if answer.at_optimum or self.mode is UnaccelMode.BALL:
            return _Step(answer.y, answer.lam, answer.v_hat, answer.at_optimum)
        if self.domain is None or self.domain.contains(answer.y):
            return _Step(answer.y, answer.lam, answer.v_hat, False)

        lam_power = 1.0 / self.c
        solution = prox_minimize(self.problem.value_grad, x, lam_power, self.power, self.geometry, constraint=self.domain)
        y = solution.point
        dist = self.geometry.norm(y - x)
        lam = lam_power * dist ** (2.0 - self.power) if dist > 0 else math.inf
        witness = -powered_norm_subgradient(x, y, 2.0, lam, self.geometry, align=-self.problem.gradient(y))
        return _Step(y, lam, witness, False)


def unaccel_run(
    problem,
    mode: UnaccelMode,
    T: int,
    R: float,
    c: Optional[float] = None,
    rho: Optional[float] = None,
    sigma: float = 0.25,
    clamp: bool = True,
    hook=None,
) -> RunTrace:
    """
    Runs T prox steps from x_1 = x0. The weights a_k that enter the certificates are k + 1 in smooth
    mode, (k + 1)^{q+nu-1} in power mode and, in ball mode, a_1 = 1 and a_k = A_{k-1}/(4R/||x_k - x_{k+1}|| - 1),
    which needs the prox step before a_k is fixed

    :param mode: the regime
    :param R: an upper bound on ||x_k - x*||
    :param c: the prox weight (1/lam in smooth mode, 1/lam_hat in power mode); defaults follow the problem
    :param rho: the ball oracle radius, required in ball mode
    """
    if T < 0:
        raise ValueError("iteration budget must be non-negative")
    if not R > 0.0:
        raise ValueError("domain radius must be positive")
    stepper = _Stepper(problem, mode, R, c, rho, sigma, clamp, hook)
    trace = RunTrace(
        "unaccel",
        problem.geometry,
        stepper.power,
        problem.x0,
        params={"mode": str(mode), "c": stepper.c, "R": R, "clamp": clamp},
    )
    run_log = log.with_context(problem=problem.name, mode=str(mode))
    run_log.info("starting run", T=T, c=stepper.c, R=R)

    x = np.asarray(problem.x0, dtype=float)
    A = 0.0
    for k in range(1, T + 1):
        try:
            step = stepper.step(x)
        except (OracleError, SolverError) as e:
            run_log.warn("run truncated", k=k, error=str(e))
            trace.truncate(e)
            break
        move = problem.geometry.norm(step.y - x)
        if mode is UnaccelMode.BALL and not step.at_optimum and move < stepper.c * (1.0 - BOUNDARY_TOL):
            error = SolverError("ball step moved less than its radius without reaching a minimizer", k=k, move=move)
            run_log.warn("run truncated", k=k, error=str(error))
            trace.truncate(error)
            break
        if step.at_optimum:
            trace.append(IterationRecord(k, 0.0, A, step.lam, x, step.y, None, step.y, step.witness, 0.0, move))
            trace.mark_optimal()
            run_log.info("reached a minimizer", k=k)
            break
        if mode is UnaccelMode.SMOOTH:
            a = k + 1.0
        elif mode is UnaccelMode.POWER:
            a = (k + 1.0) ** (stepper.power - 1.0)
        else:
            a = 1.0 if k == 1 else A / (4.0 * R / move - 1.0)
        A += a
        trace.append(IterationRecord(k, a, A, step.lam, x, step.y, None, step.y, step.witness, 0.0, move))
        run_log.debug("step", k=k, a=a, move=move)
        x = step.y

    run_log.info("run finished", status=str(trace.status), T=trace.T)
    return trace


def unaccel_bound(trace: RunTrace) -> float:
    """
    The certified bound on f(x_{T+1}) - f*: 4cR^2/(T+2) in smooth mode and
    (1/A_T) sum_k c K R^{q_hat} a_k^{q_hat}/A_k^{q_hat-1} in power mode. Ball mode certifies growth instead
    """
    mode = UnaccelMode(trace.params["mode"])
    c, R = trace.params["c"], trace.params["R"]
    records = [rec for rec in trace.records if rec.a > 0.0]
    if mode is UnaccelMode.SMOOTH:
        return 4.0 * c * R ** 2 / (len(records) + 2.0)
    if mode is UnaccelMode.POWER and records:
        q_hat = trace.r
        K = power_constant(q_hat)
        total = sum(c * K * R ** q_hat * rec.a ** q_hat / rec.A ** (q_hat - 1.0) for rec in records)
        return total / records[-1].A
    return math.nan


class BallGrowth(NamedTuple):
    """
    Per-step A_k/A_{k-1} >= 1/(1 - move_k/(4R)) and A_k >= A_1 exp((k-1) rho_min/(4R)), where
    rho_min = rho (1 - BOUNDARY_TOL) is the shortest move a ball step is accepted with
    """

    step_ratios_hold: bool
    exponential_holds: bool
    min_exponential_margin: float


def ball_growth(trace: RunTrace, tol: float = 1e-9) -> BallGrowth:
    R, rho = trace.params["R"], trace.params["c"]
    rho_min = rho * (1.0 - BOUNDARY_TOL)
    records = [rec for rec in trace.records if rec.a > 0.0]
    step_ok = True
    margins: List[float] = []
    for prev, rec in zip(records, records[1:]):
        required = 1.0 / (1.0 - rec.move_norm / (4.0 * R))
        step_ok = step_ok and rec.A / prev.A >= required * (1.0 - tol)
    if records:
        A1 = records[0].A
        for i, rec in enumerate(records):
            margins.append(rec.A / (A1 * math.exp(i * rho_min / (4.0 * R))) - 1.0)
    worst = min(margins, default=0.0)
    return BallGrowth(step_ok, worst >= -tol, worst)


def power_stationarity_residual(trace: RunTrace) -> float:
    """ max_k |c lam_k ||x_{k+1} - x_k||^{q_hat-2} - 1| over power-mode steps """
    c = trace.params["c"]
    worst = 0.0
    for rec in trace.records:
        if rec.a > 0.0 and rec.move_norm > 0.0:
            worst = max(worst, abs(c * rec.lam * rec.move_norm ** (trace.r - 2.0) - 1.0))
    return worst


def audit_unaccel(trace: RunTrace, problem, R: float, u=None, tol: float = DEFAULT_GAP_TOL) -> GapReport:
    """
    Audits the smooth-mode gap with M_i(x_i) = f(x_{i+1}) + ||x_i - x_{i+1}||^2/(2 lam_i) and g_i the prox
    witness: U_k = M_{k+1}(x_{k+1}), A_k L_k = sum_i a_i (M_i(x_i) + <g_i, u - x_i>) and
    A_k G_k - A_{k-1} G_{k-1} <= a_k^2 c R^2 / A_k for k < T. R is raised to max_k ||x_k - u|| when the
    iterates leave the supplied radius
    """
    if UnaccelMode(trace.params["mode"]) is not UnaccelMode.SMOOTH:
        raise ValueError("the unaccelerated gap audit covers smooth mode")
    u, label = choose_comparator(trace, problem, u)
    f_u = problem.value(u)
    c = trace.params["c"]
    records = [rec for rec in trace.records if rec.a > 0.0]
    radius = max([R] + [problem.geometry.norm(rec.x - u) for rec in records])

    def envelope(rec) -> float:
        return problem.value(rec.y) - f_u + rec.move_norm ** 2 / (2.0 * rec.lam)

    audits: List[GapAudit] = []
    AL = 0.0
    magnitude = 0.0
    AG_prev = 0.0
    for rec, following in zip(records, records[1:]):
        m = envelope(rec)
        inner = float(np.dot(rec.v, u - rec.x))
        AL += rec.a * (m + inner)
        magnitude += rec.a * (abs(m) + abs(inner))
        U = envelope(following)
        AG = rec.A * U - AL
        audits.append(
            GapAudit(
                k=rec.k,
                U=U + f_u,
                L=AL / rec.A + f_u,
                AG=AG,
                drop=AG - AG_prev,
                bound=rec.a ** 2 * c * radius ** 2 / rec.A,
                tol=tol * max(1.0, magnitude + rec.A * abs(U)),
            )
        )
        AG_prev = AG
    return GapReport(audits, label, f_u, 0.0)
