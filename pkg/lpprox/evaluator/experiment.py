"""
One configured run end to end: build the problem, dispatch to a method, audit the certificates that
method carries and render the trace CSV and summary. Independent runs can be fanned out over a process pool
"""
import json
import math
import os
import time
from concurrent import futures
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from lpprox.config import BenchConfig, format_exponent
from lpprox.errors import ConfigError
from lpprox.logger import logger
from lpprox.method import (
    RunStatus,
    RunTrace,
    UnaccelMode,
    YMode,
    accel_bound,
    accel_solve,
    adaptive_solve,
    audit_gap,
    audit_unaccel,
    ball_growth,
    certify_growth,
    highorder_solve,
    movement_certificate,
    power_stationarity_residual,
    theoretical_exponent,
    trace_csv,
    unaccel_bound,
    unaccel_run,
)
from lpprox.problem import ProblemHandle, ProblemKind, ProblemSpec, make_problem
from lpprox.util import atomic_write_text

from .rate import MIN_ROWS, RateFit, fit_rate

log = logger.with_namespace("experiment")

BOUND_REL_TOL = 1e-6
STATIONARITY_TOL = 1e-8


def effective_exponent(config: BenchConfig) -> float:
    """ The geometry a run uses: method auto replaces p = 1 by 1 + 1/ln d, whose norm is within a constant of l1 """
    if config.method == "auto" and config.p == 1.0:
        if config.dim < 2:
            raise ConfigError("remapping p = 1 needs dim >= 2", dim=config.dim)
        return 1.0 + 1.0 / math.log(config.dim)
    return config.p


def build_problem(config: BenchConfig, p: Optional[float] = None) -> ProblemHandle:
    spec = ProblemSpec(
        kind=ProblemKind.parse(config.problem),
        dim=config.dim,
        p=config.p if p is None else p,
        q=config.q,
        nu=config.nu,
        seed=config.seed,
        radius=config.radius,
        rows=config.rows,
        smoothing_mu=config.smoothing_mu,
    )
    return make_problem(spec)


def domain_radius(problem: ProblemHandle, config: BenchConfig) -> float:
    """ ||x* - x0|| when the minimizer is known, else the configured radius """
    distance = problem.distance_to_optimum()
    return distance if distance else config.radius


def unaccel_mode(config: BenchConfig) -> UnaccelMode:
    if config.ball_radius is not None:
        return UnaccelMode.BALL
    if config.method == "unaccel" and abs(config.q + config.nu - 2.0) < 1e-12:
        return UnaccelMode.SMOOTH
    return UnaccelMode.POWER


def dispatch(config: BenchConfig, problem: ProblemHandle) -> RunTrace:
    """ Runs the configured method on `problem` and tags the trace with its branch and exponent """
    y_mode = YMode(config.y_mode)
    if config.method == "accel":
        trace = accel_solve(problem, config.T, domain_radius(problem, config), config.sigma, config.sigma_prime)
        trace.params["exponent"] = theoretical_exponent(problem.geometry.p, config.q, config.nu)
        return trace
    if config.method == "adaptive":
        trace = adaptive_solve(
            problem, config.T, config.sigma, config.sigma_prime, config.alpha, config.lam_hat0, y_mode
        )
        trace.params["exponent"] = theoretical_exponent(problem.geometry.p, config.q, config.nu)
        return trace
    if config.method == "unaccel" or not problem.geometry.is_smooth:
        mode = unaccel_mode(config)
        trace = unaccel_run(
            problem, mode, config.T, domain_radius(problem, config), rho=config.ball_radius, sigma=config.sigma
        )
        trace.params["branch"] = "unaccel-{}".format(mode)
        trace.params["exponent"] = {UnaccelMode.SMOOTH: 1.0, UnaccelMode.POWER: trace.r - 1.0}.get(mode)
        return trace
    return highorder_solve(
        problem,
        config.T,
        sigma=config.sigma,
        sigma_prime=config.sigma_prime,
        alpha=config.alpha,
        lam_hat0=config.lam_hat0,
        y_mode=y_mode,
    )


class Certification(NamedTuple):
    """ Named pass/fail checks, the bounds they rest on and the per-row audited drop and allowance columns """

    checks: Dict[str, bool]
    bounds: Dict[str, float]
    drops: Optional[List[Optional[float]]]
    allowances: Optional[List[Optional[float]]]


def _by_k(trace: RunTrace, audits) -> Tuple[List[Optional[float]], List[Optional[float]]]:
    drops = {audit.k: audit.drop for audit in audits}
    bounds = {audit.k: audit.bound for audit in audits}
    return [drops.get(rec.k) for rec in trace.records], [bounds.get(rec.k) for rec in trace.records]


def certify(trace: RunTrace, problem: ProblemHandle) -> Certification:
    """ Audits every certificate the run's method carries """
    checks = {"run_completed": trace.status is not RunStatus.TRUNCATED}
    bounds: Dict[str, float] = {}
    drops = allowances = None
    final_gap = problem.gap(trace.final_y)

    if trace.method in ("accel", "adaptive"):
        report = audit_gap(trace, problem)
        checks["gap_audit"] = report.passed
        bounds["divergence"] = report.divergence
        bounds["max_audit_excess"] = report.max_excess
        drops, allowances = report.drops, report.bounds
        if trace.method == "accel":
            bound = accel_bound(trace, report.divergence)
            bounds.update({"a_form": bound.a_form, "lam_form": bound.lam_form, "delta_total": bound.delta_total})
            if final_gap is not None and report.comparator == "known-minimizer" and trace.records:
                checks["rate_bound"] = final_gap <= bound.a_form * (1.0 + BOUND_REL_TOL) + report.audits[-1].tol
        else:
            growth = certify_growth(trace)
            movement = movement_certificate(trace, report.divergence)
            checks["growth"] = growth.passed
            checks["growth_theorem"] = growth.theorem_bound_holds
            checks["movement"] = movement.passed
            bounds.update(
                {"A_root": growth.A_root, "up_bound": growth.up_bound, "theorem_bound": growth.theorem_bound}
            )
            bounds["movement_total"] = movement.total
        return Certification(checks, bounds, drops, allowances)

    mode = UnaccelMode(trace.params["mode"])
    if mode is UnaccelMode.SMOOTH:
        report = audit_unaccel(trace, problem, trace.params["R"])
        checks["gap_audit"] = report.passed
        bounds["unaccel_bound"] = unaccel_bound(trace)
        drops, allowances = _by_k(trace, report.audits)
    elif mode is UnaccelMode.POWER:
        residual = power_stationarity_residual(trace)
        checks["stationarity"] = residual <= STATIONARITY_TOL
        bounds["unaccel_bound"] = unaccel_bound(trace)
        bounds["stationarity_residual"] = residual
    else:
        growth = ball_growth(trace)
        checks["step_ratios"] = growth.step_ratios_hold
        checks["exponential_growth"] = growth.exponential_holds
        bounds["min_exponential_margin"] = growth.min_exponential_margin
    return Certification(checks, bounds, drops, allowances)


def _clean(value):
    """ JSON-safe copy: non-finite floats become null and numpy scalars plain numbers """
    if isinstance(value, dict):
        return {key: _clean(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(item) for item in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value) if math.isfinite(value) else None
    return value


class Experiment(NamedTuple):
    config: BenchConfig
    problem: ProblemHandle
    trace: RunTrace
    certification: Certification
    values: np.ndarray
    rate: Optional[RateFit]

    @property
    def passed(self) -> bool:
        return all(self.certification.checks.values())

    @property
    def stem(self) -> str:
        c = self.config
        return "{}-{}-p{}-q{}-nu{:g}-d{}-T{}-s{}".format(
            c.problem, c.method, format_exponent(c.p), c.q, c.nu, c.dim, c.T, c.seed
        )

    def csv_text(self) -> str:
        meta = {
            "problem": self.problem.name,
            "branch": self.trace.params.get("branch", self.trace.method),
            "q": self.config.q,
            "nu": self.config.nu,
            "dim": self.config.dim,
            "seed": self.config.seed,
            "f_star": self.problem.f_star,
        }
        return trace_csv(
            self.trace, self.values, self.certification.drops, self.certification.allowances, meta=meta
        )

    def summary(self) -> dict:
        """ Everything but wall time, so reruns write identical bytes """
        f_star = self.problem.f_star
        gaps = self.values - f_star if f_star is not None and self.values.size else None
        return _clean(
            {
                "problem": self.problem.name,
                "method": self.config.method,
                "branch": self.trace.params.get("branch", self.trace.method),
                "p": format_exponent(self.config.p),
                "p_effective": format_exponent(self.problem.geometry.p),
                "q": self.config.q,
                "nu": self.config.nu,
                "dim": self.config.dim,
                "seed": self.config.seed,
                "budget": self.config.T,
                "T": self.trace.T,
                "status": str(self.trace.status),
                "diagnostic": self.trace.diagnostic,
                "flags": self.trace.params.get("flags", ""),
                "final_gap": gaps[-1] if gaps is not None else None,
                "best_gap": gaps.min() if gaps is not None else None,
                "theoretical_exponent": self.trace.params.get("exponent"),
                "measured_exponent": self.rate.exponent if self.rate else None,
                "rate": self.rate.summary() if self.rate else None,
                "bounds": self.certification.bounds,
                "certificates": self.certification.checks,
                "passed": self.passed,
            }
        )

    def summary_json(self) -> str:
        return json.dumps(self.summary(), indent=4, sort_keys=True) + "\n"


def measured_rate(trace: RunTrace, values: np.ndarray, f_star: Optional[float]) -> Optional[RateFit]:
    if f_star is None or trace.T < MIN_ROWS:
        return None
    ks = [rec.k for rec in trace.records]
    try:
        return fit_rate(ks, values - f_star)
    except ValueError as e:
        log.warn("could not fit a rate", error=str(e))
        return None


def run_experiment(config: BenchConfig) -> Experiment:
    """
    Runs one configuration. Problem and method errors (ConfigError, ProblemError, GeometryError) are
    ValueErrors and propagate; oracle and solver failures only truncate the trace
    """
    p = effective_exponent(config)
    if p != config.p:
        log.info("remapped l1 geometry", p_hat=p, dim=config.dim)
    problem = build_problem(config, p)
    trace = dispatch(config, problem)
    values = trace.values(problem)
    certification = certify(trace, problem)
    experiment = Experiment(config, problem, trace, certification, values, measured_rate(trace, values, problem.f_star))
    run_log = log.with_context(problem=problem.name, method=config.method, seed=config.seed)
    if experiment.passed:
        run_log.info("certificates passed", T=trace.T, status=str(trace.status))
    else:
        failed = ",".join(name for name, ok in certification.checks.items() if not ok)
        run_log.error("certificates failed", failed=failed, diagnostic=trace.diagnostic)
    return experiment


def execute(config: BenchConfig) -> dict:
    """ Runs and writes one configuration, returning its summary with the wall time added """
    start = time.perf_counter()
    experiment = run_experiment(config)
    wall_time = time.perf_counter() - start
    base = os.path.join(config.output_dir, experiment.stem)
    atomic_write_text(base + ".csv", experiment.csv_text())
    atomic_write_text(base + ".json", experiment.summary_json())
    summary = experiment.summary()
    summary["wall_time"] = wall_time
    summary["files"] = [base + ".csv", base + ".json"]
    return summary


def execute_all(configs: Sequence[BenchConfig], workers: int = 1) -> List[dict]:
    """ Runs independent configurations, in a process pool when workers > 1; results keep the input order """
    if workers <= 1 or len(configs) <= 1:
        return [execute(config) for config in configs]
    with futures.ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(execute, configs))
