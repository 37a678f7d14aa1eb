""" Per-iteration audit of the gap sequence G_k = U_k - L_k that drives the convergence proofs """
import math
from typing import List, NamedTuple, Optional

import numpy as np

from lpprox.errors import CertificateError
from lpprox.logger import logger

from .trace import RunTrace

DEFAULT_GAP_TOL = 1e-8

log = logger.with_namespace("audit")


class GapAudit(NamedTuple):
    """
    The audited quantities at iteration k. `drop` is A_k G_k - A_{k-1} G_{k-1} (with A_0 G_0 taken as
    D_psi(u, x0) for the accelerated methods) and `bound` the allowance E_k it must stay under; `tol`
    is the absolute tolerance, scaled to the magnitude of the terms summed unless the audit ran with
    relative=False
    """

    k: int
    U: float
    L: float
    AG: float
    drop: float
    bound: float
    tol: float

    @property
    def G(self) -> float:
        return self.U - self.L

    @property
    def excess(self) -> float:
        return self.drop - self.bound

    @property
    def passed(self) -> bool:
        return self.excess <= self.tol


class GapReport(NamedTuple):
    """
    The audits of one run. By default each audit tolerance is the requested tol times the magnitude of the
    terms summed into A_k G_k (at least 1), since those terms grow with A_k and their rounding error with
    them; audit_gap(..., relative=False) applies tol as a plain absolute tolerance instead
    """

    audits: List[GapAudit]
    comparator: str
    f_u: float
    divergence: float

    @property
    def passed(self) -> bool:
        return all(audit.passed for audit in self.audits)

    @property
    def max_excess(self) -> float:
        return max((audit.excess for audit in self.audits), default=-math.inf)

    @property
    def total_drop(self) -> float:
        return float(sum(audit.drop for audit in self.audits))

    @property
    def drops(self) -> List[float]:
        return [audit.drop for audit in self.audits]

    @property
    def bounds(self) -> List[float]:
        return [audit.bound for audit in self.audits]


def choose_comparator(trace: RunTrace, problem, u=None):
    """
    Returns (u, label): the supplied point, else the problem's minimizer, else the best iterate.
    The best-iterate certificate is valid but weaker
    """
    if u is not None:
        return np.asarray(u, dtype=float), "supplied"
    if problem.x_star is not None:
        return problem.x_star, "known-minimizer"
    if not trace.records:
        return trace.x0, "start"
    values = trace.values(problem)
    return trace.records[int(np.argmin(values))].y, "best-iterate"


def adaptive_allowance(trace: RunTrace, rec) -> float:
    """ E_k = -(A_hat_k (1 - sigma - sigma')/2) min(1/lam_hat_k, 1/lam_k) ||y_tilde_k - x_k||^r """
    if rec.a <= 0.0 or not math.isfinite(rec.lam):
        return 0.0
    factor = min(1.0 / rec.lam_hat, 1.0 / rec.lam)
    return -rec.A_hat * (1.0 - trace.sigma - trace.sigma_prime) / 2.0 * factor * rec.move_norm ** trace.r


def audit_gap(
    trace: RunTrace, problem, u=None, tol: float = DEFAULT_GAP_TOL, strict: bool = False, relative: bool = True
) -> GapReport:
    """
    Recomputes, for every iteration, U_k = f(y_k) and
    A_k L_k = sum_i a_i f(y_tilde_i) + sum_i a_i (<v_i, z_k - y_tilde_i> - eps_i) + D_psi(z_k, x0) - D_psi(u, x0),
    which is at most A_k f(u) because z_k minimizes the dual averaging objective. Function values are
    shifted by f(u) so the audit does not lose precision when A_k is large. The allowance E_k is delta
    for the accelerated method and the movement term for the adaptive one. With strict set, a failed audit
    raises CertificateError
    """
    psi = trace.psi
    if psi is None:
        raise ValueError("gap audit needs the run's regularizer")
    u, label = choose_comparator(trace, problem, u)
    f_u = problem.value(u)
    divergence = psi.divergence_from_center(u)

    audits: List[GapAudit] = []
    weighted_f = 0.0
    weighted_f_abs = 0.0
    g_sum = np.zeros_like(trace.x0)
    g_dot_y = 0.0
    g_dot_y_abs = 0.0
    eps_sum = 0.0
    AG_prev = divergence
    for rec in trace.records:
        if rec.a > 0.0:
            shifted = problem.value(rec.y_tilde) - f_u
            weighted_f += rec.a * shifted
            weighted_f_abs += rec.a * abs(shifted)
            g_sum = g_sum + rec.a * rec.v
            inner = float(np.dot(rec.v, rec.y_tilde))
            g_dot_y += rec.a * inner
            g_dot_y_abs += rec.a * abs(inner)
            eps_sum += rec.a * rec.eps
        g_dot_z = float(np.dot(g_sum, rec.z))
        d_z = psi.divergence_from_center(rec.z)
        AL = weighted_f + g_dot_z - g_dot_y - eps_sum + d_z - divergence
        U = rec.f_y - f_u if rec.f_y is not None else problem.value(rec.y) - f_u
        AG = rec.A * U - AL
        if trace.method == "adaptive":
            bound = adaptive_allowance(trace, rec)
        else:
            bound = trace.delta if rec.a > 0.0 else 0.0
        magnitude = rec.A * abs(U) + weighted_f_abs + abs(g_dot_z) + g_dot_y_abs + d_z + divergence
        audits.append(
            GapAudit(
                k=rec.k,
                U=U + f_u,
                L=AL / rec.A + f_u if rec.A > 0 else -math.inf,
                AG=AG,
                drop=AG - AG_prev,
                bound=bound,
                tol=tol * max(1.0, magnitude) if relative else tol,
            )
        )
        AG_prev = AG

    report = GapReport(audits, label, f_u, divergence)
    if not report.passed:
        log.warn("gap audit failed", method=trace.method, max_excess=report.max_excess, comparator=label)
        if strict:
            raise CertificateError("gap audit failed", method=trace.method, max_excess=report.max_excess)
    else:
        log.debug("gap audit passed", method=trace.method, T=trace.T, comparator=label)
    return report
