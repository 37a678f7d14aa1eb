""" The optimality gap a completed resisting-oracle run leaves, and where it sits on the query curve """
import math
from typing import NamedTuple, Sequence

import numpy as np

from lpprox.logger import logger

from .instance import HardInstance

log = logger.with_namespace("gap")


def gap_threshold(k: int, p: float) -> float:
    """ k^{-1/m}/16 with m = max(2, p), and 1/16 for p = inf """
    if math.isinf(p):
        return 1.0 / 16.0
    return k ** (-1.0 / max(2.0, p)) / 16.0


def implied_queries(eps: float, L: float, R: float, q: int, m: float) -> float:
    """ (L R^{q+1}/eps)^{m/(mq+q+1)}, whose limit for m = inf is (L R^{q+1}/eps)^{1/q} """
    if not eps > 0.0:
        raise ValueError("accuracy must be positive")
    exponent = 1.0 / q if math.isinf(m) else m / (m * q + q + 1.0)
    return (L * R ** (q + 1) / eps) ** exponent


class LowerBoundReport(NamedTuple):
    """
    The smoothed function g is within 2 beta of h, so g(x_final) - g(x*) >= (h(x_final) - 2 beta) -
    (h(x*) + 2 beta) = gap_lower. `scaled_eps` is the gap after normalizing g to a unit q-th derivative
    constant and `queries` the matching point on the query curve
    """

    k: int
    p: float
    q: int
    epsilon: float
    h_final: float
    h_star: float
    beta: float
    gap_lower: float
    lq: float
    scaled_eps: float
    queries: float
    star_norm: float

    @property
    def g_final_lower(self) -> float:
        return self.h_final - 2.0 * self.beta

    @property
    def g_star_upper(self) -> float:
        return self.h_star + 2.0 * self.beta

    @property
    def passed(self) -> bool:
        return self.gap_lower >= self.epsilon

    def summary(self) -> dict:
        out = dict(self._asdict())
        out["passed"] = self.passed
        return out


def gap_experiment(inst: HardInstance, trajectory: Sequence[np.ndarray]) -> LowerBoundReport:
    """
    Audits the gap at the last point of `trajectory`, the k-th query of a completed run, against x*

    :param inst: an instance that answered at least k queries
    """
    if inst.queries < inst.k:
        raise ValueError("the instance answered {} of its {} queries".format(inst.queries, inst.k))
    if not len(trajectory):
        raise ValueError("empty trajectory")
    params = inst.params
    x_star = inst.x_star()
    h_final = inst.h(trajectory[-1])
    h_star = inst.h(x_star)
    gap_lower = (h_final - 2.0 * params.beta) - (h_star + 2.0 * params.beta)
    epsilon = gap_threshold(params.k, params.p)
    lq = inst.lq_estimate()
    star_norm = inst.geometry.norm(x_star)
    report = LowerBoundReport(
        k=params.k,
        p=params.p,
        q=params.q,
        epsilon=epsilon,
        h_final=h_final,
        h_star=h_star,
        beta=params.beta,
        gap_lower=gap_lower,
        lq=lq,
        scaled_eps=epsilon / lq,
        queries=implied_queries(epsilon / lq, 1.0, star_norm, params.q, params.m),
        star_norm=star_norm,
    )
    if report.passed:
        log.info("gap certified", k=params.k, p=params.p, gap=gap_lower, eps=epsilon)
    else:
        log.error("gap below threshold", k=params.k, p=params.p, gap=gap_lower, eps=epsilon, h_final=h_final, h_star=h_star)
    return report
