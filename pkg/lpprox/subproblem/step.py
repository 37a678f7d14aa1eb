""" The r-degree step-size equation a^r = C (A_prev + a)^{r-1} lam """
import math
from typing import NamedTuple

from scipy import optimize

MAX_ITER = 200


class StepEquation(NamedTuple):
    r: float
    c: float
    a_prev: float
    lam: float

    def residual(self, a: float) -> float:
        return a ** self.r - self.c * (self.a_prev + a) ** (self.r - 1.0) * self.lam

    def validate(self):
        if self.r <= 1.0:
            raise ValueError("the step equation needs r > 1")
        if self.c <= 0.0 or self.lam <= 0.0 or not math.isfinite(self.lam):
            raise ValueError("the step equation needs C > 0 and 0 < lam < inf")
        if self.a_prev < 0.0:
            raise ValueError("the accumulated weight must be non-negative")


def step_closed_form(eq: StepEquation) -> float:
    """ The r = 2 solution (C lam + sqrt(C^2 lam^2 + 4 C lam A_prev)) / 2 """
    d = eq.c * eq.lam
    return (d + math.sqrt(d * d + 4.0 * d * eq.a_prev)) / 2.0


def solve_step(eq: StepEquation, tol: float = 1e-10) -> float:
    """
    Returns the unique a > 0 solving the step equation. Dividing by a^{r-1} gives the increasing
    map a - C lam (1 + A_prev/a)^{r-1}, whose root is bracketed below by max(C lam, (C lam A_prev^{r-1})^{1/r})
    and above by doubling
    """
    eq.validate()
    d = eq.c * eq.lam
    if eq.a_prev == 0.0:
        return d

    def scaled(a: float) -> float:
        return a - d * (1.0 + eq.a_prev / a) ** (eq.r - 1.0)

    lo = max(d, math.exp((math.log(d) + (eq.r - 1.0) * math.log(eq.a_prev)) / eq.r))
    if scaled(lo) >= 0.0:
        return lo
    hi = 2.0 * lo
    while scaled(hi) < 0.0:
        hi *= 2.0
    a = optimize.brentq(scaled, lo, hi, xtol=tol * lo * 1e-6, rtol=4.0 * 2.220446049250313e-16, maxiter=MAX_ITER)
    return float(a)
