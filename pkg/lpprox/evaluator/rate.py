"""
Empirical convergence rates: the least-squares slope of log(f(y_T) - f*) against log T, with a
t-distribution confidence interval
"""
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from lpprox.logger import logger

MIN_ROWS = 20
MIN_FIT_POINTS = 3
DEFAULT_CONFIDENCE = 0.95

log = logger.with_namespace("rate")


class RateFit(NamedTuple):
    slope: float
    intercept: float
    half_width: float
    r_value: float
    points: int
    window: Tuple[int, int]
    dropped: int

    @property
    def exponent(self) -> float:
        """ The fitted rate exponent e of f(y_T) - f* ~ T^{-e} """
        return -self.slope

    def summary(self) -> dict:
        return {
            "slope": self.slope,
            "exponent": self.exponent,
            "ci_half_width": self.half_width,
            "r_value": self.r_value,
            "points": self.points,
            "window": list(self.window),
            "dropped": self.dropped,
        }


def fit_rate(
    iterations: Sequence[float],
    gaps: Sequence[float],
    window: Optional[Tuple[int, int]] = None,
    confidence: float = DEFAULT_CONFIDENCE,
    min_rows: int = MIN_ROWS,
) -> RateFit:
    """
    Fits log gap = slope log T + intercept over the rows with window[0] <= T <= window[1]. The window is
    cut at the first non-positive gap (a run that reached the optimum to machine precision), with a warning

    :raises ValueError: with fewer than `min_rows` rows, or fewer than 3 usable points after shrinking
    """
    T = np.asarray(iterations, dtype=float)
    gaps = np.asarray(gaps, dtype=float)
    if T.size != gaps.size:
        raise ValueError("iterations and gaps differ in length")
    if T.size < min_rows:
        raise ValueError("need at least {} trace rows, got {}".format(min_rows, T.size))
    lo, hi = (int(T.min()), int(T.max())) if window is None else window
    mask = (T >= lo) & (T <= hi) & (T > 0)
    T, gaps = T[mask], gaps[mask]

    bad = np.flatnonzero(~(gaps > 0.0))
    dropped = 0
    if bad.size:
        cut = int(bad[0])
        dropped = T.size - cut
        log.warn("non-positive gaps, shrinking the fit window", first_bad_T=int(T[cut]), dropped=dropped)
        T, gaps = T[:cut], gaps[:cut]
    if T.size < MIN_FIT_POINTS:
        raise ValueError("fewer than {} positive gaps in the fit window".format(MIN_FIT_POINTS))

    fit = stats.linregress(np.log(T), np.log(gaps))
    t_value = stats.t.ppf(0.5 + confidence / 2.0, T.size - 2)
    result = RateFit(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        half_width=float(t_value * fit.stderr),
        r_value=float(fit.rvalue),
        points=int(T.size),
        window=(int(T[0]), int(T[-1])),
        dropped=dropped,
    )
    log.debug("fitted rate", slope=result.slope, half_width=result.half_width, points=result.points)
    return result
