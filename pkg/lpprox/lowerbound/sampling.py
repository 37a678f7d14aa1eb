""" Uniform sampling from l_p balls and Monte-Carlo estimates of randomized smoothing """
import math
from concurrent import futures
from typing import Callable, NamedTuple, Optional, Tuple

import numpy as np
from scipy import stats

from lpprox.geometry import parse_exponent
from lpprox.util import spawn_rngs

MIN_SAMPLES = 1000
CONFIDENCE = 0.99


def sample_lp_ball(p, radius: float, d: int, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
    """
    Draws uniformly from {x : ||x||_p <= radius} in R^d: with w_i of density proportional to exp(-|w|^p) and
    z ~ Exp(1) independent, radius w/(sum |w_i|^p + z)^{1/p} is uniform on the ball. For p = inf the
    coordinates are independent uniforms

    :param size: number of points; None returns a single point of shape (d,)
    """
    p = parse_exponent(p)
    if not radius > 0.0:
        raise ValueError("radius must be positive")
    if p < 1.0:
        raise ValueError("exponent must lie in [1, inf]")
    shape = (d,) if size is None else (size, d)
    if math.isinf(p):
        return rng.uniform(-radius, radius, size=shape)
    w = stats.gennorm.rvs(p, size=shape, random_state=rng)
    z = rng.exponential(1.0, size=shape[:-1] + (1,))
    denominator = (np.sum(np.abs(w) ** p, axis=-1, keepdims=True) + z) ** (1.0 / p)
    return radius * w / denominator


class SmoothingEstimate(NamedTuple):
    """ A Monte-Carlo estimate of S_beta^q[f](x) with its 99% normal confidence half-width """

    point: np.ndarray
    samples: int
    radii: Tuple[float, ...]
    estimate: float
    half_width: float

    def within(self, value: float, slack: float = 0.0) -> bool:
        return abs(self.estimate - value) <= self.half_width + slack


def smoothing_offsets(p, beta: float, q: int, d: int, rng: np.random.Generator, size: int) -> np.ndarray:
    """ Sums of q independent ball draws of radii beta/2, ..., beta/2^q, one row per sample """
    total = np.zeros((size, d))
    for j in range(1, q + 1):
        total += sample_lp_ball(p, beta / 2.0 ** j, d, rng, size=size)
    return total


def _chunk_values(f, x, p, beta, q, rng, size, vectorized) -> np.ndarray:
    points = x + smoothing_offsets(p, beta, q, x.size, rng, size)
    if vectorized:
        return np.asarray(f(points), dtype=float)
    return np.array([f(point) for point in points], dtype=float)


def smooth_estimate(
    f: Callable,
    x,
    beta: float,
    q: int,
    N: int,
    seed: int,
    p=2.0,
    vectorized: bool = False,
    workers: int = 1,
    chunks: int = 8,
) -> SmoothingEstimate:
    """
    Estimates the q-fold composed smoothing of f at x by averaging f over x plus q independent ball draws.
    Samples are split into `chunks` streams derived from `seed`, so the estimate does not depend on
    the number of workers evaluating them

    :param f: maps a point (or, when vectorized, an (n, d) array of points) to values
    :param N: the number of samples, at least 1000
    """
    if N < MIN_SAMPLES:
        raise ValueError("need at least {} samples".format(MIN_SAMPLES))
    if q < 1:
        raise ValueError("smoothing order must be at least 1")
    x = np.asarray(x, dtype=float)
    sizes = [N // chunks + (1 if i < N % chunks else 0) for i in range(chunks)]
    rngs = spawn_rngs(seed, chunks)
    jobs = [(rng, size) for rng, size in zip(rngs, sizes) if size > 0]
    if workers > 1:
        with futures.ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _chunk_values(f, x, p, beta, q, job[0], job[1], vectorized), jobs))
    else:
        parts = [_chunk_values(f, x, p, beta, q, rng, size, vectorized) for rng, size in jobs]
    values = np.concatenate(parts)
    z = stats.norm.ppf(0.5 + CONFIDENCE / 2.0)
    half_width = z * float(np.std(values, ddof=1)) / math.sqrt(values.size)
    radii = tuple(beta / 2.0 ** j for j in range(1, q + 1))
    return SmoothingEstimate(x, int(values.size), radii, float(np.mean(values)), half_width)
