""" Softmax smoothing of the max function and its prefix (partial) variant """
import math

import numpy as np
from scipy import special


def smax(x, mu: float) -> float:
    """ mu ln sum_i exp(x_i/mu), evaluated with a max shift """
    if not mu > 0.0:
        raise ValueError("softmax temperature must be positive")
    return float(mu * special.logsumexp(np.asarray(x, dtype=float) / mu))


def smax_partial(x, n: int, mu: float) -> float:
    """ smax over the first n coordinates """
    x = np.asarray(x, dtype=float)
    if not 1 <= n <= x.size:
        raise ValueError("prefix length must lie in [1, {}]".format(x.size))
    return smax(x[:n], mu)


def smax_grad(x, mu: float) -> np.ndarray:
    """ The softmax probability vector, which is the gradient of smax """
    if not mu > 0.0:
        raise ValueError("softmax temperature must be positive")
    return special.softmax(np.asarray(x, dtype=float) / mu)


def smax_partial_grad(x, n: int, mu: float) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if not 1 <= n <= x.size:
        raise ValueError("prefix length must lie in [1, {}]".format(x.size))
    grad = np.zeros_like(x)
    grad[:n] = smax_grad(x[:n], mu)
    return grad


def prefix_smax(x, mu: float) -> np.ndarray:
    """ (smax_partial(x, n, mu))_{n=1..d} in one pass """
    return mu * np.logaddexp.accumulate(np.asarray(x, dtype=float) / mu)


def softmax_lq(q: int, mu: float) -> float:
    """ Lipschitz constant ((q+1)/ln(q+2))^{q+1} q!/mu^q of the q-th derivative of smax in l-inf """
    return ((q + 1.0) / math.log(q + 2.0)) ** (q + 1) * math.factorial(q) / mu ** q
