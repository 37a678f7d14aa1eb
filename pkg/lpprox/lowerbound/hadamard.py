""" Scaled Hadamard bases: orthogonal vectors with unit dual norm for 1 <= p < 2 """
import math
from typing import Tuple

import numpy as np
from scipy import linalg

from lpprox.geometry import dual_exponent


def hadamard_dimension(k: int) -> int:
    """ The power of two d = 2^s with 2^{s-1} < 8 k^{3/2} <= 2^s """
    if k < 1:
        raise ValueError("query budget must be positive")
    d = 1
    # 8 k^{3/2} <= d  <=>  64 k^3 <= d^2, kept in integers
    while d * d < 64 * k ** 3:
        d *= 2
    return d


def orthonormal_hadamard(d: int) -> np.ndarray:
    """ H/sqrt(d) for the Sylvester Hadamard matrix H; its columns are orthonormal with entries +-1/sqrt(d) """
    if d < 1 or d & (d - 1):
        raise ValueError("Hadamard dimension must be a power of two, got {}".format(d))
    return linalg.hadamard(d).astype(float) / math.sqrt(d)


def hadamard_basis(k: int, p: float) -> Tuple[int, np.ndarray]:
    """
    Returns (d, V) with d = hadamard_dimension(k) and columns v_j = d^{1/2 - 1/p*} e_j for the orthonormal
    Hadamard columns e_j, so that the v_j are orthogonal with ||v_j||_{p*} = 1
    """
    d = hadamard_dimension(k)
    inv_p_star = 1.0 / dual_exponent(p)
    return d, d ** (0.5 - inv_p_star) * orthonormal_hadamard(d)
