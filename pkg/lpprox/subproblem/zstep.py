""" The dual averaging step z = argmin_z <g, z> + D_psi(z, x0) """
import numpy as np

from lpprox.errors import SolverError
from lpprox.geometry import Regularizer, RegularizerKind, signed_power


def solve_zstep(psi: Regularizer, g, tol: float = 1e-9) -> np.ndarray:
    """
    Returns the z with grad psi(z) - grad psi(x0) = -g. Both regularizer families invert in closed
    form: power-p coordinate-wise, squared-p after the magnitude t = ||z - x0||_p = (p-1)||g||_*

    :param psi: a regularizer with 1 < p < inf
    :param g: the accumulated dual vector sum_i a_i v_i
    :param tol: tolerance on the relative stationarity residual
    """
    geometry = psi.geometry
    geometry.require_smooth("the z-step")
    p = geometry.p
    g = np.asarray(g, dtype=float)

    if psi.base_kind is RegularizerKind.POWER_P:
        z = psi.center - signed_power(g, 1.0 / (p - 1.0))
    else:
        t = (p - 1.0) * geometry.dual_norm(g)
        if t == 0.0:
            return psi.center.copy()
        z = psi.center - ((p - 1.0) * t ** (p - 2.0)) ** (1.0 / (p - 1.0)) * signed_power(g, 1.0 / (p - 1.0))

    residual = geometry.dual_norm(psi.gradient(z) + g)
    if residual > tol * max(1.0, geometry.dual_norm(g)):
        raise SolverError("z-step inversion residual above tolerance", residual=residual)
    return z
