""" Exceptions raised across lpprox """
from typing import Any, Dict, Optional


class LpproxError(Exception):
    """ Base class for every error raised by lpprox """

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.details: Dict[str, Any] = details

    def __str__(self):
        base = super().__str__()
        if not self.details:
            return base
        return base + " (" + " ".join("{}={}".format(k, v) for k, v in self.details.items()) + ")"


class GeometryError(LpproxError, ValueError):
    """ Invalid exponent, or a regularizer operation that is undefined for the given geometry """


class ConfigError(LpproxError, ValueError):
    """ Malformed configuration file or override """


class ProblemError(LpproxError, ValueError):
    """ Malformed problem specification or a derivative request beyond the problem's smoothness """


class SolverError(LpproxError):
    """ An inner minimization or root-find did not reach its tolerance """


class OracleError(LpproxError):
    """ A proximal oracle answer violated its certified inequalities """

    def __init__(self, message: str, audit: Optional[Any] = None, **details: Any):
        super().__init__(message, **details)
        self.audit = audit


class CertificateError(LpproxError):
    """ A convergence certificate failed under strict checking """


class BudgetExhausted(LpproxError):
    """ A resisting oracle was queried past its budget in strict mode """


class DeterminismError(LpproxError):
    """ Replaying a lower-bound transcript did not reproduce the original answers """
