""" p-norm geometry, uniformly convex regularizers and Moreau envelopes """
from .geometry import (
    INF,
    Geometry,
    PoweredNormSubgradient,
    dual_exponent,
    dual_map_direction,
    dual_pnorm,
    parse_exponent,
    pnorm,
    powered_norm_subgradient,
    signed_power,
)
from .moreau import MoreauCertificate, MoreauProbe, moreau_probe
from .prox import BallConstraint, ProxSolution, prox_minimize
from .regularizer import (
    Regularizer,
    RegularizerKind,
    bregman,
    default_regularizer,
    inexact_from_uniform,
    inexact_parameters,
    optimal_inexact_parameter,
    power_regularizer,
    squared_regularizer,
)
