""" Per-iteration subproblems: the step-size equation, the z-step and regularized Taylor models """
from .step import StepEquation, solve_step, step_closed_form
from .taylor import (
    CriticalPoint,
    TaylorModel,
    build_taylor_model,
    criticality_residual,
    find_critical_point,
    taylor_polynomial,
    taylor_value_grad,
    warm_start,
)
from .zstep import solve_zstep
