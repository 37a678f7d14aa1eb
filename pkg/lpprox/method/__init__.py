""" Proximal point methods, their run traces and convergence certificates """
from .accel import DEFAULT_SIGMA, AccelBound, AccelState, accel_bound, accel_constant, accel_run, step_certificate_margins
from .adaptive import (
    DEFAULT_ALPHA,
    AdaptiveState,
    MovementCertificate,
    YMode,
    adaptive_constant,
    adaptive_run,
    movement_certificate,
)
from .audit import DEFAULT_GAP_TOL, GapAudit, GapReport, audit_gap, choose_comparator
from .growth import GrowthCertificate, certify_growth
from .highorder import (
    accel_solve,
    adaptive_solve,
    ball_iteration_bound,
    highorder_solve,
    regularizer_divergence,
    theoretical_exponent,
)
from .trace import (
    COLUMNS,
    SCHEMA_LINE,
    IterationRecord,
    RunStatus,
    RunTrace,
    TraceTable,
    read_trace_csv,
    trace_csv,
)
from .unaccel import (
    BallGrowth,
    UnaccelMode,
    audit_unaccel,
    ball_growth,
    power_constant,
    power_stationarity_residual,
    unaccel_bound,
    unaccel_run,
)
