""" Evaluation of runs: certificate audits, rate fits and the experiment runner """
from .experiment import (
    Certification,
    Experiment,
    build_problem,
    certify,
    dispatch,
    effective_exponent,
    execute,
    execute_all,
    run_experiment,
)
from .rate import DEFAULT_CONFIDENCE, MIN_ROWS, RateFit, fit_rate
