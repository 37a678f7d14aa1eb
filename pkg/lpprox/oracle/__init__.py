""" Inexact proximal oracles and the audit of their answers """
from .answer import DEFAULT_AUDIT_TOL, AnswerAudit, ProxAnswer, audit_answer
from .ball import BOUNDARY_TOL, BallOracle, ball_oracle, minimize_in_ball
from .exact import ExactOracle, exact_oracle
from .oracle import FixedProxOracle, ProxOracle
from .taylor import L_FLOOR, TaylorOracle, taylor_lam_hat, taylor_oracle
