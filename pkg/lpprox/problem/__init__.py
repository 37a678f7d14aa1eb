""" Benchmark problems and the handle the methods consume """
from .handle import HolderData, ProblemHandle, holder_ratio, midpoint_violation
from .problems import ProblemKind, ProblemSpec, dimension_factor, make_problem
