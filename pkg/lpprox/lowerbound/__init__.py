""" Hard instances for the oracle lower bound, randomized smoothing and the gap experiment """
from .adapter import ADAPTERS, AccelAdapter, LowerBoundAdapter, LowerBoundRun, QueryRecorder, SubgradientAdapter, replay
from .gap import LowerBoundReport, gap_experiment, gap_threshold, implied_queries
from .hadamard import hadamard_basis, hadamard_dimension, orthonormal_hadamard
from .instance import (
    HardInstance,
    HardParameters,
    LocalAnswer,
    Reveal,
    hard_f_i,
    hard_h,
    hard_parameters,
    resisting_oracle,
)
from .sampling import SmoothingEstimate, sample_lp_ball, smooth_estimate, smoothing_offsets
from .softmax import prefix_smax, smax, smax_grad, smax_partial, smax_partial_grad, softmax_lq
from .transcript import format_transcript, parse_transcript, query_points_csv, read_query_points_csv, verify_transcript
