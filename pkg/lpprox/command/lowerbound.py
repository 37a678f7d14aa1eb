""" Implements the command for driving algorithms against the resisting hard instance """
import json
import math
import os
import sys

from lpprox.config import get_config
from lpprox.errors import DeterminismError, LpproxError
from lpprox.geometry import parse_exponent
from lpprox.logger import logger as log
from lpprox.lowerbound import ADAPTERS, format_transcript, query_points_csv, replay, verify_transcript
from lpprox.util import atomic_write_text

from . import command

GAP_FAILURE = 2


@command.argument("--k", help="Number of local oracle queries (at least 3)", type=int, required=True)
@command.argument("--p", help="Exponent of the l_p geometry, in [1, inf]", default="2")
@command.argument("--q", help="Order of smoothing of the hard function", type=int, default=1)
@command.argument("--algorithm", help="Algorithm under test", choices=sorted(ADAPTERS), default="subgradient")
@command.argument("--radius", help="Step radius of the algorithm under test", type=float, default=1.0)
@command.argument("--output_dir", help="Directory to write the transcript and query points to", default=None)
@command.command
def lowerbound(args):
    """
    Drives an algorithm against the resisting oracle for k queries, checks that it behaves the same
    whatever the unrevealed part of the instance is, and reports the optimality gap left at its k-th
    query against the threshold k^(-1/max(2,p))/16. Writes the instance transcript and the query points
    """
    if args.k < 3:
        log.critical("provided k must be at least 3")
        sys.exit(1)
    if args.q < 1:
        log.critical("provided q must be at least 1")
        sys.exit(1)
    if args.radius <= 0:
        log.critical("provided radius must be greater than 0")
        sys.exit(1)
    try:
        p = parse_exponent(args.p)
    except ValueError as e:
        log.critical("invalid exponent", error=str(e))
        sys.exit(1)
    if p < 1:
        log.critical("provided p must lie in [1, inf]")
        sys.exit(1)

    adapter = ADAPTERS[args.algorithm](radius=args.radius)
    log.info("driving the resisting oracle", algorithm=adapter.name, k=args.k, p=p, q=args.q)
    try:
        run = replay(adapter, args.k, p, args.q)
    except DeterminismError as e:
        log.critical("algorithm is not deterministic in the revealed answers", error=str(e))
        sys.exit(GAP_FAILURE)
    except (LpproxError, ValueError) as e:
        log.critical("could not run the experiment", error=str(e))
        sys.exit(1)

    transcript = format_transcript(run.instance)
    verify_transcript(transcript, run.points)

    output_dir = args.output_dir or get_config().output_dir
    stem = "hard-{}-k{}-p{}-q{}".format(adapter.name, args.k, "inf" if math.isinf(p) else "{:g}".format(p), args.q)
    base = os.path.join(output_dir, stem)
    atomic_write_text(base + ".transcript", transcript)
    atomic_write_text(base + ".points.csv", query_points_csv(run.points))

    summary = run.report.summary()
    summary.update({"algorithm": adapter.name, "d": run.instance.d, "files": [base + ".transcript", base + ".points.csv"]})
    if math.isinf(summary["p"]):
        summary["p"] = "inf"
    print(json.dumps(summary, indent=4, sort_keys=True))
    if not run.report.passed:
        log.error("gap below the threshold", gap=run.report.gap_lower, eps=run.report.epsilon)
        sys.exit(GAP_FAILURE)
