""" Implements the command for printing the per-iteration certificate audit of a run """
import json
import math
import sys

from lpprox.errors import DeterminismError
from lpprox.evaluator import run_experiment
from lpprox.logger import logger as log
from lpprox.lowerbound import read_query_points_csv, verify_transcript

from . import command

AUDIT_FAILURE = 2


def audit_transcript(transcript_path: str, points_path: str):
    try:
        with open(transcript_path, "r") as transcript_file:
            transcript = transcript_file.read()
        with open(points_path, "r") as points_file:
            points = read_query_points_csv(points_file.read())
    except (OSError, ValueError) as e:
        log.critical("could not read transcript", error=str(e))
        sys.exit(1)
    try:
        inst = verify_transcript(transcript, points)
    except DeterminismError as e:
        print(json.dumps({"transcript": transcript_path, "reproduced": False, "error": str(e)}, indent=4))
        sys.exit(AUDIT_FAILURE)
    except ValueError as e:
        log.critical("malformed transcript", error=str(e))
        sys.exit(1)
    print(json.dumps({"transcript": transcript_path, "reproduced": True, "reveals": len(inst.reveals)}, indent=4))


@command.argument("--transcript", help="Verify a lower-bound transcript instead of auditing a run", default=None)
@command.argument("--points", help="The query points CSV that goes with --transcript", default=None)
@command.config_arguments
@command.command
def audit(args):
    """
    Re-runs a configuration and prints one JSON line per iteration with the audited drop of the gap
    sequence, its allowance and the excess, followed by the summary. With --transcript and --points it
    instead replays a lower-bound transcript and checks it is reproduced exactly
    """
    if args.transcript or args.points:
        if not (args.transcript and args.points):
            log.critical("--transcript and --points must be given together")
            sys.exit(1)
        audit_transcript(args.transcript, args.points)
        return

    config = command.config_from_args(args)
    try:
        experiment = run_experiment(config)
    except ValueError as e:
        log.critical("invalid run configuration", error=str(e))
        sys.exit(1)

    certification = experiment.certification
    if certification.drops is not None:
        for rec, drop, bound in zip(experiment.trace.records, certification.drops, certification.allowances):
            if drop is None:
                continue
            lam = rec.lam if math.isfinite(rec.lam) else None
            row = {"k": rec.k, "drop": drop, "bound": bound, "excess": drop - bound, "A": rec.A, "lam": lam}
            print(json.dumps(row, sort_keys=True))
    print(json.dumps(experiment.summary(), sort_keys=True))
    if not experiment.passed:
        sys.exit(AUDIT_FAILURE)
