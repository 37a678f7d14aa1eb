""" Implements the command for running a configured method and auditing its certificates """
import json
import sys

from lpprox.evaluator import execute_all
from lpprox.logger import logger as log

from . import command

CERTIFICATE_FAILURE = 2


@command.argument("--runs", help="Number of consecutive seeds to run, starting at the configured seed", type=int, default=1)
@command.config_arguments
@command.command
def solve(args):
    """
    Runs a proximal point method on a benchmark problem, writes the trace CSV and summary JSON for
    every run and prints the summaries. Method auto picks the accelerated or adaptive method by the
    problem's smoothness, remaps p = 1 to 1 + 1/ln(dim) and sends p = inf to the unaccelerated method.
    Exits with status 2 if any certificate fails
    """
    if args.runs < 1:
        log.critical("provided number of runs must be at least 1")
        sys.exit(1)
    config = command.config_from_args(args)
    configs = [config.with_mutations(seed=config.seed + i) for i in range(args.runs)]
    log.info("running", runs=len(configs), method=config.method, problem=config.problem, workers=config.workers)
    try:
        summaries = execute_all(configs, config.workers)
    except ValueError as e:
        log.critical("invalid run configuration", error=str(e))
        sys.exit(1)

    print(json.dumps(summaries[0] if len(summaries) == 1 else summaries, indent=4, sort_keys=True))
    failed = [summary["seed"] for summary in summaries if not summary["passed"]]
    if failed:
        log.error("certificate failure", seeds=",".join(map(str, failed)))
        sys.exit(CERTIFICATE_FAILURE)
