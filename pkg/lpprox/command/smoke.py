""" Implements the command for a quick end-to-end check of every method and lower-bound probe """
import json
import sys

from lpprox.config import get_config
from lpprox.errors import LpproxError
from lpprox.evaluator import execute_all
from lpprox.logger import logger as log
from lpprox.lowerbound import ADAPTERS, replay

from . import command

SMOKE_FAILURE = 2

# (problem, method, p, q) covering both accelerated branches, the remaps and the unaccelerated modes
SMOKE_RUNS = [
    ("quadratic", "auto", "2", 1),
    ("quadratic", "auto", "4", 1),
    ("quadratic", "auto", "1.5", 1),
    ("quadratic", "auto", "1", 1),
    ("quadratic", "auto", "inf", 1),
    ("quadratic", "unaccel", "2", 1),
    ("quadratic", "adaptive", "2", 1),
    ("pth-power", "auto", "3", 2),
    ("logistic", "auto", "2", 2),
]

SMOKE_PROBES = [("subgradient", "inf"), ("subgradient", "2"), ("accel", "2")]


@command.argument("--T", help="Iteration budget of every run", type=int, default=24)
@command.argument("--k", help="Query budget of the lower-bound probes", type=int, default=4)
@command.argument("--output_dir", help="Directory to write the run files to", default=None)
@command.argument("--workers", help="Number of worker processes", type=int, default=None)
@command.command
def smoke(args):
    """
    Runs a small grid of problems through every method and a few lower-bound probes, printing one
    pass/fail line per item. Exits with status 2 if anything fails
    """
    if args.T < 1 or args.k < 3:
        log.critical("provided T must be at least 1 and k at least 3")
        sys.exit(1)
    base = get_config(output_dir=args.output_dir, workers=args.workers, T=args.T, dim=4, rows=16)
    configs = [base.with_mutations(problem=problem, method=method, p=p, q=q) for (problem, method, p, q) in SMOKE_RUNS]
    results = []
    try:
        summaries = execute_all(configs, base.workers)
    except ValueError as e:
        log.critical("smoke configuration failed", error=str(e))
        sys.exit(1)
    for summary in summaries:
        results.append(
            {
                "item": "{problem}/{method}/p={p}/q={q}".format(**summary),
                "branch": summary["branch"],
                "passed": summary["passed"],
            }
        )

    for name, p in SMOKE_PROBES:
        item = "lowerbound/{}/p={}/k={}".format(name, p, args.k)
        try:
            run = replay(ADAPTERS[name](), args.k, float(p))
            results.append({"item": item, "branch": name, "passed": run.report.passed})
        except LpproxError as e:
            log.error("probe failed", item=item, error=str(e))
            results.append({"item": item, "branch": name, "passed": False})

    for result in results:
        print(json.dumps(result, sort_keys=True))
    failed = [result["item"] for result in results if not result["passed"]]
    if failed:
        log.error("smoke test failed", failed=",".join(failed))
        sys.exit(SMOKE_FAILURE)
    log.info("smoke test passed", items=len(results))
